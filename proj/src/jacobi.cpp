#include "cliffell/jacobi.hpp"

#include <bit>
#include <cctype>

namespace cliffell {

JacobiId JacobiId::parse(std::string_view name) {
  if (name == "C") return C();
  if (name.size() >= 2 && name[0] == 'S') {
    int v = 0;
    for (char c : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("unknown function '" + std::string(name) + "'");
      v = v * 10 + (c - '0');
    }
    if (v < 1) throw std::invalid_argument("S index starts at 1");
    return S(v);
  }
  throw std::invalid_argument("unknown function '" + std::string(name) + "'");
}

std::string JacobiId::name() const { return kind == JacobiKind::c ? "C" : "S" + std::to_string(index + 1); }

std::vector<JacobiId> all_jacobi_kinds(int n) {
  std::vector<JacobiId> out{JacobiId::C()};
  for (int i = 1; i <= n; ++i) out.push_back(JacobiId::S(i));
  return out;
}

int residue_sign(JacobiId id, unsigned subset) {
  int k = std::popcount(subset);
  if (id.kind == JacobiKind::s && (subset & (1u << id.index))) --k;
  return (k % 2 == 0) ? 1 : -1;
}

TranslationWord closed_form_word(JacobiId id, int n) {
  TranslationWord w;
  for (unsigned j = 0; j < (1u << n); ++j) {
    TranslationWord::Shift s(n, 0);
    for (int a = 0; a < n; ++a) s[a] = (j >> a) & 1u;
    w.add(std::move(s), residue_sign(id, j));
  }
  return w;
}

OperatorExpr definition_expr(JacobiId id, int n) {
  OperatorExpr e;
  if (id.kind == JacobiKind::s) e.factors.push_back({FactorKind::i_plus_e, id.index});
  for (int j = 0; j < n; ++j)
    if (id.kind == JacobiKind::c || j != id.index) e.factors.push_back({FactorKind::i_minus_e, j});
  return e;
}

std::vector<unsigned> determining_subsets(JacobiId id, int n) {
  std::vector<unsigned> out{0u};
  for (int j = 0; j < n; ++j) {
    if (id.kind == JacobiKind::c && j == 0) continue;
    if (id.kind == JacobiKind::s && j == id.index) continue;
    out.push_back(1u << j);
  }
  return out;
}

Paravector<double> vertex(const PeriodLattice& l, unsigned subset) {
  TranslationWord::Shift s(l.rank(), 0);
  for (int a = 0; a < l.rank(); ++a) s[a] = (subset >> a) & 1u;
  return shifted_point(Paravector<double>(l.m()), s, l.half_periods());
}

std::string vertex_name(unsigned subset) {
  if (subset == 0) return "0";
  std::string out;
  for (int a = 0; a < 32; ++a) {
    if (!(subset & (1u << a))) continue;
    if (!out.empty()) out += "+";
    out += "w" + std::to_string(a + 1);
  }
  return out;
}

SeriesValue<double> apply_to_zeta(const TranslationWord& word, const ZetaFunction& zeta, const Paravector<double>& x,
                                  const EvalConfig& cfg) {
  const auto gens = zeta.lattice().half_periods();
  if (word.generator_count() > static_cast<int>(gens.size()))
    throw std::invalid_argument("translation word uses more generators than the lattice has");
  SeriesValue<double> out = zero_series<double>(x.m());
  for (const auto& term : word.terms()) {
    const Paravector<double> p = shifted_point(x, term.shift, gens);
    SeriesValue<double> v;
    try {
      v = zeta(p, cfg);
    } catch (const PoleError&) {
      throw PoleError("argument hits a pole: x + " + describe_shift(term.shift) + " lies on the lattice");
    }
    v *= static_cast<double>(term.coefficient);
    out += v;
  }
  return out;
}

JacobiFunction::JacobiFunction(JacobiId id, ZetaFunction zeta, TranslationWord word)
    : id_(id), zeta_(std::move(zeta)), word_(std::move(word)) {}

JacobiFunction JacobiFunction::build(JacobiId id, ZetaFunction zeta) {
  const PeriodLattice& l = zeta.lattice();
  if (!l.is_full_rank())
    throw std::invalid_argument("Jacobi functions need exactly 2m+2 half-periods");
  const int n = l.rank();
  if (id.kind == JacobiKind::s && (id.index < 0 || id.index >= n))
    throw std::invalid_argument("S index outside 1..2m+2");
  TranslationWord w = expand(definition_expr(id, n));
  if (!(w == closed_form_word(id, n)))
    throw std::logic_error("operator expansion disagrees with the residue sign rule for " + id.name());
  return JacobiFunction(id, std::move(zeta), std::move(w));
}

SeriesValue<double> JacobiFunction::operator()(const Paravector<double>& x, const EvalConfig& cfg) const {
  try {
    return apply_to_zeta(word_, zeta_, x, cfg);
  } catch (const PoleError& e) {
    throw PoleError(id_.name() + ": " + e.what() + " (x is congruent to a pole vertex)");
  }
}

Evaluatable<double> JacobiFunction::as_evaluatable() const {
  JacobiFunction self = *this;
  return [self](const Paravector<double>& x, const EvalConfig& cfg) { return self(x, cfg); };
}

SeriesValue<double> JacobiFunction::apply_outer(const TranslationWord& outer, const Paravector<double>& x,
                                                const EvalConfig& cfg) const {
  return apply_to_zeta(outer * word_, zeta_, x, cfg);
}

std::vector<PoleRecord> JacobiFunction::poles() const {
  const PeriodLattice& l = lattice();
  const int n = l.rank();
  const auto det = determining_subsets(id_, n);
  std::vector<PoleRecord> out;
  for (unsigned j = 0; j < (1u << n); ++j) {
    PoleRecord p;
    p.location = vertex(l, j);
    p.subset = j;
    p.residue_sign = residue_sign(id_, j);
    p.determining = std::find(det.begin(), det.end(), j) != det.end();
    out.push_back(p);
  }
  return out;
}

namespace {

template <class T>
ResidueEstimate<T> residue_impl(const Evaluatable<T>& f, const Paravector<double>& a, const EvalConfig& cfg,
                                const ResidueOptions& opts) {
  std::array<Multivector<T>, 3> g;
  for (int i = 0; i < 3; ++i) {
    Paravector<double> p = a;
    p[0] += opts.eps[i];
    g[i] = f(p, cfg).value * T(opts.eps[i]);
  }
  // Neville on eps_i = eps_0 / 2^i: first remove the linear term, then the
  // quadratic one.
  const double r0 = opts.eps[0] / opts.eps[1];
  const double r1 = opts.eps[1] / opts.eps[2];
  const Multivector<T> a0 = (g[1] * T(r0) - g[0]) * T(1.0 / (r0 - 1.0));
  const Multivector<T> a1 = (g[2] * T(r1) - g[1]) * T(1.0 / (r1 - 1.0));
  const double rr = opts.eps[0] / opts.eps[2];
  const Multivector<T> b = (a1 * T(rr) - a0) * T(1.0 / (rr - 1.0));
  ResidueEstimate<T> out;
  out.limit = b;
  out.scalar = b.scalar_part();
  out.spread = norm_inf(b - a1);
  out.converged = out.spread <= opts.spread_tolerance;
  return out;
}

}  // namespace

ResidueEstimate<double> estimate_residue(const Evaluatable<double>& f, const Paravector<double>& a,
                                         const EvalConfig& cfg, const ResidueOptions& opts) {
  return residue_impl(f, a, cfg, opts);
}

ResidueEstimate<std::complex<double>> estimate_residue(const Evaluatable<std::complex<double>>& f,
                                                       const Paravector<double>& a, const EvalConfig& cfg,
                                                       const ResidueOptions& opts) {
  return residue_impl(f, a, cfg, opts);
}

double residue_sum_determining(const JacobiFunction& f, const EvalConfig& cfg, const ResidueOptions& opts) {
  const auto ev = f.as_evaluatable();
  double sum = 0.0;
  for (unsigned j : determining_subsets(f.id(), f.lattice().rank()))
    sum += estimate_residue(ev, vertex(f.lattice(), j), cfg, opts).scalar;
  return sum;
}

std::vector<Paravector<double>> zero_catalog(JacobiId id, const PeriodLattice& l) {
  if (!l.is_full_rank()) throw std::invalid_argument("zero catalog needs N = 2m+2");
  const int n = l.rank();
  std::vector<Paravector<double>> out;
  if (id.kind == JacobiKind::s) {
    const Paravector<double> half = 0.5 * l.half_period(id.index);
    out.push_back(half);
    for (int j = 0; j < n; ++j)
      if (j != id.index) out.push_back(l.half_period(j) + half);
  } else {
    for (int j = 1; j < n; ++j) out.push_back(0.5 * (l.half_period(0) + l.half_period(j)));
    for (int j = 1; j < n; ++j) out.push_back(1.5 * l.half_period(0) + 0.5 * l.half_period(j));
  }
  return out;
}

std::vector<HiddenRelation> hidden_relations() {
  auto E = [](int one_based) { return TranslationWord::shift(one_based - 1); };
  const TranslationWord I = TranslationWord::identity();
  std::vector<HiddenRelation> out;
  const JacobiId s1 = JacobiId::S(1), s2 = JacobiId::S(2);
  out.push_back({"S1(x+w2+w3) + S1(x+w4)", s1, E(2) * E(3) + E(4), true});
  out.push_back({"S1(x+w3+w4) + S1(x+w2)", s1, E(3) * E(4) + E(2), true});
  out.push_back({"S1(x+w4+w2) + S1(x+w3)", s1, E(4) * E(2) + E(3), true});
  out.push_back({"S1(x+w2+w3+w4) + S1(x)", s1, E(2) * E(3) * E(4) + I, true});
  for (int j = 1; j <= 4; ++j)
    for (int k = j + 1; k <= 4; ++k)
      out.push_back({"S2(x+w" + std::to_string(j) + "+w" + std::to_string(k) + ") - S2(x)", s2, E(j) * E(k) - I,
                     j != 2 && k != 2});
  for (int j = 1; j <= 4; ++j)
    for (int k = j + 1; k <= 4; ++k)
      out.push_back({"S2(x+w1+w" + std::to_string(j) + "+w" + std::to_string(k) + ") + S2(x)", s2,
                     E(1) * E(j) * E(k) + I, j != 2 && k != 2});
  return out;
}

std::vector<HiddenDefect> hidden_periodicity_defects(const ZetaFunction& zeta, const Paravector<double>& x,
                                                     const EvalConfig& cfg) {
  if (zeta.lattice().m() != 1 || !zeta.lattice().is_full_rank())
    throw std::invalid_argument("hidden periodicities are stated for m = 1, N = 4");
  const JacobiFunction s1 = JacobiFunction::build(JacobiId::S(1), zeta);
  const JacobiFunction s2 = JacobiFunction::build(JacobiId::S(2), zeta);
  std::vector<HiddenDefect> out;
  for (auto& rel : hidden_relations()) {
    const JacobiFunction& f = rel.function == JacobiId::S(1) ? s1 : s2;
    out.push_back({rel, f.apply_outer(rel.outer, x, cfg)});
  }
  return out;
}

namespace {

void require_off_lattice(const PeriodLattice& l, const Paravector<double>& p, const char* what) {
  if (l.distance_to_lattice(p) <= 1e-9 * l.min_modulus()) throw PoleError(std::string(what) + " lies on the lattice");
}

}  // namespace

Evaluatable<double> construct_two_pole_m0(const ZetaFunction& zeta, const Paravector<double>& alpha, double k) {
  if (zeta.lattice().m() != 0) throw std::invalid_argument("the two-pole construction is the m = 0 case");
  if (!alpha.is_zero()) require_off_lattice(zeta.lattice(), alpha, "alpha");
  return [zeta, alpha, k](const Paravector<double>& x, const EvalConfig& cfg) {
    SeriesValue<double> a = zeta(x - alpha, cfg);
    SeriesValue<double> b = zeta(x + alpha, cfg);
    return k * a - k * b;
  };
}

Evaluatable<std::complex<double>> construct_complexified_two_pole(const ZetaFunction& zeta,
                                                                  const Paravector<double>& alpha, double k) {
  const PeriodLattice& l = zeta.lattice();
  if (l.m() != 1) throw std::invalid_argument("the complexified construction is stated for m = 1");
  if (l.signature().scalar_field != ScalarField::complex)
    throw std::invalid_argument("the complexified construction needs a complex scalar field");
  if (!alpha.is_zero()) require_off_lattice(l, alpha, "alpha");
  using C = std::complex<double>;
  return [zeta, alpha, k](const Paravector<double>& x, const EvalConfig& cfg) {
    const Paravector<C> xc = convert<C>(x);
    const Paravector<C> ia = convert<C>(alpha) * C(0.0, 1.0);
    SeriesValue<C> out = C(k) * to_complex(zeta(x - alpha, cfg));
    out -= C(k) * to_complex(zeta(x + alpha, cfg));
    out += C(0.0, k) * zeta(xc - ia, cfg);
    out -= C(0.0, k) * zeta(xc + ia, cfg);
    return out;
  };
}

Evaluatable<double> construct_third_difference(const ZetaFunction& zeta, const Paravector<double>& beta) {
  const PeriodLattice& l = zeta.lattice();
  if (l.m() > 1 || !l.is_full_rank())
    throw std::invalid_argument("the third-difference construction needs N = 2m+2 with m <= 1");
  const OperatorExpr cube{{{FactorKind::i_minus_e, 0}, {FactorKind::i_minus_e, 0}, {FactorKind::i_minus_e, 0}}};
  const TranslationWord word = expand(cube);
  return [zeta, beta, word](const Paravector<double>& x, const EvalConfig& cfg) {
    const std::array<Paravector<double>, 1> gens{beta};
    const Evaluatable<double> z = [&zeta](const Paravector<double>& p, const EvalConfig& c) { return zeta(p, c); };
    return apply(word, z, x, std::span<const Paravector<double>>(gens), cfg);
  };
}

Evaluatable<double> half_period_reduce(const Evaluatable<double>& f, std::span<const int> plus_indices,
                                       const PeriodLattice& l) {
  OperatorExpr e;
  for (int j : plus_indices) {
    if (j < 0 || j >= l.rank()) throw std::out_of_range("half-period index");
    e.factors.push_back({FactorKind::i_plus_e, j});
  }
  const TranslationWord word = expand(e);
  std::vector<Paravector<double>> gens(l.half_periods().begin(), l.half_periods().end());
  return [f, word, gens](const Paravector<double>& x, const EvalConfig& cfg) {
    return apply(word, f, x, std::span<const Paravector<double>>(gens), cfg);
  };
}

SeriesValue<double> phi_taylor_coefficient(const JacobiFunction& f, const Paravector<double>& d, int n,
                                           const EvalConfig& cfg) {
  if (n < 0) throw std::invalid_argument("Taylor order must be non-negative");
  if (n > 0 && n % 2 == 0)
    throw ImparityError("phi is odd, so its even-order Taylor coefficients vanish identically");
  const PeriodLattice& l = f.lattice();
  SeriesValue<double> out = zero_series<double>(l.m());
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  for (const auto& term : f.word().terms()) {
    if (term.shift.empty()) continue;  // the unshifted zeta carries the pole
    const Paravector<double> w = shifted_point(Paravector<double>(l.m()), term.shift, l.half_periods());
    SeriesValue<double> v = n == 0 ? f.zeta()(w, cfg) : f.zeta().derivative(d, n, w, cfg);
    v *= static_cast<double>(term.coefficient) / fact;
    out += v;
  }
  return out;
}

SeriesValue<double> half_period_relation_defect(const ZetaFunction& zeta, const EvalConfig& cfg) {
  const PeriodLattice& l = zeta.lattice();
  if (!l.is_full_rank()) throw std::invalid_argument("the half-period relation needs N = 2m+2");
  SeriesValue<double> out = zero_series<double>(l.m());
  for (unsigned j = 1; j < (1u << l.rank()); ++j) {
    SeriesValue<double> v = zeta(vertex(l, j), cfg);
    v *= (std::popcount(j) % 2 == 1) ? 1.0 : -1.0;
    out += v;
  }
  return out;
}

LemmaReport alternating_subset_sum_report(int n) {
  if (n < 2 || n > 10) throw std::invalid_argument("lemma check supports 2 <= n <= 10");
  // p_i are the unit vectors of Z^n, so p = (1, ..., 1).
  std::vector<std::vector<long long>> pascal(n, std::vector<long long>(n, 0));
  for (int a = 0; a < n; ++a) {
    pascal[a][0] = 1;
    for (int b = 1; b <= a; ++b) pascal[a][b] = pascal[a - 1][b - 1] + (b <= a - 1 ? pascal[a - 1][b] : 0);
  }
  LemmaReport rep;
  std::vector<long long> alternating(n, 0);
  for (int k = 1; k <= n; ++k) {
    std::vector<long long> sk(n, 0);
    for (unsigned s = 0; s < (1u << n); ++s) {
      if (std::popcount(s) != k) continue;
      for (int i = 0; i < n; ++i)
        if (s & (1u << i)) ++sk[i];
    }
    for (int i = 0; i < n; ++i) {
      if (sk[i] != pascal[n - 1][k - 1]) rep.subset_sums_ok = false;
      alternating[i] += (k % 2 == 1 ? 1 : -1) * sk[i];
    }
  }
  for (long long v : alternating)
    if (v != 0) rep.alternating_ok = false;
  return rep;
}

bool alternating_subset_sum_identity(int n) {
  const LemmaReport r = alternating_subset_sum_report(n);
  return r.subset_sums_ok && r.alternating_ok;
}

}  // namespace cliffell
