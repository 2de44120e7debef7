#include "cliffell/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>

#include "cliffell/parallel.hpp"

namespace cliffell {

void EvalConfig::validate() const {
  if (max_radius < 1) throw std::invalid_argument("max_radius must be at least 1");
  if (!(target_tol >= 0.0)) throw std::invalid_argument("target_tol must be non-negative");
}

namespace {

using Exponent = std::array<std::uint8_t, kMaxParavectorDim>;

// Monomials of each degree 0..max_degree in `dim` variables, plus the index
// of beta + e_a in the next degree.
struct MonomialTables {
  int dim = 0;
  std::vector<std::vector<Exponent>> by_degree;
  std::vector<std::vector<std::array<int, kMaxParavectorDim>>> succ;

  MonomialTables(int d, int max_degree) : dim(d) {
    by_degree.push_back({Exponent{}});
    for (int deg = 1; deg <= max_degree; ++deg) {
      std::map<Exponent, int> seen;
      std::vector<Exponent> next;
      std::vector<std::array<int, kMaxParavectorDim>> links;
      for (const Exponent& e : by_degree.back()) {
        for (int a = 0; a < dim; ++a) {
          Exponent f = e;
          ++f[a];
          if (seen.emplace(f, 0).second) next.push_back(f);
        }
      }
      std::sort(next.begin(), next.end(), std::greater<>());
      for (std::size_t i = 0; i < next.size(); ++i) seen[next[i]] = static_cast<int>(i);
      for (const Exponent& e : by_degree.back()) {
        std::array<int, kMaxParavectorDim> l{};
        for (int a = 0; a < dim; ++a) {
          Exponent f = e;
          ++f[a];
          l[a] = seen[f];
        }
        links.push_back(l);
      }
      succ.push_back(std::move(links));
      by_degree.push_back(std::move(next));
    }
  }
};

// out += c * (e_a * M), a = 0 meaning the unit.
inline void add_generator_times(int a, const double* mv, double* out, int blades) {
  if (a == 0) {
    for (int s = 0; s < blades; ++s) out[s] += mv[s];
    return;
  }
  const unsigned bit = 1u << (a - 1);
  for (int s = 0; s < blades; ++s) {
    const int sign = detail::kSigns.s[bit][s];
    out[s ^ bit] += sign > 0 ? mv[s] : -mv[s];
  }
}

// out = u * M for a paravector u.
inline void paravector_times(const double* u, int dim, const double* mv, double* out, int blades) {
  std::fill(out, out + blades, 0.0);
  for (int s = 0; s < blades; ++s) out[s] = u[0] * mv[s];
  for (int a = 1; a < dim; ++a) {
    const unsigned bit = 1u << (a - 1);
    const double ua = u[a];
    if (ua == 0.0) continue;
    for (int s = 0; s < blades; ++s) {
      const double v = ua * mv[s];
      if (detail::kSigns.s[bit][s] > 0)
        out[s ^ bit] += v;
      else
        out[s ^ bit] -= v;
    }
  }
}

// Per-shell sums over representatives of (u x)^mu u as homogeneous polynomials
// in the coordinates of x (odd mu only). coeffs[j] belongs to mu = 2j+1 and is
// laid out monomial-major, blade-minor.
struct ShellMoments {
  std::vector<std::vector<double>> coeffs;
};

struct MomentBasis;
struct MomentSnapshot {
  int mu_max = 0;
  std::shared_ptr<const MonomialTables> tables;
  std::shared_ptr<const MomentBasis> basis;
  std::vector<std::shared_ptr<const ShellMoments>> shells;  // index r-1
};

// Enumerates the +-pair representatives of shell r like
// for_each_shell_representative, but hands out the lattice point
// w = sum_a k_a (2 w_a) built from running partial sums. Accumulation runs
// in increasing alpha, matching PeriodLattice::point bit for bit.
struct PointEnumerator {
  double om[kMaxParavectorDim][kMaxParavectorDim] = {};  // 2 * omega_a
  int n = 0;
  int dim = 0;

  explicit PointEnumerator(const PeriodLattice& l) : n(l.rank()), dim(l.signature().paravector_dim()) {
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < dim; ++i) om[a][i] = 2.0 * l.half_period(a)[i];
  }

  template <class F>
  void run(int r, F&& f) const {
    if (r <= 0) return;
    double partial[kMaxParavectorDim] = {};
    rec(r, 0, false, false, partial, f);
  }

 private:
  template <class F>
  void rec(int r, int pos, bool hit, bool sign_fixed, const double* partial, F& f) const {
    const double* o = om[pos];
    double w[kMaxParavectorDim];
    if (pos == n - 1) {
      auto emit = [&](int v) {
        const double dv = v;
        for (int i = 0; i < dim; ++i) w[i] = partial[i] + dv * o[i];
        f(static_cast<const double*>(w));
      };
      if (!hit) {
        emit(-r);
        if (sign_fixed) emit(r);
        return;
      }
      const int hi = sign_fixed ? r : 0;
      for (int v = -r; v <= hi; ++v) emit(v);
      return;
    }
    const int hi = sign_fixed ? r : 0;
    for (int v = -r; v <= hi; ++v) {
      const double dv = v;
      for (int i = 0; i < dim; ++i) w[i] = partial[i] + dv * o[i];
      rec(r, pos + 1, hit || v == -r || v == r, sign_fixed || v != 0, w, f);
    }
  }
};

// For odd mu: G_beta = sum over index tuples (i_0..i_mu) whose counts are
// beta of e_{i0} x e_{i1} x ... x e_{i_mu}, a polynomial in x (index 0 is the
// unit). Then sum_p (u_p x)^mu u_p = sum_beta (sum_p u_p^beta) G_beta, so a
// shell only needs the power sums of its inverse lattice points.
struct MomentBasis {
  std::vector<std::vector<std::vector<double>>> g;  // [mu/2][beta] -> monomials(mu) x blades
};

MomentBasis build_basis(const MonomialTables& t, int dim, int blades, int mu_max) {
  MomentBasis basis;
  // h[beta] for tuples of the current length j, each a polynomial of degree j-1.
  std::vector<std::vector<double>> h(t.by_degree[1].size(), std::vector<double>(blades, 0.0));
  for (int i = 0; i < dim; ++i) h[t.succ[0][0][i]][i == 0 ? 0 : (1u << (i - 1))] = 1.0;
  std::vector<double> tmp(blades);
  for (int j = 1;; ++j) {
    const int mu = j - 1;
    if (mu % 2 == 1) basis.g.push_back(h);
    if (mu >= mu_max) break;
    const auto& monos_in = t.by_degree[j - 1];
    const std::size_t monos_out = t.by_degree[j].size();
    std::vector<std::vector<double>> next(t.by_degree[j + 1].size(), std::vector<double>(monos_out * blades, 0.0));
    for (std::size_t beta = 0; beta < t.by_degree[j].size(); ++beta) {
      const auto& poly = h[beta];
      for (int i = 0; i < dim; ++i) {
        auto& dst = next[t.succ[j][beta][i]];
        for (std::size_t g = 0; g < monos_in.size(); ++g) {
          for (int a = 0; a < dim; ++a) {
            std::fill(tmp.begin(), tmp.end(), 0.0);
            add_generator_times(a, &poly[g * blades], tmp.data(), blades);
            const std::size_t out_mono = static_cast<std::size_t>(t.succ[j - 1][g][a]);
            add_generator_times(i, tmp.data(), &dst[out_mono * blades], blades);
          }
        }
      }
    }
    h = std::move(next);
  }
  return basis;
}

ShellMoments build_shell_moments(const PointEnumerator& points, const MonomialTables& t, const MomentBasis& basis,
                                 int dim, int blades, int mu_max, int r) {
  const int top = mu_max + 1;
  std::vector<std::vector<double>> val(top + 1), sums(top + 1);
  for (int d = 0; d <= top; ++d) {
    val[d].assign(t.by_degree[d].size(), 0.0);
    sums[d].assign(t.by_degree[d].size(), 0.0);
  }
  val[0][0] = 1.0;
  points.run(r, [&](const double* w) {
    double u[kMaxParavectorDim];
    double q2 = 0.0;
    for (int i = 0; i < dim; ++i) q2 += w[i] * w[i];
    const double inv = 1.0 / q2;
    u[0] = w[0] * inv;
    for (int i = 1; i < dim; ++i) u[i] = -w[i] * inv;
    for (int d = 0; d < top; ++d) {
      const auto& links = t.succ[d];
      const auto& cur = val[d];
      auto& nxt = val[d + 1];
      for (std::size_t b = 0; b < cur.size(); ++b)
        for (int a = 0; a < dim; ++a) nxt[links[b][a]] = cur[b] * u[a];
    }
    for (int d = 2; d <= top; d += 2) {
      auto& dst = sums[d];
      const auto& src = val[d];
      for (std::size_t b = 0; b < dst.size(); ++b) dst[b] += src[b];
    }
  });
  ShellMoments out;
  for (int mu = 1; mu <= mu_max; mu += 2) {
    std::vector<double> c(t.by_degree[mu].size() * blades, 0.0);
    const auto& g = basis.g[mu / 2];
    const auto& s = sums[mu + 1];
    for (std::size_t beta = 0; beta < s.size(); ++beta) {
      const double sb = s[beta];
      const auto& gb = g[beta];
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += sb * gb[i];
    }
    out.coeffs.push_back(std::move(c));
  }
  return out;
}

template <class T>
struct Powers {
  std::array<std::array<T, 16>, kMaxParavectorDim> p{};
};

template <class T>
Powers<T> powers_of(const Paravector<T>& x, int max_degree) {
  Powers<T> pw;
  for (int a = 0; a < x.dim(); ++a) {
    pw.p[a][0] = T(1);
    for (int d = 1; d <= max_degree; ++d) pw.p[a][d] = pw.p[a][d - 1] * x[a];
  }
  return pw;
}

// out += c * P(x) where P has the given monomial coefficients.
template <class T>
void add_polynomial(const std::vector<Exponent>& monos, const std::vector<double>& coeffs, const Powers<T>& pw,
                    int dim, int blades, double c, Multivector<T>& out) {
  for (std::size_t i = 0; i < monos.size(); ++i) {
    T wgt = pw.p[0][monos[i][0]];
    for (int a = 1; a < dim; ++a) wgt *= pw.p[a][monos[i][a]];
    wgt *= c;
    const double* cf = &coeffs[i * blades];
    for (int s = 0; s < blades; ++s) out[s] += wgt * cf[s];
  }
}

// n! [s^n] prod_a (y_a + s d_a)^{e_a}, i.e. (d|grad)^n of the monomial at y.
double monomial_directional(const Exponent& e, int dim, const Paravector<double>& y, const Paravector<double>& d,
                            int n) {
  std::array<double, 16> poly{};
  poly[0] = 1.0;
  int deg = 0;
  for (int a = 0; a < dim; ++a) {
    for (int rep = 0; rep < e[a]; ++rep) {
      for (int i = deg + 1; i >= 1; --i) poly[i] = poly[i] * y[a] + poly[i - 1] * d[a];
      poly[0] *= y[a];
      ++deg;
    }
  }
  if (n > deg) return 0.0;
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f * poly[n];
}

struct CacheKey {
  std::string bytes;
  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};
struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const noexcept { return std::hash<std::string>{}(k.bytes); }
};

CacheKey make_key(const Paravector<double>& x, const EvalConfig& cfg, int kind) {
  CacheKey k;
  k.bytes.resize(sizeof(double) * x.dim() + sizeof(int) * 2 + sizeof(double) + 1);
  char* p = k.bytes.data();
  std::memcpy(p, x.coefficients().data(), sizeof(double) * x.dim());
  p += sizeof(double) * x.dim();
  std::memcpy(p, &cfg.max_radius, sizeof(int));
  p += sizeof(int);
  std::memcpy(p, &kind, sizeof(int));
  p += sizeof(int);
  std::memcpy(p, &cfg.target_tol, sizeof(double));
  p += sizeof(double);
  *p = cfg.pairing ? 1 : 0;
  return k;
}

}  // namespace

struct ZetaFunction::State {
  PeriodLattice lattice;
  ZetaOptions opts;
  int n0 = 1;
  double guard2 = 0.0;

  mutable std::mutex moments_mutex;
  mutable std::shared_ptr<const MomentSnapshot> moments;

  std::mutex cache_mutex;
  std::unordered_map<CacheKey, SeriesValue<double>, CacheKeyHash> cache;

  PointEnumerator enumerator;

  State(PeriodLattice l, ZetaOptions o) : lattice(std::move(l)), opts(o), enumerator(lattice) {
    const int n = lattice.rank();
    n0 = 2 * (n / 2) + 1;
    const double g = 1e-9 * lattice.min_modulus();
    guard2 = g * g;
  }

  int dim() const { return lattice.signature().paravector_dim(); }
  int blades() const { return lattice.signature().blade_count(); }
  int m() const { return lattice.m(); }

  std::shared_ptr<const MomentSnapshot> ensure_moments(int radius, int mu_max) const {
    std::lock_guard lock(moments_mutex);
    if (moments && moments->mu_max >= mu_max && static_cast<int>(moments->shells.size()) >= radius) return moments;
    auto snap = std::make_shared<MomentSnapshot>();
    const bool reuse = moments && moments->mu_max >= mu_max;
    snap->mu_max = reuse ? moments->mu_max : std::max(mu_max, moments ? moments->mu_max : 1);
    if (reuse) {
      snap->tables = moments->tables;
      snap->basis = moments->basis;
    } else {
      auto tables = std::make_shared<const MonomialTables>(dim(), snap->mu_max + 1);
      snap->basis = std::make_shared<const MomentBasis>(build_basis(*tables, dim(), blades(), snap->mu_max));
      snap->tables = tables;
    }
    const int have = reuse ? static_cast<int>(moments->shells.size()) : 0;
    const int want = std::max(radius, moments ? static_cast<int>(moments->shells.size()) : 0);
    snap->shells.resize(want);
    for (int r = 0; r < have; ++r) snap->shells[r] = moments->shells[r];
    const MonomialTables& t = *snap->tables;
    const int mu = snap->mu_max;
    parallel_for(static_cast<std::size_t>(want - have), [&](std::size_t i) {
      const int r = have + static_cast<int>(i) + 1;
      snap->shells[r - 1] = std::make_shared<const ShellMoments>(build_shell_moments(enumerator, t, *snap->basis, dim(), blades(), mu, r));
    });
    moments = snap;
    return moments;
  }

  // Which pieces of the shell sum to include.
  struct Parts {
    bool inverses = true;
    std::vector<std::pair<int, double>> poly;  // (odd mu, weight)
  };

  Parts zeta_parts() const {
    Parts p;
    for (int mu = 1; mu < lattice.rank(); mu += 2) p.poly.emplace_back(mu, 2.0);
    return p;
  }

  template <class T>
  void check_pole(const T& q) const {
    if (std::abs(q) < guard2) throw PoleError("argument lies on a lattice singularity");
  }

  // Paired inverse sum over shell r, as paravector coefficients.
  template <class T>
  void shell_inverses(const Paravector<T>& x, int r, std::array<T, kMaxParavectorDim>& acc) const {
    const int d = dim();
    acc.fill(T(0));
    enumerator.run(r, [&](const double* w) {
      T am[kMaxParavectorDim], ap[kMaxParavectorDim];
      T qm = T(0), qp = T(0);
      for (int i = 0; i < d; ++i) {
        am[i] = x[i] - w[i];
        ap[i] = x[i] + w[i];
        qm += am[i] * am[i];
        qp += ap[i] * ap[i];
      }
      check_pole(qm);
      check_pole(qp);
      const T im = T(1) / qm, ip = T(1) / qp;
      acc[0] += am[0] * im + ap[0] * ip;
      for (int i = 1; i < d; ++i) acc[i] -= am[i] * im + ap[i] * ip;
    });
  }

  template <class T>
  Multivector<T> shell_sum(const Paravector<T>& x, int r, const Parts& parts, const MomentSnapshot* snap) const {
    Multivector<T> s(m());
    if (parts.inverses) {
      std::array<T, kMaxParavectorDim> acc;
      shell_inverses(x, r, acc);
      s[0] = acc[0];
      for (int i = 1; i < dim(); ++i) s[1u << (i - 1)] = acc[i];
    }
    if (!parts.poly.empty()) {
      const auto pw = powers_of(x, snap->mu_max);
      const ShellMoments& sm = *snap->shells[r - 1];
      for (const auto& [mu, wgt] : parts.poly)
        add_polynomial(snap->tables->by_degree[mu], sm.coeffs[mu / 2], pw, dim(), blades(), wgt, s);
    }
    return s;
  }

  template <class T>
  SeriesValue<T> sum_series(const Paravector<T>& x, const EvalConfig& cfg, bool origin, const Parts& parts,
                            int decay) const {
    cfg.validate();
    if (x.m() != m()) throw SignatureMismatch("argument from a different algebra than the lattice");
    int mu_need = 0;
    for (const auto& pr : parts.poly) mu_need = std::max(mu_need, pr.first);
    std::shared_ptr<const MomentSnapshot> snap;
    if (mu_need > 0) snap = ensure_moments(cfg.max_radius, mu_need);

    SeriesValue<T> out{Multivector<T>(m()), 0, 0.0};
    if (origin) {
      check_pole(x.quadratic_norm());
      out.value = inverse(x).to_multivector();
    }
    const int batch = std::max(1, worker_threads());
    std::vector<Multivector<T>> shells;
    for (int r0 = 1; r0 <= cfg.max_radius; r0 += batch) {
      const int r1 = std::min(cfg.max_radius, r0 + batch - 1);
      shells.assign(r1 - r0 + 1, Multivector<T>(m()));
      parallel_for(shells.size(), [&](std::size_t i) { shells[i] = shell_sum(x, r0 + static_cast<int>(i), parts, snap.get()); });
      for (int r = r0; r <= r1; ++r) {
        const Multivector<T>& s = shells[r - r0];
        out.value += s;
        out.radius_used = r;
        out.tail_estimate = 2.0 * norm_inf(s) * r / (decay - 1);
        if (cfg.target_tol > 0.0 && out.tail_estimate <= cfg.target_tol) return out;
      }
    }
    return out;
  }

  // Reference path: every lattice point on its own, direct products, no
  // precomputed moments.
  template <class T>
  SeriesValue<T> sum_termwise(const Paravector<T>& x, const EvalConfig& cfg) const {
    cfg.validate();
    const int n = lattice.rank();
    check_pole(x.quadratic_norm());
    SeriesValue<T> out{inverse(x).to_multivector(), 0, 0.0};
    for (int r = 1; r <= cfg.max_radius; ++r) {
      Multivector<T> s(m());
      const Shell shell = enumerate_shell(n, r);
      for (const auto& k : shell.points) {
        const Paravector<T> w = convert<T>(lattice.point(k));
        const Paravector<T> xm = x - w;
        check_pole(xm.quadratic_norm());
        Multivector<T> term = inverse(xm).to_multivector();
        const Paravector<T> u = inverse(w);
        for (int mu = 0; mu < n; ++mu) term += lambda_power(u, x, mu);
        s += term;
      }
      out.value += s;
      out.radius_used = r;
      out.tail_estimate = 2.0 * norm_inf(s) * r / (decay_exponent() - 1);
      if (cfg.target_tol > 0.0 && out.tail_estimate <= cfg.target_tol) break;
    }
    return out;
  }

  int decay_exponent() const { return n0 + 2 - lattice.rank(); }

  template <class T>
  SeriesValue<T> zeta(const Paravector<T>& x, const EvalConfig& cfg) const {
    if (!cfg.pairing) return sum_termwise(x, cfg);
    return sum_series(x, cfg, true, zeta_parts(), decay_exponent());
  }
};

ZetaFunction::ZetaFunction(PeriodLattice lattice, ZetaOptions opts)
    : state_(std::make_shared<State>(std::move(lattice), opts)) {}

const PeriodLattice& ZetaFunction::lattice() const noexcept { return state_->lattice; }
int ZetaFunction::leading_odd_power() const noexcept { return state_->n0; }
int ZetaFunction::decay_exponent() const noexcept { return state_->decay_exponent(); }

SeriesValue<double> ZetaFunction::operator()(const Paravector<double>& x, const EvalConfig& cfg) const {
  State& s = *state_;
  if (!s.opts.memoize) return s.zeta(x, cfg);
  if (x.m() != s.m()) throw SignatureMismatch("argument from a different algebra than the lattice");
  const CacheKey key = make_key(x, cfg, 0);
  {
    std::lock_guard lock(s.cache_mutex);
    if (auto it = s.cache.find(key); it != s.cache.end()) return it->second;
  }
  SeriesValue<double> v = s.zeta(x, cfg);
  std::lock_guard lock(s.cache_mutex);
  s.cache.emplace(key, v);
  return v;
}

SeriesValue<std::complex<double>> ZetaFunction::operator()(const Paravector<std::complex<double>>& x,
                                                           const EvalConfig& cfg) const {
  return state_->zeta(x, cfg);
}

std::size_t ZetaFunction::cached_values() const {
  std::lock_guard lock(state_->cache_mutex);
  return state_->cache.size();
}

SeriesValue<double> ZetaFunction::laurent_leading_term(const Paravector<double>& x, const EvalConfig& cfg) const {
  State::Parts parts;
  parts.inverses = false;
  parts.poly.emplace_back(state_->n0, -2.0);
  return state_->sum_series(x, cfg, false, parts, decay_exponent());
}

SeriesValue<double> ZetaFunction::laurent_remainder(const Paravector<double>& x, const EvalConfig& cfg) const {
  State::Parts parts = state_->zeta_parts();
  parts.poly.emplace_back(state_->n0, 2.0);
  return state_->sum_series(x, cfg, false, parts, decay_exponent() + 2);
}

SeriesValue<double> ZetaFunction::derivative(const Paravector<double>& d, int n, const Paravector<double>& y,
                                             const EvalConfig& cfg) const {
  if (n < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (n == 0) return (*this)(y, cfg);
  cfg.validate();
  const State& s = *state_;
  if (d.m() != s.m() || y.m() != s.m()) throw SignatureMismatch("argument from a different algebra than the lattice");
  const int nr = s.lattice.rank();
  const int dim = s.dim();
  s.check_pole(y.quadratic_norm());
  const auto parts = s.zeta_parts();
  int mu_need = 1;
  for (const auto& pr : parts.poly) mu_need = std::max(mu_need, pr.first);
  const auto snap = state_->ensure_moments(cfg.max_radius, mu_need);

  SeriesValue<double> out{directional_derivative_inverse(d, y, n), 0, 0.0};
  std::vector<Multivector<double>> shells(cfg.max_radius, Multivector<double>(s.m()));
  parallel_for(shells.size(), [&](std::size_t i) {
    const int r = static_cast<int>(i) + 1;
    Multivector<double> acc(s.m());
    for_each_shell_representative(nr, r, [&](const int* k) {
      const Paravector<double> w = s.lattice.point(std::span<const int>(k, nr));
      const Paravector<double> zm = y - w, zp = y + w;
      s.check_pole(zm.quadratic_norm());
      s.check_pole(zp.quadratic_norm());
      acc += directional_derivative_inverse(d, zm, n);
      acc += directional_derivative_inverse(d, zp, n);
    });
    const ShellMoments& sm = *snap->shells[r - 1];
    for (const auto& [mu, wgt] : parts.poly) {
      if (n > mu) continue;
      const auto& monos = snap->tables->by_degree[mu];
      const auto& cf = sm.coeffs[mu / 2];
      for (std::size_t j = 0; j < monos.size(); ++j) {
        const double c = wgt * monomial_directional(monos[j], dim, y, d, n);
        if (c == 0.0) continue;
        for (int b = 0; b < s.blades(); ++b) acc[b] += c * cf[j * s.blades() + b];
      }
    }
    shells[i] = acc;
  });
  for (int r = 1; r <= cfg.max_radius; ++r) {
    out.value += shells[r - 1];
    out.radius_used = r;
    out.tail_estimate = 2.0 * norm_inf(shells[r - 1]) * r / (decay_exponent() - 1);
  }
  return out;
}

Multivector<double> directional_derivative_inverse(const Paravector<double>& x, const Paravector<double>& w, int n) {
  if (n < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (w.is_zero()) throw PoleError("derivative of the inverse at the origin");
  const Multivector<double> wi = inverse(w).to_multivector();
  const Multivector<double> step = wi * x.to_multivector();
  Multivector<double> r = wi;
  double f = 1.0;
  for (int k = 1; k <= n; ++k) {
    r = step * r;
    f *= -k;
  }
  return r * f;
}

SeriesValue<double> zeta_eval(const PeriodLattice& l, const Paravector<double>& x, const EvalConfig& cfg) {
  return ZetaFunction(l)(x, cfg);
}

SeriesValue<double> zeta_derivative(const PeriodLattice& l, const Paravector<double>& direction, int n,
                                    const Paravector<double>& at, const EvalConfig& cfg) {
  return ZetaFunction(l).derivative(direction, n, at, cfg);
}

namespace {

SeriesValue<double> quasi_polynomial(const ZetaFunction& zeta, const Paravector<double>& dir, int alpha,
                                     const EvalConfig& cfg) {
  const PeriodLattice& l = zeta.lattice();
  if (!l.is_full_rank()) throw std::invalid_argument("quasi-periodicity polynomial needs N = 2m+2");
  const Paravector<double>& w = l.half_period(alpha);
  SeriesValue<double> out = 2.0 * zeta(w, cfg);
  double fact = 1.0;
  for (int p = 1; p <= l.m(); ++p) {
    fact *= (2.0 * p - 1) * (2.0 * p);
    out += (2.0 / fact) * zeta.derivative(dir, 2 * p, w, cfg);
  }
  return out;
}

}  // namespace

SeriesValue<double> p2m_eval(const ZetaFunction& zeta, const Paravector<double>& x, int alpha, const EvalConfig& cfg) {
  return quasi_polynomial(zeta, x, alpha, cfg);
}

SeriesValue<double> p2m_eval_shifted(const ZetaFunction& zeta, const Paravector<double>& x, int alpha,
                                     const EvalConfig& cfg) {
  return quasi_polynomial(zeta, x + zeta.lattice().half_period(alpha), alpha, cfg);
}

HolomorphicCheck check_holomorphic_cliffordian(const RealFunction& f, const Paravector<double>& x, double h,
                                               std::optional<double> pole_distance) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const int m = x.m();
  const int dim = x.dim();
  HolomorphicCheck res;
  res.step_ok = !pole_distance || *pole_distance > (2 * m + 1) * h;

  using Offset = std::array<int, kMaxParavectorDim>;
  std::map<Offset, Multivector<double>> samples;
  auto sample = [&](const Offset& o) -> const Multivector<double>& {
    auto it = samples.find(o);
    if (it != samples.end()) return it->second;
    Paravector<double> p = x;
    for (int a = 0; a < dim; ++a)
      if (o[a] != 0) p[a] += o[a] * h;
    return samples.emplace(o, f(p)).first->second;
  };
  // Laplacian^level of f at offset o by nested 3-point stencils.
  std::map<std::pair<int, Offset>, Multivector<double>> lap_memo;
  std::function<Multivector<double>(int, const Offset&)> lap = [&](int level, const Offset& o) -> Multivector<double> {
    if (level == 0) return sample(o);
    auto key = std::make_pair(level, o);
    if (auto it = lap_memo.find(key); it != lap_memo.end()) return it->second;
    Multivector<double> acc(m);
    const Multivector<double> centre = lap(level - 1, o);
    for (int a = 0; a < dim; ++a) {
      Offset up = o, dn = o;
      ++up[a];
      --dn[a];
      acc += lap(level - 1, up) + lap(level - 1, dn) - 2.0 * centre;
    }
    acc *= 1.0 / (h * h);
    return lap_memo.emplace(key, acc).first->second;
  };
  Multivector<double> residual(m);
  double scale = 0.0;
  for (int a = 0; a < dim; ++a) {
    Offset up{}, dn{};
    up[a] = 1;
    dn[a] = -1;
    Multivector<double> da = (lap(m, up) - lap(m, dn)) * (1.0 / (2.0 * h));
    scale += norm_inf(da);
    residual += Multivector<double>::generator(m, a) * da;
  }
  res.residual = residual;
  res.scale = scale;
  res.relative = scale > 0.0 ? norm_inf(residual) / scale : norm_inf(residual);
  return res;
}

}  // namespace cliffell
