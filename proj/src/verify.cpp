#include "cliffell/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "cliffell/classical.hpp"
#include "cliffell/jacobi.hpp"
#include "cliffell/operators.hpp"
#include "cliffell/parallel.hpp"
#include "cliffell/zeta.hpp"

namespace cliffell {

// ---------------------------------------------------------------- config

namespace {

using Field = std::variant<int VerifyConfig::*, double VerifyConfig::*, std::uint64_t VerifyConfig::*>;

const std::vector<std::pair<std::string, Field>>& config_table() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"seed", &VerifyConfig::seed},
      {"radius_lo", &VerifyConfig::radius_lo},
      {"radius_hi", &VerifyConfig::radius_hi},
      {"precise_radius", &VerifyConfig::precise_radius},
      {"two_pole_radius", &VerifyConfig::two_pole_radius},
      {"oracle_radius", &VerifyConfig::oracle_radius},
      {"residue_radius", &VerifyConfig::residue_radius},
      {"pde_radius", &VerifyConfig::pde_radius},
      {"samples", &VerifyConfig::samples},
      {"oracle_samples", &VerifyConfig::oracle_samples},
      {"pde_samples", &VerifyConfig::pde_samples},
      {"trend_samples", &VerifyConfig::trend_samples},
      {"sample_margin", &VerifyConfig::sample_margin},
      {"pde_margin", &VerifyConfig::pde_margin},
      {"oracle_tol", &VerifyConfig::oracle_tol},
      {"identity_tol", &VerifyConfig::identity_tol},
      {"two_pole_tol", &VerifyConfig::two_pole_tol},
      {"residue_tol_m0", &VerifyConfig::residue_tol_m0},
      {"residue_tol", &VerifyConfig::residue_tol},
      {"residue_sum_tol_m0", &VerifyConfig::residue_sum_tol_m0},
      {"residue_sum_tol", &VerifyConfig::residue_sum_tol},
      {"odd_tail_factor", &VerifyConfig::odd_tail_factor},
      {"trend_ratio", &VerifyConfig::trend_ratio},
      {"trend_floor", &VerifyConfig::trend_floor},
      {"zero_tail_factor", &VerifyConfig::zero_tail_factor},
      {"hidden_tail_factor", &VerifyConfig::hidden_tail_factor},
      {"pde_tol_m0", &VerifyConfig::pde_tol_m0},
      {"pde_tol", &VerifyConfig::pde_tol},
      {"pde_step_m0", &VerifyConfig::pde_step_m0},
      {"pde_step", &VerifyConfig::pde_step},
      {"negative_factor", &VerifyConfig::negative_factor},
      {"taylor_tol", &VerifyConfig::taylor_tol},
      {"laurent_slope_tol", &VerifyConfig::laurent_slope_tol},
  };
  return table;
}

const Field& find_field(std::string_view key) {
  for (const auto& [name, f] : config_table())
    if (name == key) return f;
  throw std::invalid_argument("unknown setting '" + std::string(key) + "'");
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  const char* b = text.data();
  const char* e = b + text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e)
    throw std::invalid_argument("setting '" + std::string(key) + "' needs a number, got '" + std::string(text) + "'");
  return v;
}

void check_config(const VerifyConfig& c) {
  if (c.radius_lo < 1 || c.radius_hi <= c.radius_lo)
    throw std::invalid_argument("need 1 <= radius_lo < radius_hi");
  for (int r : {c.precise_radius, c.two_pole_radius, c.oracle_radius, c.residue_radius, c.pde_radius})
    if (r < 1) throw std::invalid_argument("radii must be at least 1");
  for (int n : {c.samples, c.oracle_samples, c.pde_samples, c.trend_samples})
    if (n < 1) throw std::invalid_argument("sample counts must be at least 1");
  if (!(c.sample_margin > 0 && c.sample_margin < 0.5 && c.pde_margin > 0 && c.pde_margin < 0.5))
    throw std::invalid_argument("sample margins must lie in (0, 0.5)");
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& [name, f] : config_table()) out.push_back(name);
  return out;
}

void set_config_value(VerifyConfig& cfg, std::string_view key, std::string_view value) {
  const Field& f = find_field(key);
  std::visit(
      [&](auto member) {
        using T = std::remove_reference_t<decltype(cfg.*member)>;
        cfg.*member = parse_number<T>(key, value);
      },
      f);
  check_config(cfg);
}

VerifyConfig parse_config(std::string_view json_text, VerifyConfig base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config JSON must be an object");
  for (const auto& [key, val] : j.items()) {
    const Field& f = find_field(key);
    if (!val.is_number()) throw std::invalid_argument("setting '" + key + "' needs a number");
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(base.*member)>;
          if constexpr (std::is_integral_v<T>) {
            if (!val.is_number_integer()) throw std::invalid_argument("setting '" + key + "' needs an integer");
          }
          base.*member = val.get<T>();
        },
        f);
  }
  check_config(base);
  return base;
}

VerifyConfig load_config(const std::string& path, VerifyConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

std::string config_to_json(const VerifyConfig& cfg) {
  nlohmann::ordered_json j;
  for (const auto& [name, f] : config_table())
    std::visit([&](auto member) { j[name] = cfg.*member; }, f);
  return j.dump(2);
}

// ---------------------------------------------------------------- rows

bool SuiteResult::passed() const { return failures() == 0; }

std::size_t SuiteResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return r.verdict == Verdict::fail; }));
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "true";
    case Verdict::fail:
      return "false";
    case Verdict::info:
      return "info";
  }
  return "?";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_point(const std::vector<double>& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ';';
    out += fmt("%.17g", p[i]);
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<CheckRow>& rows) {
  out << "check_id,function,point,defect_norm,tail_estimate,threshold,pass\n";
  for (const auto& r : rows) {
    out << csv_field(r.check_id) << ',' << csv_field(r.function) << ',' << join_point(r.point) << ','
        << fmt("%.9e", r.defect_norm) << ',' << fmt("%.9e", r.tail_estimate) << ',' << fmt("%.9e", r.threshold)
        << ',' << verdict_name(r.verdict) << '\n';
  }
}

void write_json(std::ostream& out, const SuiteResult& result) {
  nlohmann::ordered_json j;
  j["suite"] = result.suite;
  j["passed"] = result.passed();
  j["rows"] = nlohmann::json::array();
  for (const auto& r : result.rows) {
    nlohmann::ordered_json row;
    row["check_id"] = r.check_id;
    row["function"] = r.function;
    row["point"] = r.point;
    // Infinite values are not representable in JSON.
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    row["defect_norm"] = num(r.defect_norm);
    row["tail_estimate"] = num(r.tail_estimate);
    row["threshold"] = num(r.threshold);
    row["pass"] = verdict_name(r.verdict);
    j["rows"].push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- sampling

namespace {

PeriodLattice half_lattice(const PeriodLattice& l) {
  std::vector<Paravector<double>> w;
  for (const auto& o : l.half_periods()) w.push_back(0.5 * o);
  return PeriodLattice(l.signature(), std::move(w));
}

double uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

std::vector<double> coords(const Paravector<double>& x) {
  std::vector<double> out;
  for (int i = 0; i < x.dim(); ++i) out.push_back(x[i]);
  return out;
}

}  // namespace

std::vector<Paravector<double>> sample_points(const PeriodLattice& l, int count, std::uint64_t seed, double margin) {
  const PeriodLattice half = half_lattice(l);
  const double keep = margin * half.min_modulus();
  std::mt19937_64 gen(seed);
  std::vector<Paravector<double>> out;
  for (int attempts = 0; static_cast<int>(out.size()) < count; ++attempts) {
    if (attempts > 100000) throw std::runtime_error("sampling margin too large for this lattice");
    Paravector<double> x(l.m());
    for (int a = 0; a < l.rank(); ++a) x += (2.0 * uniform(gen) - 1.0) * l.half_period(a);
    if (half.distance_to_lattice(x) >= keep) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------- suites

namespace {

using P = Paravector<double>;
using Rows = std::vector<CheckRow>;
using Task = std::function<Rows()>;

Rows run_tasks(const std::vector<Task>& tasks) {
  std::vector<Rows> parts(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { parts[i] = tasks[i](); });
  Rows out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

CheckRow row(std::string id, std::string fn, const P& x, double defect, double tail, double threshold, bool ok) {
  return {std::move(id), std::move(fn), coords(x), defect, tail, threshold, ok ? Verdict::pass : Verdict::fail};
}

// Below-threshold check on the larger radius.
CheckRow abs_row(std::string id, std::string fn, const P& x, const SeriesValue<double>& v, double threshold) {
  const double d = norm_inf(v.value);
  return row(std::move(id), std::move(fn), x, d, v.tail_estimate, threshold, d <= threshold);
}

// Doubling the radius must shrink the defect by the configured ratio, unless
// both defects sit at the rounding floor.
CheckRow trend_row(std::string id, std::string fn, const P& x, const SeriesValue<double>& lo,
                   const SeriesValue<double>& hi, const VerifyConfig& c) {
  const double dl = norm_inf(lo.value), dh = norm_inf(hi.value);
  const double threshold = std::max(c.trend_ratio * dl, c.trend_floor);
  return row(std::move(id), std::move(fn), x, dh, hi.tail_estimate, threshold, dh <= threshold);
}

template <class F>
CheckRow trend(std::string id, std::string fn, const P& x, const VerifyConfig& c, F&& defect_at) {
  return trend_row(std::move(id), std::move(fn), x, defect_at(EvalConfig{c.radius_lo}),
                   defect_at(EvalConfig{c.radius_hi}), c);
}

void require_full_rank(const PeriodLattice& l, std::string_view suite) {
  if (!l.is_full_rank())
    throw std::invalid_argument(std::string(suite) + " suite needs 2m+2 half-periods");
}

std::string period_name(const TranslationWord::Shift& s) {
  std::string out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] == 0) continue;
    if (!out.empty()) out += "+";
    if (s[a] > 1) out += std::to_string(s[a]);
    out += "w" + std::to_string(a + 1);
  }
  return out;
}

TranslationWord::Shift unit_shift(int n, std::initializer_list<int> idx) {
  TranslationWord::Shift s(n, 0);
  for (int i : idx) ++s[i];
  return s;
}

P shift_vector(const PeriodLattice& l, const TranslationWord::Shift& s) {
  return shifted_point(P(l.m()), s, l.half_periods());
}

// Claimed periods: w_i + w_k and 2 w_k for C; w_i and 2 w_j (j != i) for S_i.
std::vector<TranslationWord::Shift> claimed_periods(JacobiId id, int n) {
  std::vector<TranslationWord::Shift> out;
  if (id.kind == JacobiKind::c) {
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) out.push_back(unit_shift(n, {i, k}));
    for (int k = 0; k < n; ++k) out.push_back(unit_shift(n, {k, k}));
  } else {
    out.push_back(unit_shift(n, {id.index}));
    for (int j = 0; j < n; ++j)
      if (j != id.index) out.push_back(unit_shift(n, {j, j}));
  }
  return out;
}

TranslationWord period_word(const TranslationWord::Shift& s) {
  TranslationWord w = -1LL * TranslationWord::identity();
  w.add(s, 1);
  return w;
}

std::vector<JacobiFunction> all_functions(const ZetaFunction& z) {
  std::vector<JacobiFunction> out;
  for (const auto& id : all_jacobi_kinds(z.lattice().rank())) out.push_back(JacobiFunction::build(id, z));
  return out;
}

// ---- oracle

Rows suite_oracle(const PeriodLattice& l, const VerifyConfig& c) {
  if (l.m() != 0 || l.rank() != 2) throw std::invalid_argument("oracle suite needs an m = 0 lattice");
  const auto pts = sample_points(l, c.oracle_samples, c.seed, c.sample_margin);
  const EvalConfig cfg{c.oracle_radius};
  std::vector<Task> tasks;
  for (const auto& x : pts) {
    tasks.push_back([&, x] {
      const CompareReport r = compare_m0(l, {x}, cfg);
      const auto& s = r.samples.front();
      return Rows{row("oracle", "zeta", x, s.difference, s.tail, c.oracle_tol, s.difference <= c.oracle_tol)};
    });
  }
  Rows out = run_tasks(tasks);
  // A lattice point is refused by both implementations.
  const P w = l.point(std::vector<int>{1, 0});
  const CompareReport r = compare_m0(l, {w}, cfg);
  out.push_back(row("oracle-shared-pole", "zeta", w, r.samples.front().pole ? 0.0 : 1.0, 0.0, 0.0,
                    r.samples.front().pole));
  return out;
}

// ---- relations

Rows suite_relations(const PeriodLattice& l, const VerifyConfig& c) {
  require_full_rank(l, "relations");
  const ZetaFunction z(l);
  const P origin(l.m());
  std::vector<Task> tasks;
  if (l.m() == 0) {
    const EvalConfig cfg{c.precise_radius};
    tasks.push_back([&, cfg] {
      return Rows{abs_row("vertex-sum", "zeta", origin, half_period_relation_defect(z, cfg), c.identity_tol)};
    });
  } else {
    tasks.push_back([&] {
      return Rows{trend("vertex-sum", "zeta", origin, c, [&](const EvalConfig& e) {
        return half_period_relation_defect(z, e);
      })};
    });
  }
  for (const auto& id : all_jacobi_kinds(l.rank())) {
    tasks.push_back([&, id] {
      const JacobiFunction f = JacobiFunction::build(id, z);
      const P d = P::unit(l.m(), 0);
      auto phi0 = [&](const EvalConfig& e) { return phi_taylor_coefficient(f, d, 0, e); };
      if (l.m() == 0)
        return Rows{abs_row("phi0", id.name(), origin, phi0(EvalConfig{c.precise_radius}), c.identity_tol)};
      return Rows{trend("phi0", id.name(), origin, c, phi0)};
    });
  }
  return run_tasks(tasks);
}

// ---- quasi-periodicity

Rows suite_quasi(const PeriodLattice& l, const VerifyConfig& c) {
  require_full_rank(l, "quasi");
  const ZetaFunction z(l);
  std::vector<Task> tasks;
  if (l.m() == 0) {
    const auto pts = sample_points(l, c.samples, c.seed, c.sample_margin);
    const EvalConfig cfg{c.precise_radius};
    std::vector<TranslationWord::Shift> shifts;
    for (int a = 0; a < l.rank(); ++a) shifts.push_back(unit_shift(l.rank(), {a}));
    shifts.push_back(unit_shift(l.rank(), {0, 1}));
    for (const auto& x : pts) {
      for (const auto& s : shifts) {
        tasks.push_back([&, x, s] {
          const P w = shift_vector(l, s);
          SeriesValue<double> d = z(x + w, cfg) - z(x - w, cfg);
          SeriesValue<double> k = z(w, cfg);
          k *= 2.0;
          d -= k;
          return Rows{abs_row("quasi:" + period_name(s), "zeta", x, d, c.identity_tol)};
        });
      }
    }
    return run_tasks(tasks);
  }
  const auto pts = sample_points(l, c.trend_samples, c.seed, c.sample_margin);
  for (const auto& x : pts) {
    for (int a = 0; a < l.rank(); ++a) {
      const std::string name = "w" + std::to_string(a + 1);
      tasks.push_back([&, x, a, name] {
        const P w = l.half_period(a);
        Rows out;
        out.push_back(trend("quasi:" + name, "zeta", x, c, [&](const EvalConfig& e) {
          return z(x + w, e) - z(x - w, e) - p2m_eval(z, x, a, e);
        }));
        out.push_back(trend("quasi-shifted:" + name, "zeta", x, c, [&](const EvalConfig& e) {
          return z(x + 2.0 * w, e) - z(x, e) - p2m_eval_shifted(z, x, a, e);
        }));
        return out;
      });
    }
  }
  return run_tasks(tasks);
}

// ---- oddness

Rows suite_oddness(const PeriodLattice& l, const VerifyConfig& c) {
  const ZetaFunction z(l);
  const auto pts = sample_points(l, c.samples, c.seed, c.sample_margin);
  const EvalConfig cfg{c.radius_hi};
  std::vector<std::pair<std::string, Evaluatable<double>>> fns;
  fns.push_back({"zeta", [&z](const P& x, const EvalConfig& e) { return z(x, e); }});
  if (l.is_full_rank())
    for (const auto& f : all_functions(z)) fns.push_back({f.id().name(), f.as_evaluatable()});
  std::vector<Task> tasks;
  for (const auto& x : pts) {
    tasks.push_back([&, x] {
      Rows out;
      for (const auto& [name, f] : fns) {
        const SeriesValue<double> a = f(x, cfg), b = f(-x, cfg);
        const SeriesValue<double> s = a + b;
        const double threshold = c.odd_tail_factor * s.tail_estimate;
        out.push_back(abs_row("odd", name, x, s, threshold));
      }
      return out;
    });
  }
  return run_tasks(tasks);
}

// ---- periodicity

Rows suite_periodicity(const PeriodLattice& l, const VerifyConfig& c) {
  require_full_rank(l, "periodicity");
  const ZetaFunction z(l);
  const auto pts = sample_points(l, c.trend_samples, c.seed, c.sample_margin);
  std::vector<Task> tasks;
  for (const auto& x : pts) {
    for (const auto& f : all_functions(z)) {
      for (const auto& s : claimed_periods(f.id(), l.rank())) {
        tasks.push_back([&, x, f, s] {
          const TranslationWord w = period_word(s);
          return Rows{trend("period:" + period_name(s), f.id().name(), x, c,
                            [&](const EvalConfig& e) { return f.apply_outer(w, x, e); })};
        });
      }
    }
  }
  return run_tasks(tasks);
}

// ---- zeros

Rows suite_zeros(const PeriodLattice& l, const VerifyConfig& c) {
  require_full_rank(l, "zeros");
  const ZetaFunction z(l);
  std::vector<Task> tasks;
  for (const auto& f : all_functions(z)) {
    for (const auto& p : zero_catalog(f.id(), l)) {
      tasks.push_back([&, f, p] {
        const SeriesValue<double> lo = f(p, EvalConfig{c.radius_lo});
        const SeriesValue<double> hi = f(p, EvalConfig{c.radius_hi});
        const double dl = norm_inf(lo.value), dh = norm_inf(hi.value);
        // Must fall below the tail multiple and keep decreasing.
        const double threshold = std::min(c.zero_tail_factor * hi.tail_estimate, std::max(dl, c.trend_floor));
        const bool ok = dh <= c.zero_tail_factor * hi.tail_estimate && (dh < dl || dh <= c.trend_floor);
        return Rows{row("zero", f.id().name(), p, dh, hi.tail_estimate, threshold, ok)};
      });
    }
  }
  return run_tasks(tasks);
}

// ---- residues

Rows suite_residues(const PeriodLattice& l, const VerifyConfig& c) {
  require_full_rank(l, "residues");
  const ZetaFunction z(l);
  const EvalConfig cfg{c.residue_radius};
  const double tol = l.m() == 0 ? c.residue_tol_m0 : c.residue_tol;
  const double sum_tol = l.m() == 0 ? c.residue_sum_tol_m0 : c.residue_sum_tol;
  const int n = l.rank();
  std::vector<Task> tasks;
  for (const auto& f : all_functions(z)) {
    for (unsigned j = 0; j < (1u << n); ++j) {
      tasks.push_back([&, f, j] {
        const P v = vertex(l, j);
        const int sign = residue_sign(f.id(), j);
        const auto est = estimate_residue(f.as_evaluatable(), v, cfg);
        const double d = norm_inf(est.limit - Multivector<double>::scalar(l.m(), sign));
        const std::string id = "residue:" + vertex_name(j) + ":sign=" + (sign > 0 ? "+1" : "-1");
        return Rows{row(id, f.id().name(), v, d, est.spread, tol, d <= tol && est.converged)};
      });
    }
    tasks.push_back([&, f] {
      const double s = residue_sum_determining(f, cfg);
      const double target = -2.0 * l.m();
      return Rows{row("residue-sum", f.id().name(), P(l.m()), std::abs(s - target), 0.0, sum_tol,
                      std::abs(s - target) <= sum_tol)};
    });
  }
  return run_tasks(tasks);
}

// ---- hidden periodicities

Rows suite_hidden(const PeriodLattice& l, const VerifyConfig& c) {
  if (l.m() != 1 || !l.is_full_rank()) throw std::invalid_argument("hidden suite needs an m = 1 lattice");
  const ZetaFunction z(l);
  const P x = sample_points(l, 1, c.seed, c.sample_margin).front();
  const auto defects = hidden_periodicity_defects(z, x, EvalConfig{c.radius_hi});
  Rows out;
  for (const auto& d : defects) {
    const double threshold = c.hidden_tail_factor * d.defect.tail_estimate;
    out.push_back(abs_row("hidden:" + d.relation.name, d.relation.function.name(), x, d.defect, threshold));
  }
  return out;
}

// ---- Laurent data

// Central-difference estimate of the n-th Taylor coefficient (n = 1 or 3) of
// an odd function g at 0, Richardson-extrapolated over halved steps.
Multivector<double> fd_taylor(const std::function<Multivector<double>(double)>& g, int n, double h0, int levels) {
  auto stencil = [&](double h) {
    if (n == 1) return (g(h) - g(-h)) * (1.0 / (2.0 * h));
    return (g(2 * h) - 2.0 * g(h) + 2.0 * g(-h) - g(-2 * h)) * (1.0 / (12.0 * h * h * h));
  };
  std::vector<Multivector<double>> t;
  for (int k = 0; k < levels; ++k) t.push_back(stencil(std::ldexp(h0, -k)));
  // Neville tableau in h^2.
  for (int j = 1; j < levels; ++j) {
    const double f = std::ldexp(1.0, 2 * j);
    for (int k = levels - 1; k >= j; --k) t[k] = (f * t[k] - t[k - 1]) * (1.0 / (f - 1.0));
  }
  return t.back();
}

// First odd power k >= from whose Laurent coefficient sum_w (w^-1 d)^k w^-1
// survives. Symmetric lattices can cancel a coefficient outright, e.g. the
// square lattice kills k = 5 at m = 0, and the remainder then falls faster.
int surviving_power(const PeriodLattice& l, const P& d, int from) {
  constexpr int radius = 8;
  for (int k = from; k < from + 8; k += 2) {
    Multivector<double> sum(l.m());
    double scale = 0.0;
    for (int r = 1; r <= radius; ++r) {
      for_each_shell_representative(l.rank(), r, [&](const int* idx) {
        const Multivector<double> t = lambda_power(inverse(l.point(std::span<const int>(idx, l.rank()))), d, k);
        sum += t;
        scale += norm_inf(t);
      });
    }
    if (norm_inf(sum) > 1e-9 * scale) return k;
  }
  return from;
}

Rows suite_laurent(const PeriodLattice& l, const VerifyConfig& c) {
  const ZetaFunction z(l);
  const P x0 = sample_points(l, 1, c.seed, c.sample_margin).front();
  const P d = (1.0 / modulus(x0)) * x0;
  std::vector<Task> tasks;
  tasks.push_back([&] {
    // Remainder after the first odd correction term, on a geometric sequence.
    const int predicted = surviving_power(l, d, z.leading_odd_power() + 2);
    std::vector<double> lx, ly;
    double tail = 0.0;
    // Three halvings keep the smallest remainder well above rounding.
    for (int k = 0; k < 3; ++k) {
      const double t = 0.1 * l.min_modulus() * std::ldexp(1.0, -k);
      // The remainder sinks toward the summation rounding floor quickly, which
      // grows with the number of terms, so the moderate radius is used.
      const SeriesValue<double> r = z.laurent_remainder(t * d, EvalConfig{c.radius_lo});
      lx.push_back(std::log(t));
      ly.push_back(std::log(norm_inf(r.value)));
      tail = std::max(tail, r.tail_estimate);
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    const double dev = std::abs(slope - predicted);
    return Rows{row("laurent-slope:" + std::to_string(predicted), "zeta", d, dev, tail, c.laurent_slope_tol,
                    dev <= c.laurent_slope_tol)};
  });
  if (l.is_full_rank()) {
    // At m >= 1 the sums carry more rounding, so wider steps and one more
    // extrapolation level balance it against truncation.
    const double h0 = (l.m() == 0 ? 0.04 : 0.16) * half_lattice(l).min_modulus();
    // At m >= 1 one kind keeps the finite-difference cost bounded.
    std::vector<JacobiId> kinds = l.m() == 0 ? all_jacobi_kinds(l.rank()) : std::vector<JacobiId>{JacobiId::C()};
    for (const auto& id : kinds) {
      for (int n : {1, 3}) {
        tasks.push_back([&, id, n] {
          const JacobiFunction f = JacobiFunction::build(id, z);
          const EvalConfig cfg{c.radius_lo};
          const SeriesValue<double> coef = phi_taylor_coefficient(f, d, n, cfg);
          auto g = [&](double t) { return (f(t * d, cfg) - z(t * d, cfg)).value; };
          const Multivector<double> fd = fd_taylor(g, n, h0, l.m() == 0 ? 3 : 4);
          const double diff = norm_inf(coef.value - fd);
          return Rows{row("taylor:n=" + std::to_string(n), id.name(), d, diff, 0.0, c.taylor_tol,
                          diff <= c.taylor_tol)};
        });
      }
    }
    tasks.push_back([&] {
      const JacobiFunction f = JacobiFunction::build(JacobiId::C(), z);
      bool rejected = false;
      try {
        phi_taylor_coefficient(f, d, 2, EvalConfig{c.radius_lo});
      } catch (const ImparityError&) {
        rejected = true;
      }
      return Rows{row("taylor-even-rejected", "C", d, rejected ? 0.0 : 1.0, 0.0, 0.0, rejected)};
    });
  }
  return run_tasks(tasks);
}

// ---- constructions

// x and alpha with x +- alpha (and x +- i alpha) well clear of the lattice.
std::pair<P, P> construction_points(const PeriodLattice& l, const VerifyConfig& c) {
  const auto pts = sample_points(l, 16, c.seed, c.sample_margin);
  const PeriodLattice half = half_lattice(l);
  const double keep = c.sample_margin * half.min_modulus();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const P a = 0.5 * pts[j];
      if (half.distance_to_lattice(a) < keep) continue;
      if (half.distance_to_lattice(pts[i] - a) < keep || half.distance_to_lattice(pts[i] + a) < keep) continue;
      return {pts[i], a};
    }
  }
  throw std::runtime_error("no admissible construction points");
}

Rows suite_constructions(const PeriodLattice& l, const VerifyConfig& c) {
  require_full_rank(l, "constructions");
  const ZetaFunction z(l);
  const auto [x, alpha] = construction_points(l, c);
  const double k = 1.5;
  const int n = l.rank();
  std::vector<Task> tasks;
  if (l.m() == 0) {
    const Evaluatable<double> phi = construct_two_pole_m0(z, alpha, k);
    for (int a = 0; a < n; ++a) {
      tasks.push_back([&, phi, a] {
        const EvalConfig cfg{c.two_pole_radius};
        const P w = 2.0 * l.half_period(a);
        return Rows{abs_row("two-pole:2w" + std::to_string(a + 1), "phi", x, phi(x + w, cfg) - phi(x, cfg),
                            c.two_pole_tol)};
      });
    }
    for (double s : {1.0, -1.0}) {
      tasks.push_back([&, phi, s] {
        const auto est = estimate_residue(phi, s * alpha, EvalConfig{c.residue_radius});
        const double d = norm_inf(est.limit - Multivector<double>::scalar(0, s * k));
        return Rows{row(s > 0 ? "two-pole-residue:+alpha" : "two-pole-residue:-alpha", "phi", s * alpha, d,
                        est.spread, c.residue_tol_m0, d <= c.residue_tol_m0 && est.converged)};
      });
    }
    tasks.push_back([&] {
      const SeriesValue<double> v = construct_two_pole_m0(z, P(0), k)(x, EvalConfig{c.radius_lo});
      return Rows{abs_row("two-pole-alpha0", "phi", x, v, 0.0)};
    });
    return run_tasks(tasks);
  }

  // Complexified two-pole function.
  const ZetaFunction zc(l.with_scalar_field(ScalarField::complex));
  const auto phic = construct_complexified_two_pole(zc, alpha, k);
  auto cnorm = [](const SeriesValue<std::complex<double>>& v) {
    SeriesValue<double> r{Multivector<double>(v.value.m()), v.radius_used, v.tail_estimate};
    double mx = 0.0;
    for (unsigned b = 0; b < (1u << (2 * v.value.m() + 1)); ++b) mx = std::max(mx, std::abs(v.value[b]));
    r.value[0] = mx;
    return r;
  };
  for (int a = 0; a < n; ++a) {
    tasks.push_back([&, a] {
      const P w = 2.0 * l.half_period(a);
      return Rows{trend("complexified:2w" + std::to_string(a + 1), "phi", x, c,
                        [&](const EvalConfig& e) { return cnorm(phic(x + w, e) - phic(x, e)); })};
    });
  }
  tasks.push_back([&] {
    const auto est = estimate_residue(phic, alpha, EvalConfig{c.residue_radius});
    const auto target = Multivector<std::complex<double>>::scalar(l.m(), k);
    const double d = norm_inf(est.limit - target);
    return Rows{row("complexified-residue:alpha", "phi", alpha, d, est.spread, c.residue_tol,
                    d <= c.residue_tol && est.converged)};
  });
  tasks.push_back([&] {
    const auto v = construct_complexified_two_pole(zc, alpha, 0.0)(x, EvalConfig{c.radius_lo});
    return Rows{abs_row("complexified-k0", "phi", x, cnorm(v), 0.0)};
  });

  // Third difference and its half-period reductions.
  const P beta = 0.37 * alpha;
  const Evaluatable<double> td = construct_third_difference(z, beta);
  std::vector<int> plus1{0}, plus_rest;
  for (int j = 1; j < n; ++j) plus_rest.push_back(j);
  const Evaluatable<double> eta = half_period_reduce(td, plus1, l);
  const Evaluatable<double> theta = half_period_reduce(td, plus_rest, l);
  for (int a = 0; a < n; ++a) {
    const P w2 = 2.0 * l.half_period(a), w1 = l.half_period(a);
    const std::string s2 = "2w" + std::to_string(a + 1), s1 = "w" + std::to_string(a + 1);
    tasks.push_back([&, w2, s2] {
      return Rows{trend("third-difference:" + s2, "phi", x, c,
                        [&](const EvalConfig& e) { return td(x + w2, e) - td(x, e); })};
    });
    const P we = a == 0 ? w1 : w2;
    tasks.push_back([&, we, s = a == 0 ? s1 : s2] {
      return Rows{trend("eta:" + s, "eta", x, c, [&](const EvalConfig& e) { return eta(x + we, e) - eta(x, e); })};
    });
    const P wt = a == 0 ? w2 : w1;
    tasks.push_back([&, wt, s = a == 0 ? s2 : s1] {
      return Rows{
          trend("theta:" + s, "theta", x, c, [&](const EvalConfig& e) { return theta(x + wt, e) - theta(x, e); })};
    });
  }
  tasks.push_back([&] {
    const SeriesValue<double> v = construct_third_difference(z, P(l.m()))(x, EvalConfig{c.radius_lo});
    // Cancels up to rounding.
    return Rows{abs_row("third-difference-beta0", "phi", x, v, c.identity_tol)};
  });
  return run_tasks(tasks);
}

// ---- PDE

Rows suite_pde(const PeriodLattice& l, const VerifyConfig& c) {
  const ZetaFunction z(l);
  const auto pts = sample_points(l, c.pde_samples, c.seed, c.pde_margin);
  const double h = l.m() == 0 ? c.pde_step_m0 : c.pde_step;
  const double tol = l.m() == 0 ? c.pde_tol_m0 : c.pde_tol;
  std::vector<Task> tasks;
  for (const auto& x : pts) {
    tasks.push_back([&, x] {
      const EvalConfig cfg{c.pde_radius};
      const RealFunction f = [&](const P& p) { return z(p, cfg).value; };
      const HolomorphicCheck hc = check_holomorphic_cliffordian(f, x, h, l.distance_to_lattice(x));
      return Rows{row("pde", "zeta", x, hc.relative, 0.0, tol, hc.relative <= tol && hc.step_ok)};
    });
  }
  return run_tasks(tasks);
}

// ---- negative test

Rows suite_negative(const PeriodLattice& l, const VerifyConfig& c) {
  if (l.m() != 1 || !l.is_full_rank()) throw std::invalid_argument("negative suite needs an m = 1 lattice");
  const ZetaFunction z(l);
  const P x = sample_points(l, 1, c.seed, c.sample_margin).front();
  const TranslationWord f = expand(parse_operator_expr("(1+E1)(1+E2)(1-E3)(1-E4)"));
  Rows out;
  for (const auto& s : {unit_shift(4, {0}), unit_shift(4, {0, 0})}) {
    const SeriesValue<double> d = apply_to_zeta(period_word(s) * f, z, x, EvalConfig{c.radius_hi});
    const double dn = norm_inf(d.value), threshold = c.negative_factor * d.tail_estimate;
    // Inverted comparison: the defect must stand clear of the truncation tail.
    out.push_back(row("nonperiodic:" + period_name(s), "(I+E1)(I+E2)(I-E3)(I-E4)zeta", x, dn, d.tail_estimate,
                      threshold, dn >= threshold));
  }
  return out;
}

// ---- exact operator algebra

using Q = Rational;
using PQ = Paravector<Q>;

std::vector<std::vector<PQ>> generator_sets() {
  std::vector<PQ> unit, skew;
  for (int i = 0; i < 4; ++i) unit.push_back(PQ::unit(1, i));
  skew.push_back(PQ(1, {Q(1), Q(1, 10), Q(0), Q(1, 20)}));
  skew.push_back(PQ(1, {Q(3, 20), Q(1), Q(1, 10), Q(0)}));
  skew.push_back(PQ(1, {Q(0), Q(1, 5), Q(9, 10), Q(1, 10)}));
  skew.push_back(PQ(1, {Q(1, 10), Q(0), Q(3, 20), Q(11, 10)}));
  return {unit, skew};
}

// Degree-n test polynomial: sum over d <= n of (lambda_d x)^d lambda_d with
// seeded small-integer lambdas.
CliffordPolynomial test_polynomial(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed * 1000003u + static_cast<std::uint64_t>(n));
  std::vector<LambdaMonomial> ms;
  for (int d = 0; d <= n; ++d) {
    PQ lam(1);
    do {
      for (int a = 0; a < 4; ++a) lam[a] = Q(static_cast<long long>(gen() % 5) - 2);
    } while (lam.is_zero());
    ms.push_back({(gen() & 1u) ? 1 : -1, lam, d});
  }
  return build_polynomial(1, ms);
}

Rows suite_operators(const VerifyConfig& c) {
  const P none(0);
  auto exact = [&](std::string id, bool ok, double defect = -1.0) {
    return row(std::move(id), "operators", none, defect < 0 ? (ok ? 0.0 : 1.0) : defect, 0.0, 0.0, ok);
  };
  const TranslationWord I = TranslationWord::identity();
  auto E = [](int j, int p = 1) { return TranslationWord::shift(j, p); };
  Rows out;
  for (int j = 0; j < 4; ++j) {
    const std::string s = std::to_string(j + 1);
    out.push_back(exact("factorization:(1-E" + s + ")(1+E" + s + ")",
                        expand(parse_operator_expr("(1-E" + s + ")(1+E" + s + ")")) == I - E(j, 2)));
  }
  out.push_back(exact("combination:(1-E1)(1+E2)+(1+E1)-(1+E2)",
                      expand(parse_operator_sum("(1-E1)(1+E2)+(1+E1)-(1+E2)")) == I - E(0) * E(1)));
  {
    OperatorExpr e{{{FactorKind::i_plus_e, 0}, {FactorKind::i_minus_e, 1}, {FactorKind::i_minus_e_sq, 2},
                    {FactorKind::e, 3}, {FactorKind::i_minus_e, 0}}};
    const TranslationWord ref = expand(e);
    bool ok = true;
    std::vector<int> perm(e.factors.size());
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
      OperatorExpr q;
      for (int i : perm) q.factors.push_back(e.factors[i]);
      ok = ok && expand(q) == ref;
    }
    out.push_back(exact("commutativity", ok));
  }
  for (int m = 0; m <= 2; ++m) {
    const int n = 2 * m + 2;
    for (const auto& id : all_jacobi_kinds(n)) {
      const TranslationWord w = expand(definition_expr(id, n));
      int pos = 0, neg = 0;
      for (const auto& t : w.terms()) (t.coefficient > 0 ? pos : neg)++;
      out.push_back(exact("jacobi-word:m=" + std::to_string(m),
                          w == closed_form_word(id, n) && pos == neg && pos + neg == (1 << n)));
      out.back().function = id.name();
    }
  }
  const auto gensets = generator_sets();
  for (std::size_t g = 0; g < gensets.size(); ++g) {
    const std::string gname = g == 0 ? "unit" : "skew";
    const auto& gens = gensets[g];
    for (int n = 0; n <= 4; ++n) {
      const CliffordPolynomial p = test_polynomial(n, c.seed);
      bool reduced = p.degree() == n;
      for (int j = 0; j < 4; ++j) reduced = reduced && degree_reduction_check(j, p, gens).reduced;
      out.push_back(exact("degree-reduction:n=" + std::to_string(n) + ":" + gname, reduced));
      int failures = 0;
      for (const auto& ms : multisets(4, n + 1))
        if (!apply(difference_word(ms), p, gens).is_zero()) ++failures;
      out.push_back(exact("annihilation:n=" + std::to_string(n) + ":" + gname, failures == 0, failures));
    }
    for (int n = 1; n <= 3; ++n) {
      int missing = 0;
      for (const auto& ms : multisets(4, n))
        if (!sharpness_witness(1, ms, n, gens)) ++missing;
      out.push_back(exact("sharpness:n=" + std::to_string(n) + ":" + gname, missing == 0, missing));
    }
  }
  {
    // (I - E_h)^3 kills every degree-2 polynomial for a single formal period h.
    const std::vector<PQ> h{PQ(1, {Q(2, 3), Q(-1), Q(1, 2), Q(3)})};
    const OperatorExpr cube{{{FactorKind::i_minus_e, 0}, {FactorKind::i_minus_e, 0}, {FactorKind::i_minus_e, 0}}};
    const TranslationWord w = expand(cube);
    const bool ok = w == I - 3LL * E(0) + 3LL * E(0, 2) - E(0, 3) && apply(w, test_polynomial(2, c.seed), h).is_zero();
    out.push_back(exact("third-difference-identity", ok));
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"oracle", "relations", "quasi",     "oddness", "periodicity", "zeros",    "residues",
          "hidden", "laurent",   "constructions", "pde", "negative",    "operators"};
}

SuiteResult run_suite(std::string_view name, const PeriodLattice& l, const VerifyConfig& cfg) {
  check_config(cfg);
  SuiteResult r;
  r.suite = std::string(name);
  if (name == "oracle") r.rows = suite_oracle(l, cfg);
  else if (name == "relations") r.rows = suite_relations(l, cfg);
  else if (name == "quasi") r.rows = suite_quasi(l, cfg);
  else if (name == "oddness") r.rows = suite_oddness(l, cfg);
  else if (name == "periodicity") r.rows = suite_periodicity(l, cfg);
  else if (name == "zeros") r.rows = suite_zeros(l, cfg);
  else if (name == "residues") r.rows = suite_residues(l, cfg);
  else if (name == "hidden") r.rows = suite_hidden(l, cfg);
  else if (name == "laurent") r.rows = suite_laurent(l, cfg);
  else if (name == "constructions") r.rows = suite_constructions(l, cfg);
  else if (name == "pde") r.rows = suite_pde(l, cfg);
  else if (name == "negative") r.rows = suite_negative(l, cfg);
  else if (name == "operators") r.rows = suite_operators(cfg);
  else throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  return r;
}

}  // namespace cliffell
