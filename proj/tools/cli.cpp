#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliffell/jacobi.hpp"
#include "cliffell/lattice_io.hpp"
#include "cliffell/operators.hpp"
#include "cliffell/parallel.hpp"
#include "cliffell/verify.hpp"
#include "cliffell/zeta.hpp"

namespace cliffell::cli {

namespace {

constexpr const char* kOutDirEnv = "CLIFFELL_OUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Paravector<double> parse_point(const PeriodLattice& l, const std::vector<double>& at) {
  const int dim = l.signature().paravector_dim();
  Paravector<double> x(l.m());
  if (at.size() == 1) {
    x[0] = at[0];  // a lone number is a scalar paravector
    return x;
  }
  if (static_cast<int>(at.size()) != dim)
    throw UsageError("--at needs " + std::to_string(dim) + " reals (or one scalar), got " + std::to_string(at.size()));
  for (int i = 0; i < dim; ++i) x[i] = at[i];
  return x;
}

nlohmann::ordered_json coefficients_json(const Multivector<double>& v) {
  nlohmann::ordered_json j;
  for (unsigned b = 0; b < (1u << (2 * v.m() + 1)); ++b)
    if (v[b] != 0.0) j[blade_name(b)] = v[b];
  return j;
}

std::filesystem::path output_path(const std::string& explicit_path, const std::string& suite, const std::string& ext) {
  if (!explicit_path.empty()) return explicit_path;
  const char* dir = std::getenv(kOutDirEnv);
  std::filesystem::path base = (dir && *dir) ? std::filesystem::path(dir) : std::filesystem::current_path();
  std::filesystem::create_directories(base);
  return base / (suite + "." + ext);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptic Cliffordian functions: evaluation and verification"};
  app.require_subcommand(1);

  std::string lattice_name = "m1-unit";
  int threads = 0;
  app.add_option("--lattice,-l", lattice_name, "bundled lattice name or path to a lattice JSON file")
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads (default: CLIFFELL_THREADS or hardware)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate zeta, C or S<i> at a point");
  std::string fn = "zeta";
  std::vector<double> at;
  int radius = 24;
  double tol = 0.0;
  std::string eval_format = "text";
  eval->add_option("--fn", fn, "zeta, C or S<i>")->capture_default_str();
  eval->add_option("--at", at, "2m+2 paravector coordinates")->required()->allow_extra_args(false)->expected(1, 6);
  eval->add_option("--radius", radius, "maximal shell radius")->capture_default_str()->check(CLI::PositiveNumber);
  eval->add_option("--tol", tol, "stop once the tail estimate drops below this")->check(CLI::NonNegativeNumber);
  eval->add_option("--format", eval_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite and write its report");
  std::string suite;
  std::string out_path, format = "csv", config_path;
  std::vector<std::string> settings;
  std::uint64_t seed = 0;
  bool seed_given = false;
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--out,-o", out_path, std::string("report path (default: $") + kOutDirEnv + "/<suite>.<ext>)");
  verify->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  verify->add_option("--config", config_path, "JSON file with settings and thresholds");
  verify->add_option("--set", settings, "override a setting, key=value (repeatable)");
  verify->add_option("--seed", seed, "seed for sample points")->each([&](const std::string&) { seed_given = true; });

  // operators
  auto* ops = app.add_subcommand("operators", "translation operator algebra");
  ops->require_subcommand(1);
  auto* expand_cmd = ops->add_subcommand("expand", "print the canonical translation word");
  std::string expr;
  expand_cmd->add_option("expr", expr, "e.g. \"(1-E1)(1+E2)\"")->required();

  // lemma
  auto* lemma = app.add_subcommand("lemma", "check the alternating subset-sum identity");
  int lemma_n = 0;
  lemma->add_option("--n", lemma_n, "number of symbols, 2..10")->required()->check(CLI::Range(2, 10));

  // config
  auto* config_cmd = app.add_subcommand("config", "print the default settings as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (threads > 0) set_worker_threads(threads);

    if (*config_cmd) {
      out << config_to_json(VerifyConfig{}) << "\n";
      return 0;
    }

    if (*ops) {
      out << expand(parse_operator_sum(expr)).to_string() << "\n";
      return 0;
    }

    if (*lemma) {
      const LemmaReport r = alternating_subset_sum_report(lemma_n);
      out << "n=" << lemma_n << " subset sums " << (r.subset_sums_ok ? "ok" : "FAILED") << ", alternating sum "
          << (r.alternating_ok ? "zero" : "NONZERO") << "\n";
      return r.subset_sums_ok && r.alternating_ok ? 0 : 1;
    }

    PeriodLattice lattice = resolve_lattice(lattice_name);

    if (*eval) {
      const Paravector<double> x = parse_point(lattice, at);
      EvalConfig cfg{radius, tol};
      ZetaFunction z(lattice);
      SeriesValue<double> v;
      try {
        if (fn == "zeta") {
          v = z(x, cfg);
        } else {
          JacobiId id;
          try {
            id = JacobiId::parse(fn);
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
          v = JacobiFunction::build(id, z)(x, cfg);
        }
      } catch (const PoleError& e) {
        err << "pole error: " << e.what() << "\n";
        return 1;
      }
      if (eval_format == "json") {
        nlohmann::ordered_json j;
        j["function"] = fn;
        j["value"] = coefficients_json(v.value);
        j["radius_used"] = v.radius_used;
        j["tail_estimate"] = v.tail_estimate;
        out << j.dump(2) << "\n";
      } else {
        out << fn << " = " << to_string(v.value) << "\n";
        for (unsigned b = 0; b < (1u << (2 * v.value.m() + 1)); ++b)
          out << "  " << blade_name(b) << " " << to_string(Multivector<double>::scalar(0, v.value[b])) << "\n";
        out << "radius_used " << v.radius_used << "\n";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6e", v.tail_estimate);
        out << "tail_estimate " << buf << "\n";
      }
      return 0;
    }

    if (*verify) {
      VerifyConfig cfg;
      if (!config_path.empty()) cfg = load_config(config_path, cfg);
      for (const auto& s : settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
        set_config_value(cfg, s.substr(0, eq), s.substr(eq + 1));
      }
      if (seed_given) cfg.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      const SuiteResult r = run_suite(suite, lattice, cfg);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto path = output_path(out_path, suite, format);
      {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
        if (format == "csv")
          write_csv(f, r.rows);
        else
          write_json(f, r);
      }
      std::size_t info = 0;
      for (const auto& row : r.rows) info += row.verdict == Verdict::info;
      out << suite << ": " << r.rows.size() << " checks, " << r.failures() << " failed";
      if (info) out << ", " << info << " informational";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1f", secs);
      out << " (" << buf << " s) -> " << path.string() << "\n";
      return r.passed() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const LatticeError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cliffell::cli
