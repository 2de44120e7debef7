#pragma once

// Verification suites shared by the command-line tool and the acceptance
// runner. Every suite returns rows in a fixed order, so identical settings
// give byte-identical reports.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cliffell/lattice.hpp"

namespace cliffell {

// Numeric settings and thresholds. Defaults follow the acceptance targets.
struct VerifyConfig {
  std::uint64_t seed = 1;

  // Truncation radii.
  int radius_lo = 12;         // trend tests compare radius_lo against radius_hi
  int radius_hi = 24;
  int precise_radius = 5000;  // absolute m = 0 identities
  int two_pole_radius = 8000;
  int oracle_radius = 60;
  int residue_radius = 8;     // residues of the truncated sum are exact
  int pde_radius = 8;         // every summand solves the PDE on its own

  // Sample counts.
  int samples = 10;
  int oracle_samples = 20;
  int pde_samples = 5;
  int trend_samples = 1;

  // Sampling keeps this fraction of the smallest half-lattice modulus away
  // from every pole vertex.
  double sample_margin = 0.2;
  double pde_margin = 0.3;

  double oracle_tol = 1e-8;
  double identity_tol = 1e-8;
  double two_pole_tol = 1e-8;
  double residue_tol_m0 = 1e-4;
  double residue_tol = 5e-2;
  double residue_sum_tol_m0 = 1e-3;
  double residue_sum_tol = 5e-2;
  double odd_tail_factor = 2.0;
  double trend_ratio = 0.35;
  double trend_floor = 1e-11;  // defects below this count as converged
  double zero_tail_factor = 10.0;
  double hidden_tail_factor = 10.0;
  double pde_tol_m0 = 1e-6;
  double pde_tol = 1e-3;
  double pde_step_m0 = 1e-4;
  double pde_step = 2.5e-3;
  double negative_factor = 100.0;
  double taylor_tol = 1e-6;
  double laurent_slope_tol = 0.3;
};

// Keys are the member names above.
std::vector<std::string> config_keys();
void set_config_value(VerifyConfig& cfg, std::string_view key, std::string_view value);
// Reads a JSON object whose keys are a subset of config_keys().
VerifyConfig parse_config(std::string_view json_text, VerifyConfig base = {});
VerifyConfig load_config(const std::string& path, VerifyConfig base = {});
std::string config_to_json(const VerifyConfig& cfg);

enum class Verdict { pass, fail, info };

struct CheckRow {
  std::string check_id;
  std::string function;
  std::vector<double> point;
  double defect_norm = 0.0;
  double tail_estimate = 0.0;
  double threshold = 0.0;
  Verdict verdict = Verdict::pass;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRow> rows;

  // True when no row failed.
  bool passed() const;
  std::size_t failures() const;
};

// Seeded points x = sum_a c_a w_a with c_a uniform in [-1, 1), rejecting any
// within margin * (smallest nonzero |sum_a k_a w_a|) of the half-lattice.
std::vector<Paravector<double>> sample_points(const PeriodLattice& l, int count, std::uint64_t seed, double margin);

std::vector<std::string> suite_names();
// Throws std::invalid_argument for unknown names or lattices the suite does
// not apply to.
SuiteResult run_suite(std::string_view name, const PeriodLattice& l, const VerifyConfig& cfg);

// check_id,function,point,defect_norm,tail_estimate,threshold,pass
void write_csv(std::ostream& out, const std::vector<CheckRow>& rows);
void write_json(std::ostream& out, const SuiteResult& result);

}  // namespace cliffell
