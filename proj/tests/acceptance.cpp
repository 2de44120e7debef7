// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Suite reports are written as CSV when CLIFFELL_OUT_DIR is
// set.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cliffell/jacobi.hpp"
#include "cliffell/lattice.hpp"
#include "cliffell/verify.hpp"

using namespace cliffell;

namespace {

using Clock = std::chrono::steady_clock;

struct Timed {
  SuiteResult result;
  double seconds = 0.0;
};

const VerifyConfig kConfig{};

Timed run(const std::string& suite, const std::string& lattice) {
  const PeriodLattice l = bundled_lattice(lattice);
  const auto t0 = Clock::now();
  Timed t{run_suite(suite, l, kConfig), 0.0};
  t.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (const char* dir = std::getenv("CLIFFELL_OUT_DIR"); dir && *dir) {
    std::filesystem::create_directories(dir);
    std::ofstream f(std::filesystem::path(dir) / (lattice + "-" + suite + ".csv"), std::ios::binary);
    write_csv(f, t.result.rows);
  }
  std::fprintf(stderr, "  [%s on %s: %zu rows, %zu failed, %.1f s]\n", suite.c_str(), lattice.c_str(),
               t.result.rows.size(), t.result.failures(), t.seconds);
  return t;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

struct Tally {
  std::size_t rows = 0, failed = 0;
  double worst = 0.0;  // largest defect / threshold
  std::set<std::string> failing;

  void add(const CheckRow& r) {
    if (r.verdict == Verdict::info) return;
    ++rows;
    if (r.threshold > 0) worst = std::max(worst, r.defect_norm / r.threshold);
    if (r.verdict == Verdict::fail) {
      ++failed;
      failing.insert(r.function + " " + r.check_id.substr(0, r.check_id.find(':')));
    }
  }
  void add(const SuiteResult& s, const std::function<bool(const CheckRow&)>& keep = {}) {
    for (const auto& r : s.rows)
      if (!keep || keep(r)) add(r);
  }
  bool ok() const { return rows > 0 && failed == 0; }
  std::string summary() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu/%zu checks within threshold, worst defect/threshold %.3g", rows - failed, rows,
                  worst);
    std::string s = buf;
    if (!failing.empty()) {
      s += "; failing:";
      for (const auto& f : failing) s += " [" + f + "]";
    }
    return s;
  }
};

int g_failed = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  g_failed += !ok;
}

// Residue signs as printed in the m = 0 table.
const std::map<std::string, std::map<std::string, int>> kResidueTable = {
    {"C", {{"0", +1}, {"w1", -1}, {"w2", -1}, {"w1+w2", +1}}},
    {"S1", {{"0", +1}, {"w1", +1}, {"w2", -1}, {"w1+w2", -1}}},
    {"S2", {{"0", +1}, {"w1", -1}, {"w2", +1}, {"w1+w2", -1}}},
};

}  // namespace

int main() {
  const auto t_all = Clock::now();
  const std::string m0 = "m0-square", m1 = "m1-unit", m1s = "m1-skew";

  {
    const Timed t = run("oracle", m0);
    Tally tl;
    tl.add(t.result);
    char buf[64];
    std::snprintf(buf, sizeof buf, ", runtime %.3f s", t.seconds);
    report(1, tl.ok() && t.seconds < 1.0, tl.summary() + buf);
  }

  const Timed rel0 = run("relations", m0);
  {
    Tally tl;
    tl.add(rel0.result, [](const CheckRow& r) { return r.check_id == "vertex-sum"; });
    report(2, tl.ok(), tl.summary());
  }

  {
    Tally tl;
    tl.add(run("quasi", m0).result);
    report(3, tl.ok(), tl.summary());
  }

  const Timed res0 = run("residues", m0);
  {
    Tally tl;
    bool table_ok = true;
    int seen = 0;
    for (const auto& r : res0.result.rows) {
      if (!starts_with(r.check_id, "residue:")) continue;
      // residue:<vertex>:sign=<s>
      const auto a = r.check_id.find(':'), b = r.check_id.rfind(":sign=");
      const std::string vertex = r.check_id.substr(a + 1, b - a - 1);
      const int sign = std::stoi(r.check_id.substr(b + 6));
      table_ok = table_ok && kResidueTable.at(r.function).at(vertex) == sign;
      ++seen;
      tl.add(r);
    }
    table_ok = table_ok && seen == 12;
    report(4, tl.ok() && table_ok, tl.summary() + (table_ok ? ", signs match the table" : ", SIGN MISMATCH"));
  }

  {
    Tally tl;
    tl.add(run("operators", m0).result);
    report(5, tl.ok(), tl.summary());
  }

  {
    bool ok = true;
    for (int n = 2; n <= 8; ++n) {
      const LemmaReport r = alternating_subset_sum_report(n);
      ok = ok && r.subset_sums_ok && r.alternating_ok;
    }
    report(6, ok, "subset sums and alternating sums exact for n = 2..8");
  }

  {
    Tally tl;
    tl.add(run("oddness", m0).result);
    tl.add(run("oddness", m1).result);
    report(7, tl.ok(), tl.summary());
  }

  {
    const Timed t = run("quasi", m1);
    Tally tl;
    tl.add(t.result);
    const double per_alpha = t.seconds / bundled_lattice(m1).rank();
    char buf[64];
    std::snprintf(buf, sizeof buf, ", %.1f s per half-period", per_alpha);
    report(8, tl.ok() && per_alpha <= 120.0, tl.summary() + buf);
  }

  {
    Tally tl;
    tl.add(run("periodicity", m1).result);
    report(9, tl.ok(), tl.summary());
  }

  {
    Tally tl;
    tl.add(run("zeros", m1).result);
    report(10, tl.ok(), tl.summary());
  }

  {
    Tally tl;
    tl.add(run("hidden", m1).result);
    report(11, tl.ok(), tl.summary());
  }

  const Timed res1 = run("residues", m1);
  {
    Tally tl;
    auto sums = [](const CheckRow& r) { return r.check_id == "residue-sum"; };
    tl.add(res0.result, sums);
    tl.add(res1.result, sums);
    report(12, tl.ok(), tl.summary());
  }

  {
    Tally tl;
    tl.add(run("constructions", m0).result);
    tl.add(run("constructions", m1).result);
    report(13, tl.ok(), tl.summary());
  }

  {
    Tally tl;
    tl.add(run("pde", m0).result);
    tl.add(run("pde", m1).result);
    report(14, tl.ok(), tl.summary());
  }

  {
    // Passing here means the defect is large, so report defect/tail.
    const Timed t = run("negative", m1s);
    bool ok = !t.result.rows.empty();
    double least = std::numeric_limits<double>::infinity();
    for (const auto& r : t.result.rows) {
      ok = ok && r.verdict == Verdict::pass;
      least = std::min(least, r.defect_norm / r.tail_estimate);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu period checks on %s, smallest defect/tail %.3g (needs >= %g)",
                  t.result.rows.size(), m1s.c_str(), least, kConfig.negative_factor);
    report(15, ok, buf);
  }

  {
    Tally tl;
    auto phi = [](const CheckRow& r) {
      return r.check_id == "vertex-sum" || (r.check_id == "phi0" && r.function == "C");
    };
    tl.add(rel0.result, phi);
    tl.add(run("relations", m1).result, phi);
    tl.add(run("laurent", m0).result);
    report(16, tl.ok(), tl.summary());
  }

  const double total = std::chrono::duration<double>(Clock::now() - t_all).count();
  std::printf("total wall-clock %.1f s, %d criteria failed\n", total, g_failed);
  return g_failed == 0 ? 0 : 1;
}
