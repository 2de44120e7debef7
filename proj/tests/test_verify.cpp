#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cliffell/verify.hpp"

using namespace cliffell;

TEST_CASE("configuration keys round-trip") {
  VerifyConfig c;
  set_config_value(c, "radius_hi", "30");
  set_config_value(c, "trend_ratio", "0.4");
  set_config_value(c, "seed", "99");
  CHECK(c.radius_hi == 30);
  CHECK(c.trend_ratio == 0.4);
  CHECK(c.seed == 99);
  CHECK_THROWS(set_config_value(c, "no_such_key", "1"));
  CHECK_THROWS(set_config_value(c, "radius_hi", "abc"));
  CHECK_THROWS(set_config_value(c, "radius_hi", "12x"));

  const VerifyConfig back = parse_config(config_to_json(c));
  CHECK(back.radius_hi == 30);
  CHECK(back.trend_ratio == 0.4);
  CHECK(back.seed == 99);
  CHECK(config_keys().size() == nlohmann::json::parse(config_to_json(c)).size());
  CHECK_THROWS(parse_config(R"({"bogus": 1})"));
  CHECK_THROWS(parse_config("[1, 2]"));
}

TEST_CASE("sample points are deterministic and avoid the half-lattice") {
  const PeriodLattice l = bundled_lattice("m1-skew");
  const auto a = sample_points(l, 10, 5, 0.2), b = sample_points(l, 10, 5, 0.2), c = sample_points(l, 10, 6, 0.2);
  REQUIRE(a.size() == 10);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  std::vector<Paravector<double>> halves(l.half_periods().begin(), l.half_periods().end());
  for (auto& h : halves) h *= 0.5;
  const PeriodLattice half(l.signature(), halves);
  for (const auto& x : a) CHECK(half.distance_to_lattice(x) >= 0.2 * half.min_modulus());
}

TEST_CASE("CSV layout and determinism") {
  const PeriodLattice l = bundled_lattice("m0-square");
  const VerifyConfig cfg;
  const SuiteResult r1 = run_suite("residues", l, cfg), r2 = run_suite("residues", l, cfg);
  std::ostringstream a, b;
  write_csv(a, r1.rows);
  write_csv(b, r2.rows);
  CHECK(a.str() == b.str());
  const std::string text = a.str();
  CHECK(text.rfind("check_id,function,point,defect_norm,tail_estimate,threshold,pass\n", 0) == 0);
  CHECK(text.find("residue:w1:sign=-1,C,") != std::string::npos);
  CHECK(text.find("residue:w1:sign=+1,S1,") != std::string::npos);
  CHECK(r1.passed());

  std::ostringstream j;
  write_json(j, r1);
  const auto doc = nlohmann::json::parse(j.str());
  CHECK(doc["suite"] == "residues");
  CHECK(doc["rows"].size() == r1.rows.size());
}

TEST_CASE("suite dispatch") {
  const PeriodLattice m0 = bundled_lattice("m0-square");
  CHECK_THROWS_AS(run_suite("nope", m0, {}), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("hidden", m0, {}), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("negative", m0, {}), std::invalid_argument);
  const auto names = suite_names();
  CHECK(std::find(names.begin(), names.end(), "oracle") != names.end());
}

TEST_CASE("oracle suite passes on the square lattice") {
  const SuiteResult r = run_suite("oracle", bundled_lattice("m0-square"), {});
  CHECK(r.passed());
  CHECK(r.rows.size() >= 20);
}
