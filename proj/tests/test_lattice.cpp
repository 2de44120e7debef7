#include <doctest.h>

#include <cmath>
#include <set>

#include "cliffell/lattice.hpp"
#include "cliffell/lattice_io.hpp"

using namespace cliffell;

TEST_CASE("shell enumeration") {
  const Shell s0 = enumerate_shell(2, 0);
  REQUIRE(s0.points.size() == 1);
  CHECK(s0.points[0].k == std::vector<int>{0, 0});

  for (int n = 1; n <= 4; ++n) {
    for (int r = 1; r <= 3; ++r) {
      const Shell s = enumerate_shell(n, r);
      const auto expect = static_cast<std::uint64_t>(std::pow(2 * r + 1, n) - std::pow(2 * r - 1, n));
      CHECK(shell_size(n, r) == expect);
      REQUIRE(s.points.size() == expect);
      std::set<std::vector<int>> seen;
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        CHECK(s.points[i].norm_inf() == r);
        seen.insert(s.points[i].k);
      }
      CHECK(seen.size() == expect);
      // k and -k adjacent.
      for (std::size_t i = 0; i + 1 < s.points.size(); i += 2) CHECK(s.points[i + 1] == -s.points[i]);
      std::uint64_t reps = 0;
      for_each_shell_representative(n, r, [&](const int*) { ++reps; });
      CHECK(2 * reps == expect);
    }
  }
}

TEST_CASE("lattice points and distances") {
  const PeriodLattice l = bundled_lattice("m0-square");
  const std::vector<int> zero{0, 0}, k{1, -2};
  CHECK(l.point(std::span<const int>(zero)).is_zero());
  const Paravector<double> p = l.point(std::span<const int>(k));
  CHECK(p == Paravector<double>(0, {2, -4}));
  CHECK(l.distance_to_lattice(p) == doctest::Approx(0.0));
  CHECK(l.distance_to_lattice(Paravector<double>(0, {1, 1})) == doctest::Approx(std::sqrt(2.0)));
  CHECK(l.min_modulus() == doctest::Approx(2.0));
  CHECK(l.scaled(0.5).min_modulus() == doctest::Approx(1.0));
}

TEST_CASE("invalid lattices") {
  using P = Paravector<double>;
  CHECK_THROWS_AS(PeriodLattice({0}, {P(0, {1, 0}), P(0, {2, 0})}), LatticeError);
  CHECK_THROWS_AS(PeriodLattice({0}, {P(0, {1, 0}), P(0, {0, 1}), P(0, {1, 1})}), LatticeError);
  CHECK_THROWS_AS(PeriodLattice({0}, {P(1, {1, 0, 0, 0})}), std::invalid_argument);
  CHECK_THROWS_AS(PeriodLattice({0}, {}), LatticeError);
}

TEST_CASE("lattice documents round-trip bit for bit") {
  for (const auto& name : bundled_lattice_names()) {
    const PeriodLattice l = bundled_lattice(name);
    const PeriodLattice back = parse_lattice(serialize_lattice(l));
    REQUIRE(back.rank() == l.rank());
    CHECK(back.m() == l.m());
    for (int a = 0; a < l.rank(); ++a) CHECK(back.half_period(a) == l.half_period(a));
  }
  const PeriodLattice third = parse_lattice(R"({"m":0,"omegas":[[0.1,0.2],[0.30000000000000004,-1]]})");
  CHECK(third.half_period(1)[0] == 0.30000000000000004);
  CHECK(parse_lattice(serialize_lattice(third)).half_period(1)[0] == 0.30000000000000004);
}

TEST_CASE("malformed lattice documents") {
  CHECK_THROWS(parse_lattice("not json"));
  CHECK_THROWS(parse_lattice(R"({"m":0})"));
  CHECK_THROWS(parse_lattice(R"({"m":0,"omegas":[[1,0,0],[0,1,0]]})"));
  CHECK_THROWS(parse_lattice(R"({"m":5,"omegas":[[1]]})"));
  CHECK_THROWS(resolve_lattice("no-such-lattice"));
  CHECK(resolve_lattice("m1-unit").rank() == 4);
}
