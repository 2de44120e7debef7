#include <doctest.h>

#include <numbers>
#include <random>

#include "cliffell/classical.hpp"

using namespace cliffell;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("converged zeta: half-period identity") {
  for (const ComplexLattice l : {ComplexLattice(1.0, I), ComplexLattice(1.0, cplx(0.3, 0.8)),
                                 ComplexLattice(cplx(0.7, -0.2), cplx(-0.1, 1.3))}) {
    const cplx lhs =
        weierstrass_zeta_converged(l, l.w1) + weierstrass_zeta_converged(l, l.w2) -
        weierstrass_zeta_converged(l, l.w1 + l.w2);
    CHECK(std::abs(lhs) < 1e-10);
  }
}

TEST_CASE("square lattice: zeta(0.5) is real") {
  const ComplexLattice l(1.0, I);
  CHECK(std::abs(weierstrass_zeta_converged(l, 0.5).imag()) < 1e-10);
  CHECK(std::abs(weierstrass_zeta_c(l, 0.5, 60).value.imag()) < 1e-10);
}

TEST_CASE("quasi-periods and the Legendre relation") {
  const ComplexLattice l(1.0, cplx(0.3, 0.8));
  const EtaPair e = weierstrass_eta(l);
  const cplx z(0.21, -0.17);
  CHECK(std::abs(weierstrass_zeta_converged(l, z + 2.0 * l.w1) - weierstrass_zeta_converged(l, z) - 2.0 * e.eta1) <
        1e-10);
  CHECK(std::abs(weierstrass_zeta_converged(l, z + 2.0 * l.w2) - weierstrass_zeta_converged(l, z) - 2.0 * e.eta2) <
        1e-10);
  // Im(w2/w1) > 0 here.
  CHECK(std::abs(e.eta1 * l.w2 - e.eta2 * l.w1 - I * std::numbers::pi / 2.0) < 1e-10);
  // Square lattice: eta1 = pi/4, eta2 = -i pi/4.
  const EtaPair sq = weierstrass_eta(ComplexLattice(1.0, I));
  CHECK(std::abs(sq.eta1 - std::numbers::pi / 4) < 1e-12);
  CHECK(std::abs(sq.eta2 + I * std::numbers::pi / 4.0) < 1e-12);
}

TEST_CASE("box sum converges to the q-series value within its tail bound") {
  const ComplexLattice l(1.0, cplx(0.3, 0.8));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int i = 0; i < 10; ++i) {
    const cplx z = u(rng) * l.w1 + u(rng) * l.w2;
    const OracleValue o = weierstrass_zeta_c(l, z, 60);
    const double diff = std::abs(o.value - weierstrass_zeta_converged(l, z));
    CHECK(diff <= o.tail_bound + 1e-12);
  }
}

TEST_CASE("oracle input validation") {
  CHECK_THROWS(ComplexLattice(1.0, 2.0));
  CHECK_THROWS(ComplexLattice(0.0, I));
  const ComplexLattice l(1.0, I);
  CHECK_THROWS_AS(weierstrass_zeta_c(l, 0.0), std::domain_error);
  CHECK_THROWS_AS(weierstrass_zeta_c(l, cplx(2.0, 2.0)), std::domain_error);
  CHECK_THROWS_AS(weierstrass_zeta_converged(l, cplx(4.0, -2.0)), std::domain_error);
}

TEST_CASE("embedding") {
  const Paravector<double> x(0, {0.25, -1.5});
  CHECK(embed(x) == cplx(0.25, -1.5));
  CHECK(unembed(embed(x)) == x);
  CHECK_THROWS(embed(Paravector<double>(1)));
  CHECK_THROWS(embed(bundled_lattice("m1-unit")));
}

TEST_CASE("Clifford zeta matches the oracle at 20 in-cell points") {
  const PeriodLattice l = bundled_lattice("m0-square");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  std::vector<Paravector<double>> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(Paravector<double>(0, {u(rng), u(rng)}));
  pts.push_back(Paravector<double>(0, {2.0, 0.0}));  // a pole on both sides
  const CompareReport r = compare_m0(l, pts, EvalConfig{60});
  CHECK(r.max_difference <= 1e-8);
  CHECK(r.samples.back().pole);
}
