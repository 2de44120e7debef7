#include <doctest.h>

#include <cmath>

#include "cliffell/classical.hpp"
#include "cliffell/zeta.hpp"

using namespace cliffell;

namespace {

using P = Paravector<double>;

double nrm(const SeriesValue<double>& v) { return norm_inf(v.value); }

}  // namespace

TEST_CASE("zeta is odd up to rounding") {
  for (const char* name : {"m0-skew", "m1-skew"}) {
    const PeriodLattice l = bundled_lattice(name);
    const ZetaFunction z(l);
    P x(l.m());
    for (int i = 0; i < x.dim(); ++i) x[i] = 0.17 + 0.11 * i;
    const EvalConfig cfg{10};
    CHECK(nrm(z(x, cfg) + z(-x, cfg)) < 1e-12);
  }
}

TEST_CASE("m = 0 agrees with the classical box sum") {
  const PeriodLattice l({0}, {P(0, {1, 0}), P(0, {0, 1})});
  const ZetaFunction z(l);
  const EvalConfig cfg{60};
  const auto v = z(P(0, {0.5, 0}), cfg);
  const auto o = weierstrass_zeta_c(embed(l), cplx(0.5, 0), 60);
  CHECK(std::abs(cplx(v.value[0], v.value[1]) - o.value) < 1e-8);
  // No other blades at m = 0 beyond e1.
  CHECK(v.value.blade_count() == 2);
}

TEST_CASE("m = 0 half-period identity") {
  const PeriodLattice l = bundled_lattice("m0-skew");
  const ZetaFunction z(l);
  const EvalConfig cfg{5000};
  const P w1 = l.half_period(0), w2 = l.half_period(1);
  CHECK(nrm(z(w1, cfg) + z(w2, cfg) - z(w1 + w2, cfg)) < 1e-8);
}

TEST_CASE("lattice scaling: zeta is homogeneous of degree -1") {
  for (const char* name : {"m0-skew", "m1-skew"}) {
    const PeriodLattice l = bundled_lattice(name);
    const double s = 2.5;
    const ZetaFunction z(l), zs(l.scaled(s));
    P x(l.m());
    for (int i = 0; i < x.dim(); ++i) x[i] = 0.31 - 0.07 * i;
    const EvalConfig cfg{8};
    CHECK(nrm(zs(s * x, cfg) - (1.0 / s) * z(x, cfg)) < 1e-13);
  }
}

TEST_CASE("pairing does not change the truncated value") {
  const PeriodLattice l = bundled_lattice("m1-skew");
  const ZetaFunction z(l);
  const P x(1, {0.2, -0.3, 0.15, 0.4});
  EvalConfig a{6}, b{6};
  b.pairing = false;
  CHECK(nrm(z(x, a) - z(x, b)) < 1e-12);
}

TEST_CASE("derivative matches finite differences (m = 0, scalar direction)") {
  const PeriodLattice l = bundled_lattice("m0-skew");
  const ZetaFunction z(l);
  const EvalConfig cfg{40};
  const P y(0, {0.41, 0.23}), d(0, {1, 0});
  auto g = [&](double t) { return z(y + t * d, cfg).value; };
  auto stencil = [&](double h) { return (g(h) - g(-h)) * (1.0 / (2 * h)); };
  const double h = 1e-3;
  const Multivector<double> fd = (4.0 * stencil(h / 2) - stencil(h)) * (1.0 / 3.0);
  CHECK(norm_inf(z.derivative(d, 1, y, cfg).value - fd) < 1e-6);
  CHECK(nrm(z.derivative(d, 0, y, cfg) - z(y, cfg)) == 0.0);
}

TEST_CASE("m = 0 quasi-periodicity polynomial is the constant 2 zeta(w)") {
  const PeriodLattice l = bundled_lattice("m0-square");
  const ZetaFunction z(l);
  const EvalConfig cfg{200};
  const auto p1 = p2m_eval(z, P(0, {0.2, 0.1}), 0, cfg);
  const auto p2 = p2m_eval(z, P(0, {-0.4, 0.35}), 0, cfg);
  CHECK(nrm(p1 - p2) < 1e-12);
  CHECK(nrm(p1 - 2.0 * z(l.half_period(0), cfg)) < 1e-12);
}

TEST_CASE("m = 1 quasi-periodicity defect shrinks with the radius") {
  const PeriodLattice l = bundled_lattice("m1-unit");
  const ZetaFunction z(l);
  const P x(1, {0.21, -0.33, 0.12, 0.27});
  auto defect = [&](int r) {
    const EvalConfig cfg{r};
    const P w = l.half_period(1);
    return nrm(z(x + w, cfg) - z(x - w, cfg) - p2m_eval(z, x, 1, cfg));
  };
  const double d6 = defect(6), d12 = defect(12);
  CHECK(d12 < 0.35 * d6);
}

TEST_CASE("poles and configuration errors") {
  const ZetaFunction z(bundled_lattice("m0-square"));
  CHECK_THROWS_AS(z(P(0, {0, 0})), PoleError);
  CHECK_THROWS_AS(z(P(0, {2, 2})), PoleError);
  CHECK_THROWS_AS(z(P(1, {0.1, 0, 0, 0})), SignatureMismatch);
  CHECK_THROWS(z(P(0, {0.1, 0.1}), EvalConfig{-1}));
}

TEST_CASE("early stopping and memoization") {
  const ZetaFunction z(bundled_lattice("m0-square"), ZetaOptions{true});
  EvalConfig cfg{400, 1e-6};
  const auto v = z(P(0, {0.3, 0.2}), cfg);
  CHECK(v.radius_used < 400);
  CHECK(v.tail_estimate <= 1e-6);
  const std::size_t before = z.cached_values();
  const auto again = z(P(0, {0.3, 0.2}), cfg);
  CHECK(z.cached_values() == before);
  CHECK(again.value == v.value);
}

TEST_CASE("holomorphic Cliffordian check") {
  {
    const PeriodLattice l = bundled_lattice("m0-skew");
    const ZetaFunction z(l);
    const RealFunction f = [&](const P& x) { return z(x, EvalConfig{20}).value; };
    const auto r = check_holomorphic_cliffordian(f, P(0, {0.37, 0.21}), 1e-4);
    CHECK(r.relative < 1e-6);
  }
  {
    // x^3 is holomorphic Cliffordian; x0^3 is not.
    const RealFunction cube = [](const P& x) { return x * x * x; };
    CHECK(check_holomorphic_cliffordian(cube, P(1, {0.3, 0.2, -0.1, 0.5}), 1e-2).relative < 1e-6);
    const RealFunction bad = [](const P& x) { return Multivector<double>::scalar(1, x[0] * x[0] * x[0]); };
    CHECK(check_holomorphic_cliffordian(bad, P(1, {0.3, 0.2, -0.1, 0.5}), 1e-2).relative > 0.1);
  }
}

TEST_CASE("Laurent remainder falls off fast near the origin") {
  const PeriodLattice l = bundled_lattice("m0-skew");
  const ZetaFunction z(l);
  const P d = (1.0 / std::sqrt(0.61)) * P(0, {0.6, 0.5});
  const EvalConfig cfg{12};
  const double r1 = nrm(z.laurent_remainder(0.2 * d, cfg)), r2 = nrm(z.laurent_remainder(0.1 * d, cfg));
  // Leading exponent 5 at m = 0.
  CHECK(std::log2(r1 / r2) == doctest::Approx(5.0).epsilon(0.05));
  CHECK(z.leading_odd_power() == 3);
}
