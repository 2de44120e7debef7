#include <doctest.h>

#include <algorithm>
#include <complex>
#include <random>

#include "cliffell/clifford.hpp"
#include "cliffell/operators.hpp"

using namespace cliffell;

namespace {

using MV = Multivector<double>;
using MR = Multivector<Rational>;

MR random_rational(int m, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  MR r(m);
  for (int b = 0; b < r.blade_count(); ++b) r[b] = Rational(num(rng), den(rng));
  return r;
}

}  // namespace

TEST_CASE("generators square to -1 and anticommute") {
  for (int m = 0; m <= 2; ++m) {
    const int g = 2 * m + 1;
    for (int i = 1; i <= g; ++i) {
      const MV ei = MV::generator(m, i);
      CHECK(ei * ei == MV::scalar(m, -1.0));
      for (int j = i + 1; j <= g; ++j) {
        const MV ej = MV::generator(m, j);
        CHECK(ei * ej == -(ej * ei));
      }
    }
  }
}

TEST_CASE("geometric product is associative and distributive (exact)") {
  std::mt19937 rng(7);
  for (int m = 0; m <= 2; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      const MR a = random_rational(m, rng), b = random_rational(m, rng), c = random_rational(m, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      // Reversion is an anti-automorphism.
      CHECK((a * b).reverse() == b.reverse() * a.reverse());
    }
  }
}

TEST_CASE("paravector inverse and norm") {
  const Paravector<Rational> x(1, {Rational(1, 2), Rational(-3), Rational(2, 7), Rational(5)});
  const MR prod = x * inverse(x);
  CHECK(prod == MR::scalar(1, Rational(1)));
  const MR xc = x * x.conjugate();
  CHECK(xc == MR::scalar(1, x.quadratic_norm()));
  CHECK_THROWS_AS(inverse(Paravector<double>(1)), PoleError);
}

TEST_CASE("complex scalars: the bilinear norm can vanish away from zero") {
  using C = std::complex<double>;
  const Paravector<C> x(0, {C(1, 0), C(0, 1)});
  CHECK(x.quadratic_norm() == C(0, 0));
  CHECK_THROWS_AS(inverse(x), PoleError);
}

TEST_CASE("lambda_power") {
  const Paravector<double> lam(1, {0.5, -1, 0.25, 2}), x(1, {1, 0.5, -0.5, 0.125});
  CHECK(lambda_power(lam, x, 0) == lam.to_multivector());
  const MV lx = lam * x;
  const MV expect = lx * lx * lam.to_multivector();
  CHECK(norm_inf(lambda_power(lam, x, 2) - expect) < 1e-15);
  CHECK_THROWS(lambda_power(lam, x, -1));
}

TEST_CASE("products of paravectors leave the paravector space") {
  const Paravector<double> a = Paravector<double>::unit(1, 1), b = Paravector<double>::unit(1, 2);
  CHECK_FALSE(as_paravector(a * b).has_value());
  const auto back = as_paravector(a.to_multivector());
  REQUIRE(back.has_value());
  CHECK(*back == a);
}

TEST_CASE("mixing algebras is rejected") {
  CHECK_THROWS_AS(MV(0) + MV(1), SignatureMismatch);
  CHECK_THROWS_AS(Paravector<double>(0) + Paravector<double>(1), SignatureMismatch);
  CHECK_THROWS(check_m(3));
  CHECK_THROWS(check_m(-1));
}

TEST_CASE("blade names") {
  CHECK(blade_name(0) == "1");
  CHECK(blade_name(0b1) == "e1");
  CHECK(blade_name(0b101) == "e13");
}

TEST_CASE("(w^-1 x)^mu w^-1 stays a paravector up to rounding") {
  using P = Paravector<double>;
  // w = 1 + e2, x = e1 gives exactly e1 / 2.
  const P w(1, {1, 0, 1, 0}), x(1, {0, 1, 0, 0});
  const MV special = lambda_power(inverse(w), x, 1);
  CHECK(norm_inf(special - 0.5 * P::unit(1, 1).to_multivector()) < 1e-15);
  // w^-1 is a multiple of conj(w), and a x a is a paravector for paravectors a, x.
  const P w1(1, {1, 0.3, 1, -0.2}), x1(1, {0.1, 1, 0.4, 0.7});
  const P w2(2, {1, 0.3, 1, -0.2, 0.5, 0.1}), x2(2, {0.1, 1, 0.4, 0.7, -0.3, 0.9});
  for (int mu = 1; mu <= 3; ++mu) {
    for (const MV& v : {lambda_power(inverse(w1), x1, mu), lambda_power(inverse(w2), x2, mu)}) {
      double stray = 0.0;
      for (int g = 2; g <= 2 * v.m() + 1; ++g) stray = std::max(stray, norm_inf(v.grade_part(g)));
      CHECK(stray < 1e-15);
    }
  }
}
