#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cliffell/operators.hpp"

using namespace cliffell;

namespace {

using PR = Paravector<Rational>;

std::vector<PR> unit_generators(int m) {
  std::vector<PR> g;
  for (int i = 0; i < 2 * m + 2; ++i) g.push_back(PR::unit(m, i));
  return g;
}

TranslationWord parse(std::string_view s) { return expand(parse_operator_sum(s)); }

}  // namespace

TEST_CASE("factorization identities") {
  CHECK(parse("(1-E1)(1+E1)") == parse("(1-E1^2)"));
  CHECK(parse("(1-E1)(1+E1)").to_string() == "+1·I −1·E1²");
  CHECK(parse("(1-E1)(1+E2) + (1+E1) - (1+E2)") == TranslationWord::identity() - parse("(E1)(E2)"));
  // Commuting factors.
  CHECK(parse("(1-E1)(1+E2)(1-E3)") == parse("(1-E3)(1-E1)(1+E2)"));
  CHECK(parse("I - E1") == parse("(1-E1)"));
  CHECK(parse("(1−E1)") == parse("(1-E1)"));
  CHECK(parse("1 - E1E2") == parse("I - (E1)(E2)"));
  CHECK(parse("I").to_string() == "+1·I");
}

TEST_CASE("word arithmetic") {
  const TranslationWord e1 = TranslationWord::shift(0), e2 = TranslationWord::shift(1);
  CHECK((e1 * e2) == (e2 * e1));
  CHECK((e1 - e1).is_zero());
  CHECK((TranslationWord::shift(0, 2)) == e1 * e1);
  CHECK((2LL * e1).terms().front().coefficient == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_operator_sum(""), ParseError);
  CHECK_THROWS_AS(parse_operator_sum("(1*E1)"), ParseError);
  CHECK_THROWS_AS(parse_operator_sum("(1-E0)"), ParseError);
  CHECK_THROWS_AS(parse_operator_sum("(1-E1"), ParseError);
  CHECK_THROWS_AS(parse_operator_sum("1 -"), ParseError);
  CHECK_THROWS_AS(parse_operator_sum("(1+E1^2)"), ParseError);
}

TEST_CASE("multisets") {
  const auto ms = multisets(2, 2);
  CHECK(ms == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(multisets(4, 3).size() == 20);
}

TEST_CASE("differences kill constants and lower degrees") {
  for (int m = 0; m <= 1; ++m) {
    const auto g = unit_generators(m);
    Multivector<Rational> h(m);
    h[0] = Rational(3, 4);
    h[1] = Rational(-2);
    const CliffordPolynomial c = CliffordPolynomial::constant(h);
    CHECK(apply(difference_word(std::vector<int>{0}), c, g).is_zero());

    PR l2 = PR::unit(m, 0) * Rational(2) + PR::unit(m, 1) * Rational(-1, 3);
    for (int n = 1; n <= 4; ++n) {
      const CliffordPolynomial p = CliffordPolynomial::lambda_monomial(l2, n);
      CHECK(p.degree() == n);
      const DegreeReduction dr = degree_reduction_check(0, p, g);
      CHECK(dr.reduced);
      CHECK(dr.degree_after <= n - 1);
    }
  }
}

TEST_CASE("degree-2 polynomial annihilated by three differences") {
  const auto g = unit_generators(1);
  const PR lam(1, {Rational(1), Rational(2), Rational(-1), Rational(1, 2)});
  const std::array<LambdaMonomial, 2> ms{LambdaMonomial{1, lam, 2}, LambdaMonomial{-1, PR::unit(1, 3), 1}};
  const CliffordPolynomial p = build_polynomial(1, ms);
  CHECK(apply(difference_word(std::vector<int>{0, 0, 0}), p, g).is_zero());
  CHECK(apply(difference_word(std::vector<int>{0, 1, 2}), p, g).is_zero());
  CHECK_FALSE(apply(difference_word(std::vector<int>{0, 1}), p, g).is_zero());
}

TEST_CASE("shifting a polynomial agrees with evaluation") {
  const PR lam(1, {Rational(1), Rational(0), Rational(1, 3), Rational(-2)});
  const CliffordPolynomial p = CliffordPolynomial::lambda_monomial(lam, 3);
  const PR h(1, {Rational(1, 2), Rational(1), Rational(0), Rational(-1)});
  const PR x(1, {Rational(2), Rational(-1, 5), Rational(3), Rational(1, 7)});
  CHECK(p.shifted(h).evaluate(x) == p.evaluate(x + h));
}

TEST_CASE("sharpness: n factors do not kill degree n") {
  const auto g = unit_generators(0);
  for (int n = 1; n <= 3; ++n) {
    const std::vector<int> idx(n, 0);
    const auto w = sharpness_witness(0, idx, n, g);
    REQUIRE(w.has_value());
    const CliffordPolynomial p = CliffordPolynomial::lambda_monomial(*w, n);
    CHECK_FALSE(apply(difference_word(idx), p, g).is_zero());
    const std::vector<int> more(n + 1, 0);
    CHECK(apply(difference_word(more), p, g).is_zero());
  }
}

TEST_CASE("I - E^2 annihilates a function with that period") {
  // cos(pi x0) has period 2 = 2 w with w = 1.
  const Evaluatable<double> f = [](const Paravector<double>& x, const EvalConfig&) {
    return SeriesValue<double>{Multivector<double>::scalar(0, std::cos(std::numbers::pi * x[0])), 0, 0.0};
  };
  const std::array<Paravector<double>, 1> gens{Paravector<double>(0, {1.0, 0.0})};
  const auto r = apply(parse("(1-E1^2)"), f, Paravector<double>(0, {0.3, 0.2}), gens, EvalConfig{});
  CHECK(norm_inf(r.value) < 1e-14);
  const auto s = apply(parse("(1-E1)"), f, Paravector<double>(0, {0.3, 0.2}), gens, EvalConfig{});
  CHECK(norm_inf(s.value) > 0.5);
}

TEST_CASE("shifted points accumulate in a fixed order") {
  const std::array<Paravector<double>, 2> gens{Paravector<double>(0, {0.1, 0.7}), Paravector<double>(0, {0.3, -0.2})};
  const Paravector<double> x(0, {0.123, 0.456});
  const Paravector<double> a = shifted_point(x, {1, 1}, gens);
  const Paravector<double> b = shifted_point(x, {1, 1}, gens);
  CHECK(a == b);
  CHECK(describe_shift({1, 0, 2}) == "E1E3²");
  CHECK(describe_shift({}) == "I");
}
