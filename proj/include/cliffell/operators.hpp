#pragma once

// Translation operators E_j (E_j f)(x) = f(x + w_j): symbolic expansion of
// products of (I +- E_j) into signed shift words, application of a word to a
// function, and exact polynomial checks of the degree-reduction theorems.

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliffell/clifford.hpp"
#include "cliffell/zeta.hpp"

namespace cliffell {

using Rational = boost::multiprecision::cpp_rational;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FactorKind { i_minus_e, i_plus_e, i_minus_e_sq, e };

struct OperatorFactor {
  FactorKind kind;
  int index;  // zero-based generator
};

// A product of commuting factors.
struct OperatorExpr {
  std::vector<OperatorFactor> factors;
};

// Signed sum of products.
struct OperatorSum {
  std::vector<std::pair<int, OperatorExpr>> terms;
};

class TranslationWord {
 public:
  // Multiplicity of each generator; trailing zeros are trimmed.
  using Shift = std::vector<int>;

  struct ShiftOrder {
    // Total multiplicity first, then E1 before E2 before ...
    bool operator()(const Shift& a, const Shift& b) const;
  };

  struct Term {
    long long coefficient;
    Shift shift;
  };

  TranslationWord() = default;  // the zero operator
  static TranslationWord identity();
  static TranslationWord shift(int index, int power = 1);

  void add(Shift shift, long long coefficient);
  std::vector<Term> terms() const;
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  int generator_count() const noexcept;

  TranslationWord& operator+=(const TranslationWord& o);
  TranslationWord& operator-=(const TranslationWord& o);
  friend TranslationWord operator+(TranslationWord a, const TranslationWord& b) { return a += b; }
  friend TranslationWord operator-(TranslationWord a, const TranslationWord& b) { return a -= b; }
  friend TranslationWord operator*(const TranslationWord& a, const TranslationWord& b);
  friend TranslationWord operator*(long long c, const TranslationWord& a);
  friend bool operator==(const TranslationWord& a, const TranslationWord& b) { return a.terms_ == b.terms_; }

  // "+1·I −1·E1²"
  std::string to_string() const;

 private:
  std::map<Shift, long long, ShiftOrder> terms_;
};

TranslationWord factor_word(const OperatorFactor& f);
TranslationWord expand(const OperatorExpr& e);
TranslationWord expand(const OperatorSum& s);

// Grammar: optional sign, products of "(1-Ej)", "(1+Ej)", "(1-Ej^2)", "(Ej)"
// or bare "Ej", or a lone "1", joined by + or -. "I" may stand for 1, the
// Unicode minus for '-'.
// Whitespace is ignored; indices are one-based.
OperatorSum parse_operator_sum(std::string_view text);
OperatorExpr parse_operator_expr(std::string_view text);

// The shifted point x + sum_g mult_g * generators[g], always accumulated in
// increasing generator order so equal shifts produce identical bits.
Paravector<double> shifted_point(const Paravector<double>& x, const TranslationWord::Shift& shift,
                                 std::span<const Paravector<double>> generators);

std::string describe_shift(const TranslationWord::Shift& shift);

template <class T>
using Evaluatable = std::function<SeriesValue<T>(const Paravector<double>&, const EvalConfig&)>;

// sum_terms coefficient * f(shifted point). Tail estimates add.
template <class T>
SeriesValue<T> apply(const TranslationWord& word, const Evaluatable<T>& f, const Paravector<double>& x,
                     std::span<const Paravector<double>> generators, const EvalConfig& cfg) {
  if (word.generator_count() > static_cast<int>(generators.size()))
    throw std::invalid_argument("translation word uses more generators than supplied");
  SeriesValue<T> out = zero_series<T>(x.m());
  for (const auto& term : word.terms()) {
    const Paravector<double> p = shifted_point(x, term.shift, generators);
    SeriesValue<T> v;
    try {
      v = f(p, cfg);
    } catch (const PoleError& e) {
      throw PoleError("pole at shift " + describe_shift(term.shift) + ": " + e.what());
    }
    v *= T(static_cast<double>(term.coefficient));
    out += v;
  }
  return out;
}

// Exact polynomials P(x) = sum_alpha x^alpha c_alpha in the paravector
// coordinates of x with rational Clifford coefficients.
class CliffordPolynomial {
 public:
  using Exponent = std::array<std::uint8_t, kMaxParavectorDim>;

  explicit CliffordPolynomial(int m) : m_(m) { check_m(m); }

  static CliffordPolynomial constant(const Multivector<Rational>& c);
  // (lambda x)^n lambda.
  static CliffordPolynomial lambda_monomial(const Paravector<Rational>& lambda, int n);

  int m() const noexcept { return m_; }
  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Multivector<Rational>>& terms() const noexcept { return terms_; }

  // P(x + h).
  CliffordPolynomial shifted(const Paravector<Rational>& h) const;
  Multivector<Rational> evaluate(const Paravector<Rational>& x) const;

  CliffordPolynomial& operator+=(const CliffordPolynomial& o);
  CliffordPolynomial& operator-=(const CliffordPolynomial& o);
  CliffordPolynomial& operator*=(const Rational& c);
  friend CliffordPolynomial operator+(CliffordPolynomial a, const CliffordPolynomial& b) { return a += b; }
  friend CliffordPolynomial operator-(CliffordPolynomial a, const CliffordPolynomial& b) { return a -= b; }
  friend bool operator==(const CliffordPolynomial& a, const CliffordPolynomial& b) {
    return a.m_ == b.m_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const Exponent& e, const Multivector<Rational>& c);
  int m_;
  std::map<Exponent, Multivector<Rational>> terms_;
};

// Signed sum of (lambda x)^n lambda monomials.
struct LambdaMonomial {
  int sign = 1;
  Paravector<Rational> lambda;
  int n = 0;
};
CliffordPolynomial build_polynomial(int m, std::span<const LambdaMonomial> monomials);

// Symbolic action of a word on a polynomial.
CliffordPolynomial apply(const TranslationWord& word, const CliffordPolynomial& p,
                         std::span<const Paravector<Rational>> generators);

struct DegreeReduction {
  int degree_before = -1;
  int degree_after = -1;
  bool reduced = false;  // degree_after <= max(degree_before - 1, -1)
};

// Applies (I - E_j) exactly and reports the degrees.
DegreeReduction degree_reduction_check(int j, const CliffordPolynomial& p,
                                       std::span<const Paravector<Rational>> generators);

// Product of (I - E_j) over the multiset `indices`.
TranslationWord difference_word(std::span<const int> indices);

// All multisets of size k drawn from {0..n-1}, in lexicographic order.
std::vector<std::vector<int>> multisets(int n, int k);

// Search small-integer lambdas for a degree-n monomial (lambda x)^n lambda
// that the product of (I - E_j), j in `indices`, does not annihilate.
std::optional<Paravector<Rational>> sharpness_witness(int m, std::span<const int> indices, int n,
                                                      std::span<const Paravector<Rational>> generators,
                                                      int coefficient_bound = 2);

}  // namespace cliffell
