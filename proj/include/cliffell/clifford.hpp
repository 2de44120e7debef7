#pragma once

// Clifford algebra R_{0,2m+1} (every generator squares to -1) over real,
// complex or exact rational coefficients, with a paravector type for the
// grade 0 + grade 1 subspace.

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace cliffell {

enum class ScalarField { real, complex };

struct AlgebraSignature {
  int m = 0;
  ScalarField scalar_field = ScalarField::real;

  constexpr int generators() const noexcept { return 2 * m + 1; }
  constexpr int blade_count() const noexcept { return 1 << generators(); }
  constexpr int paravector_dim() const noexcept { return 2 * m + 2; }

  friend constexpr bool operator==(const AlgebraSignature&, const AlgebraSignature&) = default;
};

inline constexpr int kMaxM = 2;
inline constexpr int kMaxGenerators = 2 * kMaxM + 1;
inline constexpr int kMaxBlades = 1 << kMaxGenerators;
inline constexpr int kMaxParavectorDim = 2 * kMaxM + 2;

class SignatureMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised whenever an evaluation lands on (or within the guard distance of) a
// singularity.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

void check_m(int m);

template <class T>
inline constexpr bool is_complex_v = false;
template <class T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

namespace detail {

// Sign of e_A e_B for canonically ordered blades A, B (bitmasks). Counts the
// transpositions needed to sort the concatenation, plus one -1 for every
// generator present in both (e_i^2 = -1).
constexpr int blade_product_sign(unsigned a, unsigned b) noexcept {
  int swaps = 0;
  for (unsigned x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

struct SignTable {
  std::array<std::array<std::int8_t, kMaxBlades>, kMaxBlades> s{};
};

constexpr SignTable make_sign_table() {
  SignTable t;
  for (unsigned a = 0; a < kMaxBlades; ++a)
    for (unsigned b = 0; b < kMaxBlades; ++b)
      t.s[a][b] = static_cast<std::int8_t>(blade_product_sign(a, b));
  return t;
}

inline constexpr SignTable kSigns = make_sign_table();

template <class T>
inline bool is_zero_coeff(const T& v) {
  return v == T(0);
}

}  // namespace detail

template <class T>
class Multivector {
 public:
  using scalar_type = T;

  Multivector() = default;
  explicit Multivector(int m) : m_(m) { check_m(m); }

  static Multivector scalar(int m, T s) {
    Multivector r(m);
    r.c_[0] = std::move(s);
    return r;
  }
  static Multivector basis(int m, unsigned mask, T coef = T(1)) {
    Multivector r(m);
    if (mask >= static_cast<unsigned>(r.blade_count()))
      throw std::out_of_range("blade mask outside the algebra");
    r.c_[mask] = std::move(coef);
    return r;
  }
  // e_i for i in 1..2m+1; i = 0 gives the unit.
  static Multivector generator(int m, int i) {
    if (i < 0 || i > 2 * m + 1) throw std::out_of_range("generator index");
    return basis(m, i == 0 ? 0u : (1u << (i - 1)));
  }

  int m() const noexcept { return m_; }
  AlgebraSignature signature() const noexcept {
    return {m_, is_complex_v<T> ? ScalarField::complex : ScalarField::real};
  }
  int blade_count() const noexcept { return 1 << (2 * m_ + 1); }

  const T& operator[](unsigned mask) const { return c_[mask]; }
  T& operator[](unsigned mask) { return c_[mask]; }
  std::span<const T> coefficients() const { return {c_.data(), static_cast<std::size_t>(blade_count())}; }
  std::span<T> coefficients() { return {c_.data(), static_cast<std::size_t>(blade_count())}; }

  const T& scalar_part() const { return c_[0]; }

  Multivector grade_part(int g) const {
    Multivector r(m_);
    for (int i = 0; i < blade_count(); ++i)
      if (std::popcount(static_cast<unsigned>(i)) == g) r.c_[i] = c_[i];
    return r;
  }

  // Reversion: blade of grade g picks up (-1)^{g(g-1)/2}.
  Multivector reverse() const {
    Multivector r(*this);
    for (int i = 0; i < blade_count(); ++i) {
      int g = std::popcount(static_cast<unsigned>(i));
      if ((g * (g - 1) / 2) & 1) r.c_[i] = -r.c_[i];
    }
    return r;
  }

  bool is_zero() const {
    for (int i = 0; i < blade_count(); ++i)
      if (!detail::is_zero_coeff(c_[i])) return false;
    return true;
  }

  // Highest grade carrying a nonzero coefficient, -1 for zero.
  int max_grade() const {
    int g = -1;
    for (int i = 0; i < blade_count(); ++i)
      if (!detail::is_zero_coeff(c_[i])) g = std::max(g, std::popcount(static_cast<unsigned>(i)));
    return g;
  }

  Multivector& operator+=(const Multivector& o) {
    require_same(o);
    for (int i = 0; i < blade_count(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    require_same(o);
    for (int i = 0; i < blade_count(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(const T& s) {
    for (int i = 0; i < blade_count(); ++i) c_[i] *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) {
    for (int i = 0; i < a.blade_count(); ++i) a.c_[i] = -a.c_[i];
    return a;
  }
  friend Multivector operator*(Multivector a, const T& s) { return a *= s; }
  friend Multivector operator*(const T& s, Multivector a) { return a *= s; }

  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    a.require_same(b);
    Multivector r(a.m_);
    const int n = a.blade_count();
    for (int i = 0; i < n; ++i) {
      if (detail::is_zero_coeff(a.c_[i])) continue;
      for (int j = 0; j < n; ++j) {
        if (detail::is_zero_coeff(b.c_[j])) continue;
        if (detail::kSigns.s[i][j] > 0)
          r.c_[i ^ j] += a.c_[i] * b.c_[j];
        else
          r.c_[i ^ j] -= a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    if (a.m_ != b.m_) return false;
    for (int i = 0; i < a.blade_count(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  void require_same(const Multivector& o) const {
    if (o.m_ != m_) throw SignatureMismatch("multivectors from different algebras");
  }

 private:
  int m_ = 0;
  std::array<T, kMaxBlades> c_{};
};

template <class T>
class Paravector {
 public:
  using scalar_type = T;

  Paravector() = default;
  explicit Paravector(int m) : m_(m) { check_m(m); }
  Paravector(int m, std::initializer_list<T> coeffs) : Paravector(m) {
    if (static_cast<int>(coeffs.size()) != dim())
      throw std::invalid_argument("paravector needs 2m+2 coefficients");
    int i = 0;
    for (const T& c : coeffs) c_[i++] = c;
  }

  static Paravector from_span(int m, std::span<const T> coeffs) {
    Paravector p(m);
    if (static_cast<int>(coeffs.size()) != p.dim())
      throw std::invalid_argument("paravector needs 2m+2 coefficients");
    for (int i = 0; i < p.dim(); ++i) p.c_[i] = coeffs[i];
    return p;
  }
  static Paravector scalar(int m, T s) {
    Paravector p(m);
    p.c_[0] = std::move(s);
    return p;
  }
  // Coordinate unit: i = 0 is 1, i >= 1 is e_i.
  static Paravector unit(int m, int i) {
    Paravector p(m);
    if (i < 0 || i >= p.dim()) throw std::out_of_range("paravector coordinate");
    p.c_[i] = T(1);
    return p;
  }

  int m() const noexcept { return m_; }
  int dim() const noexcept { return 2 * m_ + 2; }

  const T& operator[](int i) const { return c_[i]; }
  T& operator[](int i) { return c_[i]; }
  std::span<const T> coefficients() const { return {c_.data(), static_cast<std::size_t>(dim())}; }

  Multivector<T> to_multivector() const {
    Multivector<T> r(m_);
    r[0] = c_[0];
    for (int i = 1; i < dim(); ++i) r[1u << (i - 1)] = c_[i];
    return r;
  }

  Paravector conjugate() const {
    Paravector r(*this);
    for (int i = 1; i < dim(); ++i) r.c_[i] = -r.c_[i];
    return r;
  }

  // x * conj(x) = sum of squared coefficients. Over complex scalars this is the
  // bilinear form, not the Hermitian norm, and can vanish off the origin.
  T quadratic_norm() const {
    T s = c_[0] * c_[0];
    for (int i = 1; i < dim(); ++i) s += c_[i] * c_[i];
    return s;
  }

  bool is_zero() const {
    for (int i = 0; i < dim(); ++i)
      if (!detail::is_zero_coeff(c_[i])) return false;
    return true;
  }

  Paravector& operator+=(const Paravector& o) {
    require_same(o);
    for (int i = 0; i < dim(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Paravector& operator-=(const Paravector& o) {
    require_same(o);
    for (int i = 0; i < dim(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Paravector& operator*=(const T& s) {
    for (int i = 0; i < dim(); ++i) c_[i] *= s;
    return *this;
  }

  friend Paravector operator+(Paravector a, const Paravector& b) { return a += b; }
  friend Paravector operator-(Paravector a, const Paravector& b) { return a -= b; }
  friend Paravector operator-(Paravector a) {
    for (int i = 0; i < a.dim(); ++i) a.c_[i] = -a.c_[i];
    return a;
  }
  friend Paravector operator*(Paravector a, const T& s) { return a *= s; }
  friend Paravector operator*(const T& s, Paravector a) { return a *= s; }
  friend bool operator==(const Paravector& a, const Paravector& b) {
    if (a.m_ != b.m_) return false;
    for (int i = 0; i < a.dim(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  void require_same(const Paravector& o) const {
    if (o.m_ != m_) throw SignatureMismatch("paravectors from different algebras");
  }

 private:
  int m_ = 0;
  std::array<T, kMaxParavectorDim> c_{};
};

template <class T>
Multivector<T> operator*(const Paravector<T>& a, const Paravector<T>& b) {
  return a.to_multivector() * b.to_multivector();
}
template <class T>
Multivector<T> operator*(const Paravector<T>& a, const Multivector<T>& b) {
  return a.to_multivector() * b;
}
template <class T>
Multivector<T> operator*(const Multivector<T>& a, const Paravector<T>& b) {
  return a * b.to_multivector();
}

// Grades 0 and 1 only; nullopt when any higher blade is nonzero.
template <class T>
std::optional<Paravector<T>> as_paravector(const Multivector<T>& a) {
  Paravector<T> p(a.m());
  for (int i = 0; i < a.blade_count(); ++i) {
    const unsigned mask = static_cast<unsigned>(i);
    if (mask == 0) {
      p[0] = a[0];
    } else if (std::has_single_bit(mask)) {
      p[std::countr_zero(mask) + 1] = a[mask];
    } else if (!detail::is_zero_coeff(a[mask])) {
      return std::nullopt;
    }
  }
  return p;
}

// (x0 - v) / (x0^2 + |v|^2).
template <class T>
Paravector<T> inverse(const Paravector<T>& x) {
  const T n = x.quadratic_norm();
  if (detail::is_zero_coeff(n)) throw PoleError("paravector inverse of a null element");
  Paravector<T> r = x.conjugate();
  if constexpr (std::is_floating_point_v<T> || is_complex_v<T>) {
    const T inv = T(1) / n;
    r *= inv;
  } else {
    for (int i = 0; i < r.dim(); ++i) r[i] /= n;
  }
  return r;
}

// (lambda x)^n lambda by repeated products.
template <class T>
Multivector<T> lambda_power(const Paravector<T>& lambda, const Paravector<T>& x, int n) {
  lambda.require_same(x);
  if (n < 0) throw std::invalid_argument("lambda_power needs n >= 0");
  const Multivector<T> lm = lambda.to_multivector();
  const Multivector<T> lx = lm * x.to_multivector();
  Multivector<T> r = lm;
  for (int k = 0; k < n; ++k) r = lx * r;
  return r;
}

// Max absolute coefficient (floating types).
template <class T>
double norm_inf(const Multivector<T>& a) {
  double r = 0.0;
  for (const T& c : a.coefficients()) r = std::max(r, static_cast<double>(std::abs(c)));
  return r;
}
template <class T>
double norm_inf(const Paravector<T>& a) {
  double r = 0.0;
  for (const T& c : a.coefficients()) r = std::max(r, static_cast<double>(std::abs(c)));
  return r;
}

// Euclidean modulus of the coefficient vector.
template <class T>
double modulus(const Paravector<T>& a) {
  double s = 0.0;
  for (const T& c : a.coefficients()) s += static_cast<double>(std::norm(c));
  return std::sqrt(s);
}

template <class U, class T>
Multivector<U> convert(const Multivector<T>& a) {
  Multivector<U> r(a.m());
  for (int i = 0; i < a.blade_count(); ++i) r[i] = static_cast<U>(a[i]);
  return r;
}
template <class U, class T>
Paravector<U> convert(const Paravector<T>& a) {
  Paravector<U> r(a.m());
  for (int i = 0; i < a.dim(); ++i) r[i] = static_cast<U>(a[i]);
  return r;
}

// "e13" style name for a blade mask, "1" for the scalar blade.
std::string blade_name(unsigned mask);

// Human-readable rendering with 17 significant digits.
std::string to_string(const Multivector<double>& a);
std::string to_string(const Multivector<std::complex<double>>& a);

}  // namespace cliffell
