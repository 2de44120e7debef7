#pragma once

// The lattice function
//   zeta_N(x) = x^-1 + sum_p [ (x - w_p)^-1 + sum_{mu<N} (w_p^-1 x)^mu w_p^-1 ]
// summed over +-paired infinity-norm shells, its exact directional
// derivatives, the quasi-periodicity polynomial and a finite-difference check
// of D Laplacian^m f = 0.

#include <complex>
#include <functional>
#include <memory>
#include <optional>

#include "cliffell/clifford.hpp"
#include "cliffell/lattice.hpp"

namespace cliffell {

struct EvalConfig {
  int max_radius = 24;
  double target_tol = 0.0;  // 0 disables early stopping
  bool pairing = true;

  void validate() const;
};

template <class T>
struct SeriesValue {
  Multivector<T> value;
  int radius_used = 0;
  double tail_estimate = 0.0;

  SeriesValue& operator+=(const SeriesValue& o) {
    value += o.value;
    radius_used = std::max(radius_used, o.radius_used);
    tail_estimate += o.tail_estimate;
    return *this;
  }
  SeriesValue& operator-=(const SeriesValue& o) {
    value -= o.value;
    radius_used = std::max(radius_used, o.radius_used);
    tail_estimate += o.tail_estimate;
    return *this;
  }
  SeriesValue& operator*=(const T& c) {
    value *= c;
    tail_estimate *= static_cast<double>(std::abs(c));
    return *this;
  }
  friend SeriesValue operator+(SeriesValue a, const SeriesValue& b) { return a += b; }
  friend SeriesValue operator-(SeriesValue a, const SeriesValue& b) { return a -= b; }
  friend SeriesValue operator*(const T& c, SeriesValue a) { return a *= c; }
};

inline SeriesValue<std::complex<double>> to_complex(const SeriesValue<double>& v) {
  return {convert<std::complex<double>>(v.value), v.radius_used, v.tail_estimate};
}

template <class T>
SeriesValue<T> zero_series(int m) {
  return {Multivector<T>(m), 0, 0.0};
}

struct ZetaOptions {
  // Remember values by (argument bits, config); used by the verification
  // suites, which revisit the same shifted points many times.
  bool memoize = false;
};

class ZetaFunction {
 public:
  explicit ZetaFunction(PeriodLattice lattice, ZetaOptions opts = {});

  const PeriodLattice& lattice() const noexcept;

  // Smallest odd power left after pairing: 2[N/2] + 1.
  int leading_odd_power() const noexcept;
  // Shell contributions fall like r^-p.
  int decay_exponent() const noexcept;

  SeriesValue<double> operator()(const Paravector<double>& x, const EvalConfig& cfg = {}) const;
  SeriesValue<std::complex<double>> operator()(const Paravector<std::complex<double>>& x,
                                               const EvalConfig& cfg = {}) const;

  // (d | grad_y)^n zeta(y) at y, termwise.
  SeriesValue<double> derivative(const Paravector<double>& d, int n, const Paravector<double>& y,
                                 const EvalConfig& cfg = {}) const;

  // First term of the odd Laurent form: -sum_p (w_p^-1 x)^{n0} w_p^-1.
  SeriesValue<double> laurent_leading_term(const Paravector<double>& x, const EvalConfig& cfg = {}) const;
  // zeta(x) - x^-1 - laurent_leading_term(x), accumulated shell by shell.
  SeriesValue<double> laurent_remainder(const Paravector<double>& x, const EvalConfig& cfg = {}) const;

  std::size_t cached_values() const;

  struct State;

 private:
  std::shared_ptr<State> state_;
};

// (-1)^n n! (w^-1 x)^n w^-1, the n-th derivative of w -> w^-1 along x.
Multivector<double> directional_derivative_inverse(const Paravector<double>& x, const Paravector<double>& w, int n);

SeriesValue<double> zeta_eval(const PeriodLattice& l, const Paravector<double>& x, const EvalConfig& cfg = {});
SeriesValue<double> zeta_derivative(const PeriodLattice& l, const Paravector<double>& direction, int n,
                                    const Paravector<double>& at, const EvalConfig& cfg = {});

// Quasi-periodicity polynomial for half-period alpha (zero-based), N = 2m+2.
// Centered form: zeta(x+w) - zeta(x-w) = 2 sum_p (x|grad)^{2p}/(2p)! zeta(w).
SeriesValue<double> p2m_eval(const ZetaFunction& zeta, const Paravector<double>& x, int alpha,
                             const EvalConfig& cfg = {});
// Shifted form: zeta(x+2w) - zeta(x) = 2 sum_p ((x+w)|grad)^{2p}/(2p)! zeta(w).
SeriesValue<double> p2m_eval_shifted(const ZetaFunction& zeta, const Paravector<double>& x, int alpha,
                                     const EvalConfig& cfg = {});

struct HolomorphicCheck {
  Multivector<double> residual;  // finite-difference D Laplacian^m f
  double scale = 0.0;            // sum over coordinates of |d_a Laplacian^m f|
  double relative = 0.0;         // |residual| / scale
  bool step_ok = true;           // pole distance exceeds (2m+1) h
};

using RealFunction = std::function<Multivector<double>(const Paravector<double>&)>;

HolomorphicCheck check_holomorphic_cliffordian(const RealFunction& f, const Paravector<double>& x, double h,
                                               std::optional<double> pole_distance = std::nullopt);

}  // namespace cliffell
