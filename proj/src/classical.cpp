#include "cliffell/classical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cliffell {

namespace {

// Neumaier compensated sum of complex values, real and imaginary parts
// carried separately.
struct Compensated {
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;

  static void add(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  void operator+=(cplx v) {
    add(sr, cr, v.real());
    add(si, ci, v.imag());
  }
  cplx value() const { return {sr + cr, si + ci}; }
};

double pole_tolerance(const ComplexLattice& l) { return 1e-9 * l.sigma_min(); }

}  // namespace

ComplexLattice::ComplexLattice(cplx a, cplx b) : w1(a), w2(b) {
  if (a == cplx(0) || b == cplx(0)) throw std::invalid_argument("half-periods must be nonzero");
  if (std::abs((b / a).imag()) < 1e-12) throw std::invalid_argument("half-periods have a real ratio");
  // Singular values of [[a.re, b.re], [a.im, b.im]].
  const double p = std::norm(a) + std::norm(b);
  const double det = std::abs(a.real() * b.imag() - a.imag() * b.real());
  const double disc = std::sqrt(std::max(0.0, p * p / 4.0 - det * det));
  sigma_min_ = std::sqrt(std::max(0.0, p / 2.0 - disc));
}

OracleValue weierstrass_zeta_c(const ComplexLattice& l, cplx z, int radius) {
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  const double tol = pole_tolerance(l);
  if (std::abs(z) <= tol) throw std::domain_error("z lies on the period lattice");
  Compensated acc;
  acc += 1.0 / z;
  const cplx p1 = 2.0 * l.w1, p2 = 2.0 * l.w2;
  for (int k2 = -radius; k2 <= radius; ++k2) {
    for (int k1 = -radius; k1 <= radius; ++k1) {
      if (k1 == 0 && k2 == 0) continue;
      const cplx w = static_cast<double>(k1) * p1 + static_cast<double>(k2) * p2;
      const cplx d = z - w;
      if (std::abs(d) <= tol) throw std::domain_error("z lies on the period lattice");
      const cplx iw = 1.0 / w;
      acc += 1.0 / d + iw + z * iw * iw;
    }
  }
  OracleValue out;
  out.value = acc.value();
  out.radius = radius;
  const double s = 2.0 * l.sigma_min() * (radius + 1);
  const double az = std::abs(z);
  if (radius == 0 || az >= s) {
    out.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    // Odd powers cancel in each symmetric shell; the leading z^3/w^4 term
    // bounds the rest through a geometric factor.
    const double sig = l.sigma_min();
    out.tail_bound = az * az * az / (4.0 * std::pow(sig, 4) * radius * radius) / (1.0 - (az / s) * (az / s));
  }
  return out;
}

namespace {

struct QData {
  cplx w1, w3;  // w3 = +-w2 with Im(w3/w1) > 0
  cplx q;
  cplx eta1, eta3;
};

QData qdata(const ComplexLattice& l) {
  constexpr double pi = std::numbers::pi;
  const cplx i(0.0, 1.0);
  QData d;
  d.w1 = l.w1;
  d.w3 = (l.w2 / l.w1).imag() > 0 ? l.w2 : -l.w2;
  const cplx tau = d.w3 / d.w1;
  d.q = std::exp(i * pi * tau);
  cplx s = 0.0;
  cplx q2n = 1.0;
  for (int n = 1; n < 400; ++n) {
    q2n *= d.q * d.q;
    const cplx term = q2n / ((1.0 - q2n) * (1.0 - q2n));
    s += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s))) break;
  }
  d.eta1 = pi * pi / (12.0 * d.w1) * (1.0 - 24.0 * s);
  d.eta3 = (d.eta1 * d.w3 - i * pi / 2.0) / d.w1;
  return d;
}

}  // namespace

EtaPair weierstrass_eta(const ComplexLattice& l) {
  const QData d = qdata(l);
  const bool flipped = d.w3 != l.w2;
  return {d.eta1, flipped ? -d.eta3 : d.eta3};
}

cplx weierstrass_zeta_converged(const ComplexLattice& l, cplx z) {
  constexpr double pi = std::numbers::pi;
  const QData d = qdata(l);
  // Coordinates of z in the basis (2 w1, 2 w3).
  const cplx a = 2.0 * d.w1, b = 2.0 * d.w3;
  const double det = a.real() * b.imag() - a.imag() * b.real();
  const double u = (z.real() * b.imag() - z.imag() * b.real()) / det;
  const double v = (a.real() * z.imag() - a.imag() * z.real()) / det;
  const double ku = std::round(u), kv = std::round(v);
  const cplx z0 = z - ku * a - kv * b;
  if (std::abs(z0) <= pole_tolerance(l)) throw std::domain_error("z lies on the period lattice");
  const cplx arg = pi * z0 / d.w1;
  cplx s = 0.0;
  cplx q2n = 1.0;
  for (int n = 1; n < 400; ++n) {
    q2n *= d.q * d.q;
    const cplx term = q2n / (1.0 - q2n) * std::sin(static_cast<double>(n) * arg);
    s += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s)) && std::abs(q2n) < 1e-18) break;
  }
  const cplx base = d.eta1 * z0 / d.w1 + pi / (2.0 * d.w1) * (std::cos(arg / 2.0) / std::sin(arg / 2.0)) +
                    2.0 * pi / d.w1 * s;
  return base + 2.0 * ku * d.eta1 + 2.0 * kv * d.eta3;
}

cplx embed(const Paravector<double>& x) {
  if (x.m() != 0) throw std::invalid_argument("only m = 0 paravectors embed in the complex plane");
  return {x[0], x[1]};
}

Paravector<double> unembed(cplx z) { return Paravector<double>(0, {z.real(), z.imag()}); }

ComplexLattice embed(const PeriodLattice& l) {
  if (l.m() != 0 || l.rank() != 2) throw std::invalid_argument("only m = 0 rank-2 lattices embed");
  return ComplexLattice(embed(l.half_period(0)), embed(l.half_period(1)));
}

CompareReport compare_m0(const PeriodLattice& l, const std::vector<Paravector<double>>& samples,
                         const EvalConfig& cfg) {
  const ComplexLattice cl = embed(l);
  CompareReport rep;
  for (const auto& x : samples) {
    CompareSample s;
    s.point = x;
    bool cliff_pole = false, classical_pole = false;
    SeriesValue<double> cv;
    OracleValue ov;
    try {
      cv = zeta_eval(l, x, cfg);
    } catch (const PoleError&) {
      cliff_pole = true;
    }
    try {
      ov = weierstrass_zeta_c(cl, embed(x), cfg.max_radius);
    } catch (const std::domain_error&) {
      classical_pole = true;
    }
    if (cliff_pole || classical_pole) {
      s.pole = cliff_pole && classical_pole;
      s.difference = s.pole ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      s.clifford = cplx(cv.value[0], cv.value[1]);
      s.classical = ov.value;
      s.difference = std::abs(s.clifford - s.classical);
      s.tail = cv.tail_estimate + ov.tail_bound;
    }
    rep.max_difference = std::max(rep.max_difference, s.difference);
    rep.samples.push_back(s);
  }
  return rep;
}

}  // namespace cliffell
