#pragma once

// Classical complex Weierstrass zeta, coded without the Clifford machinery so
// it can serve as an independent reference for the m = 0 case.
//
// Embedding convention: x0 + x1 e_1 maps to x0 + i x1.

#include <complex>
#include <vector>

#include "cliffell/lattice.hpp"
#include "cliffell/zeta.hpp"

namespace cliffell {

using cplx = std::complex<double>;

struct ComplexLattice {
  cplx w1, w2;  // half-periods; periods are 2 w1, 2 w2

  ComplexLattice(cplx a, cplx b);
  // Smallest singular value of the real 2x2 matrix [w1 w2].
  double sigma_min() const noexcept { return sigma_min_; }

 private:
  double sigma_min_ = 0.0;
};

struct OracleValue {
  cplx value;
  double tail_bound = 0.0;
  int radius = 0;
};

// Lattice sum of 1/(z-w) + 1/w + z/w^2 over infinity-norm shells |k| <= radius,
// rows in increasing k2, compensated summation. The tail bound covers the
// shells beyond `radius` and assumes |z| < 2 sigma_min radius.
OracleValue weierstrass_zeta_c(const ComplexLattice& l, cplx z, int radius = 60);

// Converged value from the q-expansion after reduction to the period cell.
cplx weierstrass_zeta_converged(const ComplexLattice& l, cplx z);

// Quasi-period constants: zeta(z + 2 w_j) = zeta(z) + 2 eta_j.
struct EtaPair {
  cplx eta1, eta2;
};
EtaPair weierstrass_eta(const ComplexLattice& l);

cplx embed(const Paravector<double>& x);
Paravector<double> unembed(cplx z);
// Requires m = 0 and two half-periods.
ComplexLattice embed(const PeriodLattice& l);

struct CompareSample {
  Paravector<double> point;
  cplx clifford;
  cplx classical;
  double difference = 0.0;
  double tail = 0.0;  // sum of both tail estimates
  bool pole = false;  // both sides refused the point
};

struct CompareReport {
  std::vector<CompareSample> samples;
  double max_difference = 0.0;
};

// Compares zeta_eval against weierstrass_zeta_c at the same radius.
CompareReport compare_m0(const PeriodLattice& l, const std::vector<Paravector<double>>& samples,
                         const EvalConfig& cfg);

}  // namespace cliffell
