#pragma once

// Period lattice 2Z^N omega and its enumeration in symmetric infinity-norm
// shells.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliffell/clifford.hpp"

namespace cliffell {

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MultiIndex {
  std::vector<int> k;

  int norm_inf() const noexcept;
  MultiIndex operator-() const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

struct Shell {
  int radius = 0;
  // k and -k adjacent, representatives (first nonzero entry negative) in
  // lexicographic order.
  std::vector<MultiIndex> points;
};

class PeriodLattice {
 public:
  PeriodLattice(AlgebraSignature sig, std::vector<Paravector<double>> half_periods);

  const AlgebraSignature& signature() const noexcept { return sig_; }
  int m() const noexcept { return sig_.m; }
  int rank() const noexcept { return static_cast<int>(omegas_.size()); }
  bool is_full_rank() const noexcept { return rank() == sig_.paravector_dim(); }

  // Zero-based alpha.
  const Paravector<double>& half_period(int alpha) const { return omegas_.at(alpha); }
  std::span<const Paravector<double>> half_periods() const noexcept { return omegas_; }

  // 2 * sum_alpha k_alpha omega_alpha.
  Paravector<double> point(std::span<const int> k) const;
  Paravector<double> point(const MultiIndex& k) const { return point(std::span<const int>(k.k)); }

  // Smallest modulus of a nonzero lattice point.
  double min_modulus() const noexcept { return min_modulus_; }
  // Smallest singular value of the half-period matrix.
  double sigma_min() const noexcept { return sigma_min_; }

  PeriodLattice scaled(double s) const;
  PeriodLattice with_scalar_field(ScalarField f) const;

  // Distance from x to the nearest lattice point (exact search in the box
  // allowed by sigma_min around the least-squares coordinates).
  double distance_to_lattice(const Paravector<double>& x) const;

 private:
  AlgebraSignature sig_;
  std::vector<Paravector<double>> omegas_;
  double sigma_min_ = 0.0;
  double min_modulus_ = 0.0;
};

std::uint64_t shell_size(int n, int r);
Shell enumerate_shell(int n, int r);
inline Shell enumerate_shell(const PeriodLattice& l, int r) { return enumerate_shell(l.rank(), r); }

namespace detail {

template <class F>
void shell_reps_rec(int* k, int pos, int n, int r, bool hit, bool sign_fixed, F& f) {
  if (pos == n) {
    f(static_cast<const int*>(k));
    return;
  }
  const bool last = pos == n - 1;
  const int hi = sign_fixed ? r : 0;
  if (last && !hit) {
    // Must reach the shell at this coordinate.
    k[pos] = -r;
    f(static_cast<const int*>(k));
    if (sign_fixed) {
      k[pos] = r;
      f(static_cast<const int*>(k));
    }
    return;
  }
  for (int v = -r; v <= hi; ++v) {
    k[pos] = v;
    const bool h = hit || v == -r || v == r;
    shell_reps_rec(k, pos + 1, n, r, h, sign_fixed || v != 0, f);
  }
}

}  // namespace detail

// Calls f(const int* k) once per +-pair representative of shell r >= 1, in
// lexicographic order. The partner -k is implicit.
template <class F>
void for_each_shell_representative(int n, int r, F&& f) {
  if (r <= 0) return;
  int k[kMaxParavectorDim] = {};
  detail::shell_reps_rec(k, 0, n, r, false, false, f);
}

std::vector<std::string> bundled_lattice_names();
PeriodLattice bundled_lattice(std::string_view name);

}  // namespace cliffell
