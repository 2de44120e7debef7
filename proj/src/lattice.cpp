#include "cliffell/lattice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace cliffell {

int MultiIndex::norm_inf() const noexcept {
  int r = 0;
  for (int v : k) r = std::max(r, std::abs(v));
  return r;
}

MultiIndex MultiIndex::operator-() const {
  MultiIndex r = *this;
  for (int& v : r.k) v = -v;
  return r;
}

namespace {

Eigen::MatrixXd period_matrix(const std::vector<Paravector<double>>& omegas, int dim) {
  Eigen::MatrixXd p(dim, static_cast<Eigen::Index>(omegas.size()));
  for (std::size_t a = 0; a < omegas.size(); ++a)
    for (int i = 0; i < dim; ++i) p(i, static_cast<Eigen::Index>(a)) = omegas[a][i];
  return p;
}

// Calls f(k) for every k with |k - center|_inf <= radius (integer box).
template <class F>
void for_each_in_box(const std::vector<long>& lo, const std::vector<long>& hi, F&& f) {
  const std::size_t n = lo.size();
  std::vector<int> k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = static_cast<int>(lo[i]);
  while (true) {
    f(std::span<const int>(k));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (k[i] < hi[i]) {
        ++k[i];
        break;
      }
      k[i] = static_cast<int>(lo[i]);
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace

PeriodLattice::PeriodLattice(AlgebraSignature sig, std::vector<Paravector<double>> half_periods)
    : sig_(sig), omegas_(std::move(half_periods)) {
  check_m(sig_.m);
  const int dim = sig_.paravector_dim();
  const int n = rank();
  if (n < 1 || n > dim)
    throw LatticeError("lattice needs between 1 and 2m+2 half-periods, got " + std::to_string(n));
  for (const auto& w : omegas_) {
    if (w.m() != sig_.m) throw SignatureMismatch("half-period from a different algebra");
    for (double c : w.coefficients())
      if (!std::isfinite(c)) throw LatticeError("non-finite half-period coefficient");
  }
  const Eigen::MatrixXd p = period_matrix(omegas_, dim);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p);
  const auto& s = svd.singularValues();
  sigma_min_ = s(s.size() - 1);
  if (!(sigma_min_ > 1e-12 * s(0)))
    throw LatticeError("half-periods are linearly dependent");

  // Every k with |2 P k| below the current best satisfies |k|_2 <= best / (2 sigma_min).
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) best = std::min(best, 2.0 * modulus(omegas_[a]));
  const long bound = static_cast<long>(std::floor(best / (2.0 * sigma_min_)));
  std::vector<long> lo(n, -bound), hi(n, bound);
  for_each_in_box(lo, hi, [&](std::span<const int> k) {
    if (std::all_of(k.begin(), k.end(), [](int v) { return v == 0; })) return;
    best = std::min(best, modulus(point(k)));
  });
  min_modulus_ = best;
}

Paravector<double> PeriodLattice::point(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != rank())
    throw std::invalid_argument("multi-index length differs from the lattice rank");
  Paravector<double> r(sig_.m);
  for (int a = 0; a < rank(); ++a) {
    if (k[a] == 0) continue;
    r += (2.0 * k[a]) * omegas_[a];
  }
  return r;
}

PeriodLattice PeriodLattice::scaled(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw LatticeError("scale factor must be positive");
  std::vector<Paravector<double>> w = omegas_;
  for (auto& v : w) v *= s;
  return PeriodLattice(sig_, std::move(w));
}

PeriodLattice PeriodLattice::with_scalar_field(ScalarField f) const {
  AlgebraSignature s = sig_;
  s.scalar_field = f;
  return PeriodLattice(s, omegas_);
}

double PeriodLattice::distance_to_lattice(const Paravector<double>& x) const {
  const int dim = sig_.paravector_dim();
  const int n = rank();
  const Eigen::MatrixXd p = period_matrix(omegas_, dim);
  Eigen::VectorXd xv(dim);
  for (int i = 0; i < dim; ++i) xv(i) = x[i];
  const Eigen::VectorXd c = p.colPivHouseholderQr().solve(xv);
  std::vector<int> k0(n);
  for (int a = 0; a < n; ++a) k0[a] = static_cast<int>(std::lround(c(a) / 2.0));
  double best = modulus(x - point(k0));
  const long reach = static_cast<long>(std::ceil(best / (2.0 * sigma_min_)));
  std::vector<long> lo(n), hi(n);
  for (int a = 0; a < n; ++a) {
    lo[a] = static_cast<long>(std::floor(c(a) / 2.0)) - reach;
    hi[a] = static_cast<long>(std::ceil(c(a) / 2.0)) + reach;
  }
  for_each_in_box(lo, hi, [&](std::span<const int> k) { best = std::min(best, modulus(x - point(k))); });
  return best;
}

std::uint64_t shell_size(int n, int r) {
  if (r < 0) return 0;
  if (r == 0) return 1;
  std::uint64_t a = 1, b = 1;
  for (int i = 0; i < n; ++i) {
    a *= static_cast<std::uint64_t>(2 * r + 1);
    b *= static_cast<std::uint64_t>(2 * r - 1);
  }
  return a - b;
}

Shell enumerate_shell(int n, int r) {
  if (n < 1 || n > kMaxParavectorDim) throw std::invalid_argument("shell dimension out of range");
  if (r < 0) throw std::invalid_argument("shell radius must be non-negative");
  Shell s;
  s.radius = r;
  if (r == 0) {
    s.points.push_back(MultiIndex{std::vector<int>(n, 0)});
    return s;
  }
  s.points.reserve(shell_size(n, r));
  for_each_shell_representative(n, r, [&](const int* k) {
    MultiIndex p{std::vector<int>(k, k + n)};
    s.points.push_back(p);
    s.points.push_back(-p);
  });
  return s;
}

std::vector<std::string> bundled_lattice_names() { return {"m0-square", "m0-skew", "m1-unit", "m1-skew"}; }

PeriodLattice bundled_lattice(std::string_view name) {
  if (name == "m0-square") return PeriodLattice({0}, {Paravector<double>(0, {1, 0}), Paravector<double>(0, {0, 1})});
  if (name == "m0-skew")
    return PeriodLattice({0}, {Paravector<double>(0, {1, 0}), Paravector<double>(0, {0.3, 0.8})});
  if (name == "m1-unit") {
    std::vector<Paravector<double>> w;
    for (int i = 0; i < 4; ++i) w.push_back(Paravector<double>::unit(1, i));
    return PeriodLattice({1}, std::move(w));
  }
  if (name == "m1-skew") {
    // Generic orientation: no coordinate reflection maps the lattice to itself.
    return PeriodLattice({1}, {Paravector<double>(1, {1.0, 0.1, 0.0, 0.05}),
                               Paravector<double>(1, {0.15, 1.0, 0.1, 0.0}),
                               Paravector<double>(1, {0.0, 0.2, 0.9, 0.1}),
                               Paravector<double>(1, {0.1, 0.0, 0.15, 1.1})});
  }
  throw LatticeError("unknown bundled lattice '" + std::string(name) + "'");
}

}  // namespace cliffell
