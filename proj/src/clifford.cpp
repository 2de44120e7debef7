#include "cliffell/clifford.hpp"

#include <cstdio>

namespace cliffell {

void check_m(int m) {
  if (m < 0 || m > kMaxM)
    throw std::invalid_argument("m must lie in 0.." + std::to_string(kMaxM));
}

std::string blade_name(unsigned mask) {
  if (mask == 0) return "1";
  std::string s = "e";
  for (int i = 0; i < kMaxGenerators; ++i)
    if (mask & (1u << i)) s += std::to_string(i + 1);
  return s;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string render(const Multivector<T>& a, auto&& coef) {
  std::string out;
  for (int i = 0; i < a.blade_count(); ++i) {
    if (a[i] == T(0)) continue;
    if (!out.empty()) out += " + ";
    out += coef(a[i]);
    if (i != 0) out += "*" + blade_name(static_cast<unsigned>(i));
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string to_string(const Multivector<double>& a) {
  return render(a, [](double v) { return fmt(v); });
}

std::string to_string(const Multivector<std::complex<double>>& a) {
  return render(a, [](std::complex<double> v) { return "(" + fmt(v.real()) + "," + fmt(v.imag()) + ")"; });
}

}  // namespace cliffell
