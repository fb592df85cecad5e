#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's quadrature or interval code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace amalgam::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Box indices n whose box (n - 1/2, n + 1/2] meets [a, b], by scanning every
// integer in a generous window and testing the overlap directly.
inline std::vector<long> brute_boxes(double a, double b) {
  std::vector<long> out;
  for (long n = static_cast<long>(std::floor(a)) - 3; n <= static_cast<long>(std::ceil(b)) + 3; ++n) {
    const double lo = static_cast<double>(n) - 0.5;
    const double hi = static_cast<double>(n) + 0.5;
    const bool meets = a <= hi && b > lo;
    if (meets) out.push_back(n);
  }
  return out;
}

// Measure of K_xi by direct formula: each branch is the overlap of two
// length-2 intervals offset by xi.
inline double resonant_measure(double xi, int N) {
  const double n = N;
  auto overlap = [](double a0, double a1, double b0, double b1) { return std::max(0.0, std::min(a1, b1) - std::max(a0, b0)); };
  return overlap(-n - 2, -n, xi - n - 2, xi - n) + overlap(n, n + 2, xi + n, xi + n + 2);
}

// Threshold inequality e^{-2 (N+2)^2 t} <= e^{-t/4} / 2 in plain exponent form.
inline bool threshold_plain(int N, double t) {
  return std::exp(-2.0 * (N + 2.0) * (N + 2.0) * t) <= 0.5 * std::exp(-t / 4.0);
}

// Composite Simpson on [a, b] with an even number of steps.
template <class F>
auto simpson(F&& f, double a, double b, int steps) {
  using R = decltype(f(a));
  const double h = (b - a) / steps;
  R total = f(a) + f(b);
  for (int k = 1; k < steps; ++k) total += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
  return total * (h / 3.0);
}

inline double rel_err(std::complex<double> got, std::complex<double> want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

inline double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace amalgam::testing
