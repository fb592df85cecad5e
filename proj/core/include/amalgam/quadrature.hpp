#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

#include "amalgam/errors.hpp"
#include "amalgam/intervals.hpp"

namespace amalgam {

/// Composite Gauss-Legendre rule with 8-node panels. Each interval of
/// length L is cut into ceil(panels_per_unit * L) equal panels.
struct QuadratureRule {
  int panels_per_unit = 64;
};

namespace gl8 {

// Positive nodes on [-1, 1] and their weights; the rule is symmetric.
inline constexpr std::array<double, 4> kNodes = {
    0.18343464249564980493947614236018, 0.52553240991632898581773904918925,
    0.79666647741362673959155393647583, 0.96028985649753623168356086856947};
inline constexpr std::array<double, 4> kWeights = {
    0.36268378337836198296515044927720, 0.31370664587788728733796220198660,
    0.22238103445337447054435599442624, 0.10122853629037625915253135430996};

}  // namespace gl8

/// Integrates f over [a, b] with `panels` equal Gauss-Legendre panels.
/// Summation order is fixed: panels left to right, nodes left to right.
template <class F>
auto integrate_panels(F&& f, double a, double b, long panels) {
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  R total{};
  if (!(b > a) || panels < 1) return total;
  const double h = (b - a) / static_cast<double>(panels);
  const double half = 0.5 * h;
  for (long k = 0; k < panels; ++k) {
    const double mid = a + (static_cast<double>(k) + 0.5) * h;
    R panel{};
    for (int i = 3; i >= 0; --i) panel += gl8::kWeights[i] * f(mid - half * gl8::kNodes[i]);
    for (int i = 0; i < 4; ++i) panel += gl8::kWeights[i] * f(mid + half * gl8::kNodes[i]);
    total += half * panel;
  }
  return total;
}

inline long panel_count(double length, int panels_per_unit) {
  return std::max(1L, static_cast<long>(std::ceil(static_cast<double>(panels_per_unit) * length)));
}

/// Integrates f over every interval of `set`; an empty set integrates to 0.
template <class F>
auto integrate_on(F&& f, const IntervalSet& set, QuadratureRule rule = {}) {
  if (rule.panels_per_unit < 2) throw DomainError("quadrature density must be at least 2");
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  R total{};
  for (const auto& iv : set.intervals()) {
    if (iv.length() <= 0.0) continue;
    total += integrate_panels(f, iv.lo, iv.hi, panel_count(iv.length(), rule.panels_per_unit));
  }
  return total;
}

}  // namespace amalgam
