#include "amalgam/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "amalgam/errors.hpp"
#include "amalgam/quadrature.hpp"

namespace amalgam {

namespace {

void check_exponent(double v, const char* name) {
  if (std::isnan(v) || v < 1.0) {
    throw ConfigError(std::string(name) + " must lie in [1, inf], got " + std::to_string(v));
  }
}

// (sum w_i x_i^p)^{1/p} with x_i rescaled by the maximum.
double weighted_lp(std::span<const double> magnitudes, std::span<const double> weights, double p) {
  double m = 0.0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (weights[i] > 0.0) m = std::max(m, magnitudes[i]);
  }
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (weights[i] > 0.0) acc += weights[i] * std::pow(magnitudes[i] / m, p);
  }
  return m * std::pow(acc, 1.0 / p);
}

// Grid range [xi_min, xi_max] of a sampled spectrum that may be extended by
// zero. Throws if the samples do not vanish at both ends.
void require_vanishing_edges(const SampledSpectrum& f) {
  if (f.values().front() != Complex{} || f.values().back() != Complex{}) {
    throw UnsupportedInput(
        "sampled spectrum does not vanish at the grid edges; its effective support is unbounded");
  }
}

// Cut points of [lo, hi] at grid nodes (lo and hi included).
std::vector<double> grid_cuts(const FrequencyGrid& grid, double lo, double hi, std::span<const double> extra = {}) {
  std::vector<double> cuts{lo, hi};
  const double h = grid.spacing();
  auto k0 = static_cast<long>(std::ceil((lo - grid.xi_min()) / h));
  auto k1 = static_cast<long>(std::floor((hi - grid.xi_min()) / h));
  for (long k = std::max(0L, k0); k <= k1 && k < static_cast<long>(grid.size()); ++k) {
    const double x = grid.at(static_cast<std::size_t>(k));
    if (x > lo && x < hi) cuts.push_back(x);
  }
  for (double x : extra) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// integral over [lo, hi] of |f|^p * weight(xi), split at grid nodes so
// |f| is the modulus of a linear function on every panel.
template <class W>
double sampled_integral(const SampledSpectrum& f, double lo, double hi, double p, W&& weight, int panels_per_unit) {
  if (!(hi > lo)) return 0.0;
  const auto cuts = grid_cuts(f.grid(), lo, hi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_panels(
        [&](double xi) { return std::pow(std::abs(f.evaluate(xi)), p) * weight(xi); }, cuts[i], cuts[i + 1],
        panel_count(cuts[i + 1] - cuts[i], panels_per_unit));
  }
  return total;
}

// sup of |f| * weight over (lo, hi]: grid nodes plus `density` points per
// unit length, right endpoint included.
template <class W>
double sampled_sup(const SampledSpectrum& f, double lo, double hi, int density, W&& weight) {
  double best = 0.0;
  const auto count = panel_count(hi - lo, density);
  for (long k = 1; k <= count; ++k) {
    const double xi = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count);
    best = std::max(best, std::abs(f.evaluate(xi)) * weight(xi));
  }
  for (double xi : grid_cuts(f.grid(), lo, hi)) {
    if (xi > lo) best = std::max(best, std::abs(f.evaluate(xi)) * weight(xi));
  }
  return best;
}

double clipped_box_norm(const SampledSpectrum& f, long n, double p, int quad_density) {
  const auto& g = f.grid();
  const double lo = std::max(static_cast<double>(n) - 0.5, g.xi_min());
  const double hi = std::min(static_cast<double>(n) + 0.5, g.xi_max());
  if (!(hi > lo)) return 0.0;
  const auto unit = [](double) { return 1.0; };
  if (std::isinf(p)) return sampled_sup(f, lo, hi, quad_density, unit);
  return std::pow(sampled_integral(f, lo, hi, p, unit, 4), 1.0 / p);
}

// Box indices where a vanishing-edge sampled spectrum can be nonzero.
std::vector<long> sampled_boxes(const SampledSpectrum& f) {
  const auto [first, last] = f.nonzero_range();
  if (first > last) return {};
  const auto& g = f.grid();
  const double lo = g.at(static_cast<std::size_t>(std::max(0L, first - 1)));
  const double hi = g.at(static_cast<std::size_t>(std::min<long>(static_cast<long>(g.size()) - 1, last + 1)));
  return boxes_meeting(IntervalSet(lo, hi));
}

double bracket_pow(double xi, double e) { return std::pow(japanese_bracket(xi), e); }

}  // namespace

void AmalgamParams::validate() const {
  check_exponent(p, "p");
  check_exponent(q, "q");
  if (!std::isfinite(s)) throw ConfigError("s must be finite");
  if (quad_density < 2) throw ConfigError("quad_density must be at least 2");
}

double japanese_bracket(double x) { return std::hypot(1.0, x); }

double lq_combine(std::span<const double> terms, double q) {
  double m = 0.0;
  for (double a : terms) m = std::max(m, a);
  if (m == 0.0 || std::isinf(q)) return m;
  double acc = 0.0;
  for (double a : terms) acc += std::pow(a / m, q);
  return m * std::pow(acc, 1.0 / q);
}

std::vector<long> boxes_meeting(const IntervalSet& set) {
  std::vector<long> out;
  for (const auto& iv : set.intervals()) {
    const auto first = static_cast<long>(std::ceil(iv.lo - 0.5));
    const auto last = static_cast<long>(std::ceil(iv.hi + 0.5)) - 1;
    for (long n = first; n <= last; ++n) {
      if (out.empty() || out.back() < n) out.push_back(n);
    }
  }
  return out;
}

double box_lp_norm(const PiecewiseConstSpectrum& f, long n, double p) {
  check_exponent(p, "p");
  const double box_lo = static_cast<double>(n) - 0.5;
  const double box_hi = static_cast<double>(n) + 0.5;
  std::vector<double> magnitudes;
  std::vector<double> overlaps;
  for (const auto& piece : f.pieces()) {
    const double overlap = std::min(piece.support.hi, box_hi) - std::max(piece.support.lo, box_lo);
    magnitudes.push_back(std::abs(piece.amplitude));
    overlaps.push_back(std::max(0.0, overlap));
  }
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
      if (overlaps[i] > 0.0) best = std::max(best, magnitudes[i]);
    }
    return best;
  }
  return weighted_lp(magnitudes, overlaps, p);
}

double box_lp_norm(const SampledSpectrum& f, long n, double p, int quad_density) {
  check_exponent(p, "p");
  const auto& g = f.grid();
  if (static_cast<double>(n) - 0.5 < g.xi_min() || static_cast<double>(n) + 0.5 > g.xi_max()) {
    throw DomainError("box " + std::to_string(n) + " is not inside the sampled grid");
  }
  return clipped_box_norm(f, n, p, quad_density);
}

double amalgam_norm(const PiecewiseConstSpectrum& f, const AmalgamParams& params) {
  params.validate();
  std::vector<double> terms;
  for (long n : boxes_meeting(f.support())) {
    terms.push_back(box_lp_norm(f, n, params.p) * bracket_pow(static_cast<double>(n), params.s));
  }
  return lq_combine(terms, params.q);
}

double amalgam_norm(const SampledSpectrum& f, const AmalgamParams& params) {
  params.validate();
  require_vanishing_edges(f);
  std::vector<double> terms;
  for (long n : sampled_boxes(f)) {
    terms.push_back(clipped_box_norm(f, n, params.p, params.quad_density) *
                    bracket_pow(static_cast<double>(n), params.s));
  }
  return lq_combine(terms, params.q);
}

double amalgam_norm(const Spectrum& f, const AmalgamParams& params) {
  return std::visit([&](const auto& s) { return amalgam_norm(s, params); }, f);
}

double fourier_lebesgue_norm(const PiecewiseConstSpectrum& f, double q, double s, int quad_density) {
  check_exponent(q, "q");
  if (std::isinf(q)) {
    double best = 0.0;
    for (const auto& piece : f.pieces()) {
      const double a = piece.support.lo;
      const double b = piece.support.hi;
      double xi_star = 0.0;
      if (s >= 0.0) {
        xi_star = std::max(std::abs(a), std::abs(b));
      } else {
        xi_star = (a <= 0.0 && b >= 0.0) ? 0.0 : std::min(std::abs(a), std::abs(b));
      }
      best = std::max(best, std::abs(piece.amplitude) * bracket_pow(xi_star, s));
    }
    return best;
  }
  std::vector<double> magnitudes;
  std::vector<double> weights;
  for (const auto& piece : f.pieces()) {
    magnitudes.push_back(std::abs(piece.amplitude));
    weights.push_back(integrate_on([&](double xi) { return bracket_pow(xi, s * q); },
                                   IntervalSet(piece.support.lo, piece.support.hi), {quad_density}));
  }
  return weighted_lp(magnitudes, weights, q);
}

double fourier_lebesgue_norm(const SampledSpectrum& f, double q, double s, int quad_density) {
  check_exponent(q, "q");
  require_vanishing_edges(f);
  const auto& g = f.grid();
  if (std::isinf(q)) {
    return sampled_sup(f, g.xi_min(), g.xi_max(), quad_density, [s](double xi) { return bracket_pow(xi, s); });
  }
  const double integral =
      sampled_integral(f, g.xi_min(), g.xi_max(), q, [s, q](double xi) { return bracket_pow(xi, s * q); }, 4);
  return std::pow(integral, 1.0 / q);
}

double fourier_lebesgue_norm(const Spectrum& f, double q, double s, int quad_density) {
  return std::visit([&](const auto& x) { return fourier_lebesgue_norm(x, q, s, quad_density); }, f);
}

double sobolev_norm(const PiecewiseConstSpectrum& f, double s, int quad_density) {
  return fourier_lebesgue_norm(f, 2.0, s, quad_density);
}
double sobolev_norm(const SampledSpectrum& f, double s, int quad_density) {
  return fourier_lebesgue_norm(f, 2.0, s, quad_density);
}
double sobolev_norm(const Spectrum& f, double s, int quad_density) {
  return fourier_lebesgue_norm(f, 2.0, s, quad_density);
}

}  // namespace amalgam
