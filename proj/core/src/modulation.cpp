#include "amalgam/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "amalgam/errors.hpp"
#include "amalgam/quadrature.hpp"

namespace amalgam {

namespace {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

void require_p2(const AmalgamParams& params) {
  params.validate();
  if (params.p != 2.0) throw UnsupportedInput("modulation norm requires p=2");
}

// Windows n with [n - 1, n + 1] meeting `set`.
std::vector<long> windows_meeting(const IntervalSet& set) {
  std::vector<long> out;
  for (const auto& iv : set.intervals()) {
    const auto first = static_cast<long>(std::ceil(iv.lo - 1.0));
    const auto last = static_cast<long>(std::floor(iv.hi + 1.0));
    for (long n = first; n <= last; ++n) {
      if (out.empty() || out.back() < n) out.push_back(n);
    }
  }
  return out;
}


std::vector<double> window_cuts(long n) {
  const auto c = static_cast<double>(n);
  return {c - 1.0, c - 0.5, c, c + 0.5, c + 1.0};
}

}  // namespace

double default_bump(double xi) {
  const double a = std::abs(xi);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  return smooth_step(2.0 - 2.0 * a);
}

double SmoothWindowFamily::normalizer(double xi) const {
  const auto first = static_cast<long>(std::floor(xi)) - 1;
  double sum = 0.0;
  for (long l = first; l <= first + 3; ++l) sum += rho(l, xi);
  return sum;
}

double SmoothWindowFamily::window(long n, double xi) const {
  const double r = rho(n, xi);
  if (r == 0.0) return 0.0;
  return r / normalizer(xi);
}

double SmoothWindowFamily::partition_sum(double xi) const {
  const auto first = static_cast<long>(std::floor(xi)) - 1;
  const double norm = normalizer(xi);
  double sum = 0.0;
  for (long l = first; l <= first + 3; ++l) sum += rho(l, xi) / norm;
  return sum;
}

SmoothWindowFamily build_partition(BumpProfile profile) {
  if (!profile) throw InvalidProfile("bump profile is empty");
  constexpr int kSamples = 4000;
  std::vector<double> probes = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (int k = 0; k <= kSamples; ++k) probes.push_back(-2.0 + 4.0 * k / kSamples);
  for (double xi : probes) {
    const double v = profile(xi);
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw InvalidProfile("bump profile leaves [0, 1] at xi = " + std::to_string(xi));
    }
    if (std::abs(xi) <= 0.5 && v != 1.0) {
      throw InvalidProfile("bump profile must equal 1 on |xi| <= 1/2 (fails at xi = " + std::to_string(xi) + ")");
    }
    if (std::abs(xi) >= 1.0 && v != 0.0) {
      throw InvalidProfile("bump profile must vanish on |xi| >= 1 (fails at xi = " + std::to_string(xi) + ")");
    }
  }
  return SmoothWindowFamily(std::move(profile));
}

double modulation_norm(const PiecewiseConstSpectrum& f, const AmalgamParams& params,
                       const SmoothWindowFamily& windows) {
  require_p2(params);
  const QuadratureRule rule{params.quad_density};
  std::vector<double> terms;
  for (long n : windows_meeting(f.support())) {
    const auto cuts = window_cuts(n);
    double energy = 0.0;
    for (const auto& piece : f.pieces()) {
      const double mag2 = std::norm(piece.amplitude);
      if (mag2 == 0.0) continue;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto part = intersect(IntervalSet(piece.support.lo, piece.support.hi), IntervalSet(cuts[i], cuts[i + 1]));
        energy += mag2 * integrate_on(
                             [&](double xi) {
                               const double w = windows.window(n, xi);
                               return w * w;
                             },
                             part, rule);
      }
    }
    terms.push_back(std::sqrt(energy) * std::pow(japanese_bracket(static_cast<double>(n)), params.s));
  }
  return lq_combine(terms, params.q);
}

double modulation_norm(const SampledSpectrum& f, const AmalgamParams& params, const SmoothWindowFamily& windows) {
  require_p2(params);
  if (f.values().front() != Complex{} || f.values().back() != Complex{}) {
    throw UnsupportedInput(
        "sampled spectrum does not vanish at the grid edges; its effective support is unbounded");
  }
  const auto [first, last] = f.nonzero_range();
  if (first > last) return 0.0;
  const auto& g = f.grid();
  const double lo = g.at(static_cast<std::size_t>(std::max(0L, first - 1)));
  const double hi = g.at(static_cast<std::size_t>(std::min<long>(static_cast<long>(g.size()) - 1, last + 1)));
  const QuadratureRule rule{params.quad_density};
  std::vector<double> terms;
  for (long n : windows_meeting(IntervalSet(lo, hi))) {
    const auto wc = window_cuts(n);
    const double a = std::max(lo, wc.front());
    const double b = std::min(hi, wc.back());
    double energy = 0.0;
    if (b > a) {
      std::vector<double> cuts{a, b};
      for (double c : wc) {
        if (c > a && c < b) cuts.push_back(c);
      }
      const long k0 = static_cast<long>(std::ceil((a - g.xi_min()) / g.spacing()));
      const long k1 = static_cast<long>(std::floor((b - g.xi_min()) / g.spacing()));
      for (long k = std::max(0L, k0); k <= k1 && k < static_cast<long>(g.size()); ++k) {
        const double x = g.at(static_cast<std::size_t>(k));
        if (x > a && x < b) cuts.push_back(x);
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        energy += integrate_on(
            [&](double xi) {
              const double w = windows.window(n, xi);
              return w * w * std::norm(f.evaluate(xi));
            },
            IntervalSet(cuts[i], cuts[i + 1]), rule);
      }
    }
    terms.push_back(std::sqrt(energy) * std::pow(japanese_bracket(static_cast<double>(n)), params.s));
  }
  return lq_combine(terms, params.q);
}

double modulation_norm(const Spectrum& f, const AmalgamParams& params, const SmoothWindowFamily& windows) {
  return std::visit([&](const auto& s) { return modulation_norm(s, params, windows); }, f);
}

}  // namespace amalgam
