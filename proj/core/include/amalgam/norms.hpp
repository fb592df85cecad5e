#pragma once

#include <limits>
#include <span>
#include <vector>

#include "amalgam/spectrum.hpp"

namespace amalgam {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Exponents of the Fourier amalgam norm. p and q live in [1, inf]; use
/// kInfinity for the sup case.
struct AmalgamParams {
  double p = 2.0;
  double q = 2.0;
  double s = 0.0;
  int quad_density = 64;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// <x> = (1 + x^2)^{1/2}
double japanese_bracket(double x);

/// l^q norm of nonnegative terms, summed in the given order. Rescales by the
/// largest term so large exponents do not overflow.
double lq_combine(std::span<const double> terms, double q);

/// Indices n whose box n + Q = (n - 1/2, n + 1/2] meets `set`, ascending.
std::vector<long> boxes_meeting(const IntervalSet& set);

/// (integral over n + Q of |Ff|^p)^{1/p}, or the essential sup for p = inf.
/// Exact for piecewise-constant spectra.
double box_lp_norm(const PiecewiseConstSpectrum& f, long n, double p);
/// Sampled variant; the whole box must lie inside the grid.
double box_lp_norm(const SampledSpectrum& f, long n, double p, int quad_density = 64);

/// || ||chi_{n+Q} Ff||_{L^p} <n>^s ||_{l^q_n}
double amalgam_norm(const PiecewiseConstSpectrum& f, const AmalgamParams& params);
/// Samples must vanish at both grid ends; the spectrum is taken as zero
/// beyond the grid. Otherwise UnsupportedInput.
double amalgam_norm(const SampledSpectrum& f, const AmalgamParams& params);
double amalgam_norm(const Spectrum& f, const AmalgamParams& params);

/// || <xi>^s Ff ||_{L^q}
double fourier_lebesgue_norm(const PiecewiseConstSpectrum& f, double q, double s, int quad_density = 64);
double fourier_lebesgue_norm(const SampledSpectrum& f, double q, double s, int quad_density = 64);
double fourier_lebesgue_norm(const Spectrum& f, double q, double s, int quad_density = 64);

/// H^s norm, the q = 2 Fourier-Lebesgue norm.
double sobolev_norm(const PiecewiseConstSpectrum& f, double s, int quad_density = 64);
double sobolev_norm(const SampledSpectrum& f, double s, int quad_density = 64);
double sobolev_norm(const Spectrum& f, double s, int quad_density = 64);

}  // namespace amalgam
