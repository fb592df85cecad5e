#pragma once

#include <functional>

#include "amalgam/norms.hpp"
#include "amalgam/spectrum.hpp"

namespace amalgam {

using BumpProfile = std::function<double(double)>;

/// C-infinity bump: 1 on |xi| <= 1/2, 0 on |xi| >= 1, built from the
/// smooth step e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)}) evaluated at 2 - 2|xi|.
double default_bump(double xi);

/// Frequency-uniform decomposition: rho_n(xi) = rho(xi - n) and
/// sigma_n = rho_n / sum_l rho_l. At most three windows touch any point.
class SmoothWindowFamily {
 public:
  const BumpProfile& profile() const { return profile_; }

  double rho(long n, double xi) const { return profile_(xi - static_cast<double>(n)); }
  /// sigma_n(xi)
  double window(long n, double xi) const;
  /// sum_n sigma_n(xi); 1 up to rounding.
  double partition_sum(double xi) const;

 private:
  friend SmoothWindowFamily build_partition(BumpProfile profile);
  explicit SmoothWindowFamily(BumpProfile profile) : profile_(std::move(profile)) {}

  double normalizer(double xi) const;

  BumpProfile profile_;
};

/// Throws InvalidProfile unless the profile equals 1 on |xi| <= 1/2,
/// vanishes on |xi| >= 1 and stays in [0, 1] (checked on a dense sample).
SmoothWindowFamily build_partition(BumpProfile profile = default_bump);

/// Modulation norm for p = 2, computed on the frequency side through
/// ||box_n f||_{L^2} = ||sigma_n Ff||_{L^2}. Any other p throws
/// UnsupportedInput.
double modulation_norm(const PiecewiseConstSpectrum& f, const AmalgamParams& params,
                       const SmoothWindowFamily& windows);
double modulation_norm(const SampledSpectrum& f, const AmalgamParams& params, const SmoothWindowFamily& windows);
double modulation_norm(const Spectrum& f, const AmalgamParams& params, const SmoothWindowFamily& windows);

}  // namespace amalgam
