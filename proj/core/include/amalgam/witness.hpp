#pragma once

#include <span>
#include <string>
#include <vector>

#include "amalgam/norms.hpp"
#include "amalgam/spectrum.hpp"

namespace amalgam {

/// Data family with F phi_N = N (chi_[N, N+2] + chi_[-N-2, -N]).
PiecewiseConstSpectrum make_phi_N(int N);

/// Box indices n with (n + Q) meeting supp Ff, Q = (-1/2, 1/2].
std::vector<long> contributing_boxes(const PiecewiseConstSpectrum& f);

/// Interaction frequencies xi1 where F phi_N(xi1) F phi_N(xi - xi1) pairs a
/// positive block with a negative one:
///   {xi1 in -I_N, xi - xi1 in I_N} U {xi1 in I_N, xi - xi1 in -I_N}
IntervalSet resonant_set(double xi, int N);

struct ExponentBounds {
  double max_cubic_term = 0.0;      // max |3 xi xi1 (xi - xi1)|
  double min_quadratic_term = 0.0;  // min |2 xi1 (xi - xi1)|
  double max_quadratic_term = 0.0;  // max |2 xi1 (xi - xi1)|
};

/// Extremes over K_xi by dense sampling (`density` points per unit) plus the
/// interval endpoints. Requires |xi| <= 1/2.
ExponentBounds exponent_bounds_check(double xi, int N, int density = 64);

/// e^{-2 (N+2)^2 t} <= e^{-t/4} / 2, evaluated in log form.
bool threshold_holds(int N, double t);

/// Smallest N >= 1 with threshold_holds(N, t). Requires t > 0.
int min_N_for(double t);

/// Numerator of the resonant integrand,
///   e^{-(xi1^2 + (xi-xi1)^2) t} e^{-3i xi xi1 (xi-xi1) t} - e^{-xi^2 t}.
Complex lower_bound_numerator(double xi, double xi1, double t);

/// integral over K_xi of numerator / (2 xi1 (xi-xi1) - 3i xi xi1 (xi-xi1)).
/// N^2 |xi| |result| = |F A_2(t, phi_N, phi_N)(xi)| for |xi| <= 1/2.
/// Requires |xi| <= 1/2 and N >= min_N_for(t).
Complex lower_bound_integral(double xi, int N, double t, int quad_density = 64);

struct WitnessOptions {
  int quad_density = 64;  // Gauss panels per unit in xi1
  int box_panels = 16;    // Gauss panels across the box (-1/2, 1/2]
  int xi_samples = 65;    // diagnostic sweep of (-1/2, 1/2]
  int parallel = 1;
};

/// `count` uniform points of (-1/2, 1/2], right endpoint included.
std::vector<double> box_sweep(int count);

/// L^p norm of F A_2(t, phi_N, phi_N) over the box (-1/2, 1/2], without the
/// admissibility check on N.
double a2_box_norm(int N, double t, double p, const WitnessOptions& options = {});

/// a2_box_norm with N >= min_N_for(t) enforced. Since <0>^s = 1 this bounds
/// the amalgam norm of A_2 from below for every q and s.
double a2_norm_lower(int N, double t, const AmalgamParams& params, const WitnessOptions& options = {});

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<int> Ns;
  std::vector<double> norms;
};

/// Least-squares fit of log ||phi_N|| against log N. Needs at least 4
/// distinct N >= 8.
ScalingFit scaling_scan(std::span<const int> Ns, const AmalgamParams& params);

enum class Verdict { pass, fail, inapplicable };

std::string to_string(Verdict v);

struct WitnessReport {
  int N = 0;
  double t = 0.0;
  double p = 0.0;
  double q = 0.0;
  double s = 0.0;
  double phi_norm = 0.0;
  double a2_box0_lower = 0.0;
  double kxi_min_measure = 0.0;
  double normalized_integral_min = 0.0;  // min over the sweep of N^2 e^{t/4} |integral|
  bool threshold_ok = false;
  Verdict verdict = Verdict::inapplicable;
};

struct WitnessSweep {
  std::vector<WitnessReport> reports;
  Verdict verdict = Verdict::inapplicable;
  std::vector<std::string> warnings;
};

/// One report per N, in input order. The sweep passes when ||phi_N|| is
/// strictly decreasing with last < first / 4 and min a2 >= half the a2 value
/// at the smallest N. s >= -1 yields Verdict::inapplicable and a warning.
WitnessSweep discontinuity_report(double t, std::span<const int> Ns, const AmalgamParams& params,
                                  const WitnessOptions& options = {});

}  // namespace amalgam
