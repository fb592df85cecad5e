#pragma once

#include "amalgam/spectrum.hpp"

namespace amalgam {

/// Fourier multiplier of the linear KdV-Burgers flow, e^{-t xi^2 + i t xi^3}.
Complex semigroup_multiplier(double xi, double t);

/// Pointwise multiplication by the semigroup multiplier. Throws DomainError
/// for t < 0 (the flow runs forward only).
SampledSpectrum semigroup_apply(const SampledSpectrum& f, double t);
/// Piecewise-constant data is promoted to samples on `grid`.
SampledSpectrum semigroup_apply(const PiecewiseConstSpectrum& f, double t, const FrequencyGrid& grid);

/// Phase and decay gaps of the quadratic interaction at output frequency xi
/// and input frequency xi1, computed both expanded and factored:
///   quadratic_gap = xi1^2 + (xi-xi1)^2 - xi^2 = -2 xi1 (xi-xi1)
///   cubic_gap     = xi1^3 + (xi-xi1)^3 - xi^3 = -3 xi xi1 (xi-xi1)
/// The Duhamel time integrand is e^{-denominator * tau} with
///   denominator = quadratic_gap - i cubic_gap = -2 xi1 (xi-xi1) + 3i xi xi1 (xi-xi1).
struct ExponentGaps {
  double quadratic_gap = 0.0;
  double cubic_gap = 0.0;
  double quadratic_factored = 0.0;
  double cubic_factored = 0.0;
  Complex denominator;
  double quadratic_mismatch = 0.0;
  double cubic_mismatch = 0.0;
};

ExponentGaps exponent_gaps(double xi, double xi1);

/// e^z - 1 without cancellation near z = 0.
Complex expm1(Complex z);

/// G(z, t) = integral_0^t e^{-z tau} d tau = (1 - e^{-zt}) / z.
/// Uses the Taylor series t * sum_k (-zt)^k / (k+1)! when |z| t < epsilon.
Complex time_kernel(Complex z, double t, double epsilon = 1e-4);
Complex time_kernel_series(Complex z, double t);
Complex time_kernel_direct(Complex z, double t);

/// Frequency side of S(t - tau) d_x [u]^2:
///   e^{(t-tau)(-xi^2 + i xi^3)} (i xi) (Fu * Fu)(xi)
/// with the convolution done by the trapezoid rule on u's grid. The grid
/// must contain 0 on its lattice; throws SupportOverflow when u * u would
/// leave the grid and DomainError for tau outside [0, t].
SampledSpectrum duhamel_rhs(const SampledSpectrum& u, double t, double tau);

struct PicardConfig {
  double t = 0.0;
  FrequencyGrid grid{-1.0, 1.0, 3};
  int time_steps = 64;
  double epsilon = 1e-4;
};

/// Picard iterates of u(t) = S(t)u0 - 1/2 int_0^t S(t-tau) d_x[u(tau)]^2 dtau
/// with the composite trapezoid rule over `time_steps` in tau. Returns
/// u^(K)(t); K = 1 is the free evolution.
SampledSpectrum picard_iterate(const SampledSpectrum& u0, int iterations, const PicardConfig& config);
SampledSpectrum picard_iterate(const PiecewiseConstSpectrum& u0, int iterations, const PicardConfig& config);

struct ClosedFormOptions {
  double epsilon = 1e-4;
  int quad_density = 64;
};

/// F A_2(t, h, h)(xi) for A_2 = int_0^t S(t-tau) d_x [S(tau)h]^2 dtau, with
/// the tau integral done analytically:
///   (i xi) int Fh(xi1) Fh(xi-xi1) e^{-t xi^2 + i t xi^3} G(z, t) dxi1
/// over the exact support set of the integrand.
Complex second_iterate_closed_form(const PiecewiseConstSpectrum& h, double t, double xi,
                                   const ClosedFormOptions& options = {});

/// Closed form evaluated at every grid point.
SampledSpectrum second_iterate_on_grid(const PiecewiseConstSpectrum& h, double t, const FrequencyGrid& grid,
                                       const ClosedFormOptions& options = {});

struct OracleOptions {
  int initial_steps = 64;
  int max_steps = 1 << 14;
  double rel_tol = 1e-8;
  int quad_density = 16;
};

struct OracleResult {
  Complex value;
  int steps = 0;
  bool converged = false;
  double estimated_error = 0.0;  // |last Simpson value - previous one|
};

/// Same quantity as second_iterate_closed_form, computed the long way:
///   int_0^t e^{(t-tau)(-xi^2 + i xi^3)} (i xi) (F S(tau)h * F S(tau)h)(xi) dtau
/// by composite Simpson in tau, doubling the step count until two successive
/// values agree to rel_tol (or max_steps is reached).
OracleResult second_iterate_oracle(const PiecewiseConstSpectrum& h, double t, double xi,
                                   const OracleOptions& options = {});

/// Gauss panels per unit length needed to resolve the oscillating part
/// S(xi1, t) S(xi - xi1, t) of the interaction kernel over `span`; `base`
/// when that part is negligible against e^{-t xi^2}.
int resolved_density(double xi, double t, const Interval& span, int base);

}  // namespace amalgam
