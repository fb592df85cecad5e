#include "amalgam/kdvb.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "amalgam/errors.hpp"
#include "amalgam/quadrature.hpp"

namespace amalgam {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_nonnegative_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("time must be finite and nonnegative (forward semigroup), got " + std::to_string(t));
  }
}

// e^{-t xi^2 + i t xi^3} G(z, t), the full time factor of the interaction at
// (xi, xi1). When e^{-zt} would overflow the product is rewritten as
// (S(xi) - S(xi1) S(xi - xi1)) / z, whose terms are both bounded.
Complex interaction_kernel(double xi, double xi1, double t, double epsilon) {
  const double a = xi1;
  const double b = xi - xi1;
  const Complex z(-2.0 * a * b, 3.0 * xi * a * b);
  const Complex s_out = semigroup_multiplier(xi, t);
  if (std::abs(z) * t < epsilon) return s_out * time_kernel_series(z, t);
  if (-z.real() * t <= 50.0) return s_out * time_kernel_direct(z, t);
  return (s_out - semigroup_multiplier(a, t) * semigroup_multiplier(b, t)) / z;
}

// Pairs (P_i, P_j) of pieces and the exact set {xi1 in P_i, xi - xi1 in P_j}.
template <class Visit>
void for_each_interaction(const PiecewiseConstSpectrum& h, double xi, Visit&& visit) {
  for (const auto& pi : h.pieces()) {
    if (pi.amplitude == Complex{}) continue;
    for (const auto& pj : h.pieces()) {
      if (pj.amplitude == Complex{}) continue;
      const auto set = intersect(IntervalSet(pi.support.lo, pi.support.hi),
                                 IntervalSet(pj.support.lo, pj.support.hi).reflected_about(xi));
      for (const auto& iv : set.intervals()) {
        if (iv.length() > 0.0) visit(iv, pi.amplitude * pj.amplitude);
      }
    }
  }
}

// Trapezoid self-convolution on a zero-aligned grid:
//   out[j] = dxi * sum_i w_i u[i] u[j - i + m0]
std::vector<Complex> grid_self_convolution(const SampledSpectrum& u) {
  const auto& g = u.grid();
  if (!g.zero_aligned()) {
    throw DomainError("grid convolution needs xi_min to be an integer multiple of the spacing");
  }
  const long n = static_cast<long>(g.size());
  const long m0 = g.zero_offset();
  std::vector<Complex> out(g.size());
  const auto [lo, hi] = u.nonzero_range();
  if (lo > hi) return out;
  const long out_lo = lo + lo - m0;
  const long out_hi = hi + hi - m0;
  if (out_lo < 0 || out_hi >= n) {
    throw SupportOverflow("convolution support [" + std::to_string(2.0 * g.at(static_cast<std::size_t>(lo))) +
                          ", " + std::to_string(2.0 * g.at(static_cast<std::size_t>(hi))) +
                          "] leaves the frequency grid [" + std::to_string(g.xi_min()) + ", " +
                          std::to_string(g.xi_max()) + "]");
  }
  const auto v = u.values();
  const double dxi = g.spacing();
  for (long j = out_lo; j <= out_hi; ++j) {
    const long i_lo = std::max(lo, j + m0 - hi);
    const long i_hi = std::min(hi, j + m0 - lo);
    Complex acc{};
    for (long i = i_lo; i <= i_hi; ++i) {
      const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      acc += w * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j - i + m0)];
    }
    out[static_cast<std::size_t>(j)] = dxi * acc;
  }
  return out;
}

// (i xi) (u * u)(xi) on the grid.
std::vector<Complex> derivative_of_square(const SampledSpectrum& u) {
  auto conv = grid_self_convolution(u);
  const auto& g = u.grid();
  for (std::size_t k = 0; k < conv.size(); ++k) conv[k] *= kI * g.at(k);
  return conv;
}

}  // namespace

Complex semigroup_multiplier(double xi, double t) {
  return std::exp(Complex(-t * xi * xi, t * xi * xi * xi));
}

SampledSpectrum semigroup_apply(const SampledSpectrum& f, double t) {
  require_nonnegative_time(t);
  std::vector<Complex> out(f.values().begin(), f.values().end());
  if (t == 0.0) return SampledSpectrum(f.grid(), std::move(out));
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k] != Complex{}) out[k] *= semigroup_multiplier(f.grid().at(k), t);
  }
  return SampledSpectrum(f.grid(), std::move(out));
}

SampledSpectrum semigroup_apply(const PiecewiseConstSpectrum& f, double t, const FrequencyGrid& grid) {
  require_nonnegative_time(t);
  return semigroup_apply(sample(f, grid), t);
}

ExponentGaps exponent_gaps(double xi, double xi1) {
  const double rest = xi - xi1;
  ExponentGaps g;
  g.quadratic_gap = xi1 * xi1 + rest * rest - xi * xi;
  g.cubic_gap = xi1 * xi1 * xi1 + rest * rest * rest - xi * xi * xi;
  g.quadratic_factored = -2.0 * xi1 * rest;
  g.cubic_factored = -3.0 * xi * xi1 * rest;
  g.denominator = Complex(g.quadratic_factored, -g.cubic_factored);
  g.quadratic_mismatch = std::abs(g.quadratic_gap - g.quadratic_factored);
  g.cubic_mismatch = std::abs(g.cubic_gap - g.cubic_factored);
  return g;
}

Complex expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (y == 0.0) return {std::expm1(x), 0.0};
  const double half_sin = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

Complex time_kernel_series(Complex z, double t) {
  const Complex w = -z * t;
  Complex term{1.0, 0.0};
  Complex sum = term;
  for (int k = 1; k < 64; ++k) {
    term *= w / static_cast<double>(k + 1);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return t * sum;
}

Complex time_kernel_direct(Complex z, double t) {
  if (z == Complex{}) return {t, 0.0};
  return -expm1(-z * t) / z;
}

Complex time_kernel(Complex z, double t, double epsilon) {
  if (t == 0.0) return {};
  if (std::abs(z) * t < epsilon) return time_kernel_series(z, t);
  return time_kernel_direct(z, t);
}

SampledSpectrum duhamel_rhs(const SampledSpectrum& u, double t, double tau) {
  require_nonnegative_time(t);
  if (!(tau >= 0.0 && tau <= t)) {
    throw DomainError("tau = " + std::to_string(tau) + " outside [0, " + std::to_string(t) + "]");
  }
  auto out = derivative_of_square(u);
  const double lag = t - tau;
  if (lag > 0.0) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k] != Complex{}) out[k] *= semigroup_multiplier(u.grid().at(k), lag);
    }
  }
  return SampledSpectrum(u.grid(), std::move(out));
}

SampledSpectrum picard_iterate(const SampledSpectrum& u0, int iterations, const PicardConfig& config) {
  require_nonnegative_time(config.t);
  if (iterations < 1) throw DomainError("Picard iteration count must be at least 1");
  if (config.time_steps < 1) throw DomainError("time_steps must be positive");
  if (!(u0.grid() == config.grid)) throw DomainError("initial data must be sampled on the Picard grid");
  const auto& grid = config.grid;
  const std::size_t npts = grid.size();
  const int steps = config.time_steps;
  const double t = config.t;
  const double h = t / steps;
  if (iterations == 1 || t == 0.0) return semigroup_apply(u0, t);

  auto tau_at = [&](int m) { return m == steps ? t : h * static_cast<double>(m); };
  auto trapezoid_weight = [](int j, int m) { return (j == 0 || j == m) ? 0.5 : 1.0; };

  if (iterations == 2) {
    // u^(2)(t) = S(t)u0 - 1/2 int_0^t S(t - tau) d_x [S(tau)u0]^2 dtau
    std::vector<Complex> acc(npts);
    for (int j = 0; j <= steps; ++j) {
      const auto source = derivative_of_square(semigroup_apply(u0, tau_at(j)));
      const double lag = t - tau_at(j);
      const double w = trapezoid_weight(j, steps);
      for (std::size_t p = 0; p < npts; ++p) {
        if (source[p] != Complex{}) acc[p] += w * semigroup_multiplier(grid.at(p), lag) * source[p];
      }
    }
    auto out = semigroup_apply(u0, t);
    std::vector<Complex> values(out.values().begin(), out.values().end());
    for (std::size_t p = 0; p < npts; ++p) values[p] -= 0.5 * h * acc[p];
    return SampledSpectrum(grid, std::move(values));
  }

  // Multiplier tables S(tau_m); S(tau_m - tau_j) = S(tau_{m-j}) on the
  // uniform time grid.
  std::vector<std::vector<Complex>> flow(static_cast<std::size_t>(steps) + 1, std::vector<Complex>(npts));
  for (int m = 0; m <= steps; ++m) {
    for (std::size_t k = 0; k < npts; ++k) flow[m][k] = semigroup_multiplier(grid.at(k), tau_at(m));
  }
  auto free_at = [&](int m) {
    std::vector<Complex> v(npts);
    for (std::size_t k = 0; k < npts; ++k) v[k] = flow[m][k] * u0[k];
    return v;
  };

  // iterate[m] = u^(k)(tau_m)
  std::vector<std::vector<Complex>> iterate;
  iterate.reserve(static_cast<std::size_t>(steps) + 1);
  for (int m = 0; m <= steps; ++m) iterate.push_back(free_at(m));

  for (int k = 1; k < iterations; ++k) {
    std::vector<std::vector<Complex>> source;
    source.reserve(iterate.size());
    for (int m = 0; m <= steps; ++m) {
      source.push_back(derivative_of_square(SampledSpectrum(grid, iterate[m])));
    }
    const int m_first = (k + 1 == iterations) ? steps : 0;
    for (int m = m_first; m <= steps; ++m) {
      std::vector<Complex> next = free_at(m);
      if (m > 0) {
        for (std::size_t p = 0; p < npts; ++p) {
          Complex acc{};
          for (int j = 0; j <= m; ++j) acc += trapezoid_weight(j, m) * flow[m - j][p] * source[j][p];
          next[p] -= 0.5 * h * acc;
        }
      }
      iterate[m] = std::move(next);
    }
  }
  return SampledSpectrum(grid, std::move(iterate[steps]));
}

SampledSpectrum picard_iterate(const PiecewiseConstSpectrum& u0, int iterations, const PicardConfig& config) {
  return picard_iterate(sample(u0, config.grid), iterations, config);
}

int resolved_density(double xi, double t, const Interval& span, int base) {
  const double a = span.lo;
  const double b = span.hi;
  // xi1^2 + (xi - xi1)^2 is minimal at xi1 = xi / 2.
  const double mid = std::clamp(0.5 * xi, a, b);
  const double min_energy = mid * mid + (xi - mid) * (xi - mid);
  if (t * (min_energy - xi * xi) > 40.0) return base;
  const double slope = std::max(std::abs(2.0 * a - xi), std::abs(2.0 * b - xi));
  const double phase_rate = 3.0 * t * std::abs(xi) * slope;
  const double decay_rate = 2.0 * t * slope;
  const double wanted = std::ceil(phase_rate + decay_rate);
  return static_cast<int>(std::clamp(wanted, static_cast<double>(base), 65536.0));
}

Complex second_iterate_closed_form(const PiecewiseConstSpectrum& h, double t, double xi,
                                   const ClosedFormOptions& options) {
  require_nonnegative_time(t);
  if (t == 0.0 || xi == 0.0) return {};
  Complex total{};
  for_each_interaction(h, xi, [&](const Interval& iv, Complex amplitude) {
    const long panels = panel_count(iv.length(), resolved_density(xi, t, iv, options.quad_density));
    total += amplitude * integrate_panels(
                             [&](double xi1) { return interaction_kernel(xi, xi1, t, options.epsilon); }, iv.lo,
                             iv.hi, panels);
  });
  return kI * xi * total;
}

SampledSpectrum second_iterate_on_grid(const PiecewiseConstSpectrum& h, double t, const FrequencyGrid& grid,
                                       const ClosedFormOptions& options) {
  std::vector<Complex> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = second_iterate_closed_form(h, t, grid.at(k), options);
  return SampledSpectrum(grid, std::move(values));
}

OracleResult second_iterate_oracle(const PiecewiseConstSpectrum& h, double t, double xi,
                                   const OracleOptions& options) {
  require_nonnegative_time(t);
  if (options.initial_steps < 2 || options.initial_steps % 2 != 0) {
    throw DomainError("Simpson oracle needs an even initial step count");
  }
  OracleResult result;
  if (t == 0.0 || xi == 0.0) {
    result.converged = true;
    return result;
  }

  // S(xi1, tau) S(xi - xi1, tau) = exp(tau * rate_k) at each Gauss node.
  std::vector<Complex> weights;
  std::vector<Complex> rates;
  for_each_interaction(h, xi, [&](const Interval& iv, Complex amplitude) {
    const long panels = panel_count(iv.length(), resolved_density(xi, t, iv, options.quad_density));
    const double width = iv.length() / static_cast<double>(panels);
    const double half = 0.5 * width;
    for (long p = 0; p < panels; ++p) {
      const double mid = iv.lo + (static_cast<double>(p) + 0.5) * width;
      for (int i = 0; i < 8; ++i) {
        const double node = i < 4 ? -gl8::kNodes[3 - i] : gl8::kNodes[i - 4];
        const double weight = i < 4 ? gl8::kWeights[3 - i] : gl8::kWeights[i - 4];
        const double x1 = mid + half * node;
        const double x2 = xi - x1;
        weights.push_back(amplitude * (half * weight));
        rates.emplace_back(-(x1 * x1 + x2 * x2), x1 * x1 * x1 + x2 * x2 * x2);
      }
    }
  });

  const Complex outer_rate(-xi * xi, xi * xi * xi);
  auto integrand = [&](double tau) {
    Complex conv{};
    for (std::size_t k = 0; k < rates.size(); ++k) conv += weights[k] * std::exp(tau * rates[k]);
    return std::exp((t - tau) * outer_rate) * kI * xi * conv;
  };

  long n = options.initial_steps;
  double step = t / static_cast<double>(n);
  const Complex ends = integrand(0.0) + integrand(t);
  Complex odd{};
  Complex even{};
  for (long j = 1; j < n; ++j) {
    (j % 2 == 1 ? odd : even) += integrand(step * static_cast<double>(j));
  }
  Complex previous = step / 3.0 * (ends + 4.0 * odd + 2.0 * even);
  while (2 * n <= options.max_steps) {
    n *= 2;
    step = t / static_cast<double>(n);
    even += odd;
    odd = {};
    for (long j = 1; j < n; j += 2) odd += integrand(step * static_cast<double>(j));
    const Complex current = step / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    const double change = std::abs(current - previous);
    previous = current;
    result.estimated_error = change;
    if (change <= options.rel_tol * std::abs(current)) {
      result.converged = true;
      break;
    }
  }
  result.value = previous;
  result.steps = static_cast<int>(n);
  return result;
}

}  // namespace amalgam
