#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "amalgam/intervals.hpp"

namespace amalgam {

using Complex = std::complex<double>;

/// Uniform grid xi_min + k * spacing, k = 0 .. num_points - 1.
class FrequencyGrid {
 public:
  FrequencyGrid(double xi_min, double xi_max, std::size_t num_points);

  double xi_min() const { return xi_min_; }
  double xi_max() const { return xi_max_; }
  std::size_t size() const { return num_points_; }
  double spacing() const { return spacing_; }
  double at(std::size_t k) const;

  /// True when 0 lies on the lattice of the grid, i.e. xi_min is an integer
  /// multiple of the spacing. Grid-side convolution needs this.
  bool zero_aligned() const;
  /// Index offset m0 with xi_min = -m0 * spacing (valid when zero_aligned()).
  long zero_offset() const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  double xi_min_;
  double xi_max_;
  std::size_t num_points_;
  double spacing_;
};

struct Piece {
  Interval support;
  Complex amplitude;
};

/// Compactly supported Fourier transform that is constant on finitely many
/// closed intervals. Pieces are sorted by left endpoint and may only share
/// endpoints.
class PiecewiseConstSpectrum {
 public:
  PiecewiseConstSpectrum() = default;
  explicit PiecewiseConstSpectrum(std::vector<Piece> pieces, bool real_valued_field = false);

  std::span<const Piece> pieces() const { return pieces_; }
  bool real_valued_field() const { return real_valued_field_; }
  bool is_zero() const;
  IntervalSet support() const;

  /// Amplitude of the piece containing xi. At a shared endpoint the piece
  /// with the larger left endpoint wins; 0 outside every piece.
  Complex evaluate(double xi) const;

  PiecewiseConstSpectrum scaled(Complex factor) const;

 private:
  std::vector<Piece> pieces_;
  bool real_valued_field_ = false;
};

/// Sum of two piecewise-constant spectra on the common refinement of their
/// breakpoints. Zero-amplitude pieces are dropped.
PiecewiseConstSpectrum add(const PiecewiseConstSpectrum& f, const PiecewiseConstSpectrum& g);

/// Complex samples of a Fourier transform; linear interpolation in between.
class SampledSpectrum {
 public:
  SampledSpectrum(FrequencyGrid grid, std::vector<Complex> values);
  static SampledSpectrum zeros(const FrequencyGrid& grid);

  const FrequencyGrid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t k) const { return values_[k]; }

  /// Linear interpolation; throws DomainError outside [xi_min, xi_max].
  Complex evaluate(double xi) const;

  SampledSpectrum scaled(Complex factor) const;

  /// Index range [first, last] of nonzero samples, or nullopt-like
  /// first > last when all samples vanish.
  std::pair<long, long> nonzero_range() const;

 private:
  FrequencyGrid grid_;
  std::vector<Complex> values_;
};

/// Point samples of f on the grid (uses evaluate(), so jumps that land on a
/// node take the endpoint convention). Second-order grid convolution wants
/// discontinuities strictly between nodes.
SampledSpectrum sample(const PiecewiseConstSpectrum& f, const FrequencyGrid& grid);

using Spectrum = std::variant<PiecewiseConstSpectrum, SampledSpectrum>;

Complex evaluate(const Spectrum& f, double xi);

}  // namespace amalgam
