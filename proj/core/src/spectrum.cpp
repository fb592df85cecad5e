#include "amalgam/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "amalgam/errors.hpp"

namespace amalgam {

FrequencyGrid::FrequencyGrid(double xi_min, double xi_max, std::size_t num_points)
    : xi_min_(xi_min), xi_max_(xi_max), num_points_(num_points), spacing_(0.0) {
  if (!std::isfinite(xi_min) || !std::isfinite(xi_max) || !(xi_min < xi_max)) {
    throw DomainError("frequency grid needs finite xi_min < xi_max");
  }
  if (num_points < 2) throw DomainError("frequency grid needs at least 2 points");
  spacing_ = (xi_max - xi_min) / static_cast<double>(num_points - 1);
}

double FrequencyGrid::at(std::size_t k) const { return xi_min_ + static_cast<double>(k) * spacing_; }

bool FrequencyGrid::zero_aligned() const {
  const double m = -xi_min_ / spacing_;
  return std::abs(m - std::round(m)) <= 1e-9 * std::max(1.0, std::abs(m));
}

long FrequencyGrid::zero_offset() const { return std::lround(-xi_min_ / spacing_); }

PiecewiseConstSpectrum::PiecewiseConstSpectrum(std::vector<Piece> pieces, bool real_valued_field)
    : pieces_(std::move(pieces)), real_valued_field_(real_valued_field) {
  for (const auto& p : pieces_) {
    if (!std::isfinite(p.support.lo) || !std::isfinite(p.support.hi)) {
      throw UnsupportedInput("piece endpoints must be finite (bounded support)");
    }
    if (!(p.support.lo < p.support.hi)) {
      throw DomainError("piece [" + std::to_string(p.support.lo) + ", " + std::to_string(p.support.hi) +
                        "] must have a < b");
    }
    if (!std::isfinite(p.amplitude.real()) || !std::isfinite(p.amplitude.imag())) {
      throw DomainError("piece amplitude must be finite");
    }
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.support.lo < b.support.lo; });
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].support.lo < pieces_[i - 1].support.hi) {
      throw DomainError("pieces overlap at [" + std::to_string(pieces_[i].support.lo) + ", " +
                        std::to_string(pieces_[i - 1].support.hi) + "]");
    }
  }
  if (real_valued_field_) {
    for (const auto& p : pieces_) {
      const bool mirrored = std::any_of(pieces_.begin(), pieces_.end(), [&](const Piece& q) {
        return q.support.lo == -p.support.hi && q.support.hi == -p.support.lo &&
               q.amplitude == std::conj(p.amplitude);
      });
      if (!mirrored) {
        throw DomainError("real_valued_field spectrum is missing the conjugate mirror of piece [" +
                          std::to_string(p.support.lo) + ", " + std::to_string(p.support.hi) + "]");
      }
    }
  }
}

bool PiecewiseConstSpectrum::is_zero() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.amplitude == Complex{}; });
}

IntervalSet PiecewiseConstSpectrum::support() const {
  std::vector<Interval> ivs;
  for (const auto& p : pieces_) {
    if (p.amplitude != Complex{}) ivs.push_back(p.support);
  }
  return IntervalSet(std::move(ivs));
}

Complex PiecewiseConstSpectrum::evaluate(double xi) const {
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    if (it->support.contains(xi)) return it->amplitude;
  }
  return {};
}

PiecewiseConstSpectrum PiecewiseConstSpectrum::scaled(Complex factor) const {
  std::vector<Piece> out = pieces_;
  for (auto& p : out) p.amplitude *= factor;
  // Conjugate symmetry survives only real factors.
  return PiecewiseConstSpectrum(std::move(out), real_valued_field_ && factor.imag() == 0.0);
}

PiecewiseConstSpectrum add(const PiecewiseConstSpectrum& f, const PiecewiseConstSpectrum& g) {
  std::vector<double> cuts;
  for (const auto* s : {&f, &g}) {
    for (const auto& p : s->pieces()) {
      cuts.push_back(p.support.lo);
      cuts.push_back(p.support.hi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const Complex c = f.evaluate(mid) + g.evaluate(mid);
    if (c != Complex{}) out.push_back({{cuts[i], cuts[i + 1]}, c});
  }
  return PiecewiseConstSpectrum(std::move(out), f.real_valued_field() && g.real_valued_field());
}

SampledSpectrum::SampledSpectrum(FrequencyGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("sample count " + std::to_string(values_.size()) + " does not match grid size " +
                      std::to_string(grid_.size()));
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("sampled spectrum contains a non-finite value");
    }
  }
}

SampledSpectrum SampledSpectrum::zeros(const FrequencyGrid& grid) {
  return SampledSpectrum(grid, std::vector<Complex>(grid.size()));
}

Complex SampledSpectrum::evaluate(double xi) const {
  if (!(xi >= grid_.xi_min() && xi <= grid_.xi_max())) {
    throw DomainError("frequency " + std::to_string(xi) + " outside sampled grid [" +
                      std::to_string(grid_.xi_min()) + ", " + std::to_string(grid_.xi_max()) + "]");
  }
  const double pos = (xi - grid_.xi_min()) / grid_.spacing();
  auto k = static_cast<std::size_t>(std::floor(pos));
  if (k + 1 >= values_.size()) return values_.back();
  const double lambda = pos - static_cast<double>(k);
  return values_[k] + lambda * (values_[k + 1] - values_[k]);
}

SampledSpectrum SampledSpectrum::scaled(Complex factor) const {
  std::vector<Complex> out = values_;
  for (auto& v : out) v *= factor;
  return SampledSpectrum(grid_, std::move(out));
}

std::pair<long, long> SampledSpectrum::nonzero_range() const {
  long first = -1;
  long last = -2;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] != Complex{}) {
      if (first < 0) first = static_cast<long>(k);
      last = static_cast<long>(k);
    }
  }
  if (first < 0) return {0, -1};
  return {first, last};
}

SampledSpectrum sample(const PiecewiseConstSpectrum& f, const FrequencyGrid& grid) {
  std::vector<Complex> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = f.evaluate(grid.at(k));
  return SampledSpectrum(grid, std::move(values));
}

Complex evaluate(const Spectrum& f, double xi) {
  return std::visit([xi](const auto& s) { return s.evaluate(xi); }, f);
}

}  // namespace amalgam
