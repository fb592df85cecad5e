#pragma once

#include <span>
#include <vector>

namespace amalgam {

/// Closed interval [lo, hi] on the frequency line. Degenerate (lo == hi)
/// intervals are points.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of closed intervals, kept sorted with overlapping or
/// touching members merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals);
  IntervalSet(double lo, double hi) : IntervalSet(std::vector<Interval>{{lo, hi}}) {}

  std::span<const Interval> intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  double measure() const;
  bool contains(double x) const;

  /// {-x : x in *this}
  IntervalSet reflected() const;
  /// {c - x : x in *this}
  IntervalSet reflected_about(double c) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet unite(const IntervalSet& a, const IntervalSet& b);

}  // namespace amalgam
