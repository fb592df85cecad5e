#include "amalgam/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "amalgam/errors.hpp"

namespace amalgam {

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw DomainError("interval endpoints must be finite");
    }
    if (iv.lo > iv.hi) {
      throw DomainError("interval [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                        "] has lo > hi");
    }
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

double IntervalSet::measure() const {
  double total = 0.0;
  for (const auto& iv : intervals_) total += iv.length();
  return total;
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  return std::prev(it)->contains(x);
}

IntervalSet IntervalSet::reflected() const { return reflected_about(0.0); }

IntervalSet IntervalSet::reflected_about(double c) const {
  std::vector<Interval> out;
  out.reserve(intervals_.size());
  for (const auto& iv : intervals_) out.push_back({c - iv.hi, c - iv.lo});
  return IntervalSet(std::move(out));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  auto ia = a.intervals();
  auto ib = b.intervals();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ia.size() && j < ib.size()) {
    const double lo = std::max(ia[i].lo, ib[j].lo);
    const double hi = std::min(ia[i].hi, ib[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (ia[i].hi < ib[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all(a.intervals().begin(), a.intervals().end());
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalSet(std::move(all));
}

}  // namespace amalgam
