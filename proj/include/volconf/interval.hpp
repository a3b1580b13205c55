#pragma once

#include <algorithm>

namespace volconf {

/// Closed interval [lo, hi] on the real line. Degenerate intervals (lo == hi)
/// are single points. Endpoints may leave [0, 1] before clipping.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline double volume(const Interval& interval) { return interval.hi - interval.lo; }

inline double center(const Interval& interval) { return 0.5 * (interval.lo + interval.hi); }

/// Closed on both ends, no tolerance.
inline bool contains(const Interval& interval, double y) { return interval.lo <= y && y <= interval.hi; }

/// Interval of the given width about `mid`.
inline Interval centered(double mid, double width) {
  const double half = 0.5 * width;
  return {mid - half, mid + half};
}

/// Center-preserving dilation: {x : |x - c| <= s * (b - a) / 2}.
inline Interval scale(const Interval& interval, double s) {
  if (interval.lo == interval.hi) return interval;
  return centered(center(interval), s * volume(interval));
}

/// Intersection with [0, 1]. An empty intersection collapses to the nearest
/// endpoint of the unit interval.
inline Interval clip_unit(const Interval& interval) {
  if (interval.hi < 0.0) return {0.0, 0.0};
  if (interval.lo > 1.0) return {1.0, 1.0};
  return {std::max(interval.lo, 0.0), std::min(interval.hi, 1.0)};
}

}  // namespace volconf
