// SPDX-License-Identifier: Apache-2.0
#pragma once

// Sign structure of a scalar function on (0,1): uniform scanning followed by
// bisection of every bracket where the sign class changes.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "bowley/errors.hpp"

namespace bowley {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

inline char sign_char(Sign s) {
  switch (s) {
    case Sign::Negative: return '-';
    case Sign::Zero: return '0';
    case Sign::Positive: return '+';
  }
  return '?';
}

/// Points in (0,1) where a function changes sign class, with the class on each
/// open interval between them. `signs.size() == points.size() + 1`.
struct CrossingSet {
  std::vector<double> points;
  std::vector<Sign> signs;

  /// Sign class on the interval containing t (t strictly between points).
  Sign sign_at(double t) const {
    auto it = std::upper_bound(points.begin(), points.end(), t);
    return signs[static_cast<std::size_t>(it - points.begin())];
  }
};

struct ScanOptions {
  int resolution = 4096;
  double zero_tolerance = 1e-10;
  double bisection_tolerance = 1e-10;
  /// Known kinks/jumps of the scanned function; a bisected root lying within
  /// `snap_distance` of one of them is replaced by it.
  double snap_distance = 1e-9;
};

namespace detail {

inline Sign classify(double v, double tol) {
  if (std::isnan(v)) throw DomainError("sign scan: function returned NaN");
  if (v > tol) return Sign::Positive;
  if (v < -tol) return Sign::Negative;
  return Sign::Zero;
}

// Bisects [lo, hi] where `lo_class != hi_class`. When both ends are non-zero the
// strict sign of f drives the bisection; otherwise the tolerance class does.
template <typename F>
double bisect_class_change(F& f, double lo, double hi, Sign lo_class, Sign hi_class,
                           const ScanOptions& opt) {
  const bool strict = lo_class != Sign::Zero && hi_class != Sign::Zero;
  while (hi - lo > opt.bisection_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = f(mid);
    Sign c;
    if (strict) {
      if (v == 0.0) return mid;
      c = v > 0.0 ? Sign::Positive : Sign::Negative;
    } else {
      c = classify(v, opt.zero_tolerance);
    }
    if (c == lo_class) {
      lo = mid;
    } else if (c == hi_class) {
      hi = mid;
    } else {
      // Third class inside the bracket (zero band of a strict crossing): the
      // band sits at the root.
      return mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double snap(double t, std::span<const double> snap_points, double distance) {
  double best = t;
  double best_d = distance;
  for (double s : snap_points) {
    const double d = std::abs(s - t);
    if (d <= best_d) {
      best = s;
      best_d = d;
    }
  }
  return best;
}

}  // namespace detail

/// Scans f on the interior of a uniform grid of `opt.resolution` cells and
/// returns its sign structure. Values with |f| <= zero_tolerance count as zero;
/// an isolated zero grid point between equal signs is a touch and is dropped.
template <typename F>
CrossingSet scan_sign_changes(F f, const ScanOptions& opt = {},
                              std::span<const double> snap_points = {}) {
  if (opt.resolution < 64) throw PreconditionError("sign scan: resolution must be >= 64");
  const int n = opt.resolution;
  const auto grid = [n](int i) { return static_cast<double>(i) / n; };

  std::vector<Sign> cls(static_cast<std::size_t>(n + 1));
  for (int i = 1; i < n; ++i) cls[i] = detail::classify(f(grid(i)), opt.zero_tolerance);

  // Runs of constant class over interior grid indices.
  struct Run {
    int first;
    int last;
    Sign sign;
  };
  std::vector<Run> runs;
  for (int i = 1; i < n; ++i) {
    if (!runs.empty() && runs.back().sign == cls[i]) {
      runs.back().last = i;
    } else {
      runs.push_back({i, i, cls[i]});
    }
  }

  // Single-point zero runs are not intervals: merge them into neighbours.
  std::vector<Run> cleaned;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Run& r = runs[k];
    const bool isolated_zero = r.sign == Sign::Zero && r.first == r.last && runs.size() > 1;
    if (!isolated_zero) {
      if (!cleaned.empty() && cleaned.back().sign == r.sign) {
        cleaned.back().last = r.last;
      } else {
        cleaned.push_back(r);
      }
      continue;
    }
    const bool has_prev = !cleaned.empty();
    const bool has_next = k + 1 < runs.size();
    if (has_prev && has_next && cleaned.back().sign == runs[k + 1].sign) {
      cleaned.back().last = r.last;  // touch: absorbed
    } else if (has_prev) {
      cleaned.back().last = r.last;  // genuine crossing located later by bisection
    } else {
      Run next = runs[k + 1];
      next.first = r.first;
      runs[k + 1] = next;
    }
  }

  CrossingSet out;
  out.signs.push_back(cleaned.front().sign);
  for (std::size_t k = 1; k < cleaned.size(); ++k) {
    const Run& a = cleaned[k - 1];
    const Run& b = cleaned[k];
    // Bracket between the last point of a and the first point of b; classes of
    // the bracket ends are re-evaluated since absorbed zeros may sit there.
    double lo = grid(a.last);
    double hi = grid(b.first);
    if (cls[a.last] != a.sign) lo = grid(a.last - 1);
    double t = detail::bisect_class_change(f, lo, hi, a.sign, b.sign, opt);
    t = detail::snap(t, snap_points, opt.snap_distance);
    if (t <= 0.0 || t >= 1.0) continue;
    if (!out.points.empty() && t <= out.points.back()) continue;
    out.points.push_back(t);
    out.signs.push_back(b.sign);
  }
  return out;
}

}  // namespace bowley
