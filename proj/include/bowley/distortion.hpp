// SPDX-License-Identifier: Apache-2.0
#pragma once

// Distortion functions T : [0,1] -> [0,1], non-decreasing with T(0) = 0 and
// T(1) = 1. Differentiability is not required; downstream integrals only ever
// evaluate T itself.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bowley/errors.hpp"
#include "bowley/sign_scan.hpp"

namespace bowley {

class DistortionFunction;

namespace distortion {

inline constexpr double kDomainSlack = 1e-12;

struct Identity {};

/// T(t) = min(1, t / (1 - alpha)).
struct TVaR {
  double alpha;
};

/// T(t) = 1 for t > 1 - alpha, else 0. The jump point itself maps to 0.
struct VaR {
  double alpha;
};

/// Tversky-Kahneman weighting T(t) = t^theta / (t^theta + (1-t)^theta)^(1/theta).
struct TverskyKahneman {
  double theta;
};

/// Linear interpolation through (t, T(t)) knots from (0,0) to (1,1).
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> knots;
};

/// Linear interpolation of values on the uniform grid t_i = i / (n - 1).
struct Tabulated {
  std::vector<double> values;
};

/// t -> 1 - base(1 - t).
struct Conjugate {
  std::shared_ptr<const DistortionFunction> base;
};

}  // namespace distortion

class DistortionFunction {
 public:
  using Variant = std::variant<distortion::Identity, distortion::TVaR, distortion::VaR,
                               distortion::TverskyKahneman, distortion::PiecewiseLinear,
                               distortion::Tabulated, distortion::Conjugate>;

  static DistortionFunction identity() { return DistortionFunction(distortion::Identity{}); }

  static DistortionFunction tvar(double alpha) {
    check_alpha(alpha);
    return DistortionFunction(distortion::TVaR{alpha});
  }

  static DistortionFunction var(double alpha) {
    check_alpha(alpha);
    return DistortionFunction(distortion::VaR{alpha});
  }

  /// Rejects theta outside (0,1] and shapes that fail the monotonicity check
  /// (the family stops being non-decreasing below theta ~ 0.279).
  static DistortionFunction tversky_kahneman(double theta) {
    if (!(theta > 0.0 && theta <= 1.0)) {
      throw InvalidArgument("distortion.theta", "must lie in (0,1], got " + std::to_string(theta));
    }
    DistortionFunction d(distortion::TverskyKahneman{theta});
    if (!d.is_monotone(1 << 14)) {
      throw InvalidArgument("distortion.theta",
                            "Tversky-Kahneman shape " + std::to_string(theta) + " is not monotone");
    }
    return d;
  }

  static DistortionFunction piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw InvalidArgument("distortion.knots", "need at least two knots");
    if (knots.front().first != 0.0 || knots.front().second != 0.0) {
      throw InvalidArgument("distortion.knots", "first knot must be (0,0)");
    }
    if (knots.back().first != 1.0 || knots.back().second != 1.0) {
      throw InvalidArgument("distortion.knots", "last knot must be (1,1)");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
      if (!(knots[i].first > knots[i - 1].first)) {
        throw InvalidArgument("distortion.knots",
                              "abscissae must be strictly increasing at knot " + std::to_string(i));
      }
      if (knots[i].second < knots[i - 1].second - 1e-12) {
        throw InvalidArgument("distortion.knots",
                              "values must be non-decreasing at knot " + std::to_string(i));
      }
      if (knots[i].second < 0.0 || knots[i].second > 1.0) {
        throw InvalidArgument("distortion.knots",
                              "value outside [0,1] at knot " + std::to_string(i));
      }
    }
    return DistortionFunction(distortion::PiecewiseLinear{std::move(knots)});
  }

  static DistortionFunction tabulated(std::vector<double> values) {
    if (values.size() < 2) throw InvalidArgument("distortion.values", "need at least two values");
    if (values.front() != 0.0) throw InvalidArgument("distortion.values", "first value must be 0");
    if (values.back() != 1.0) throw InvalidArgument("distortion.values", "last value must be 1");
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] < values[i - 1] - 1e-12) {
        throw InvalidArgument("distortion.values",
                              "values must be non-decreasing at index " + std::to_string(i));
      }
      if (values[i] < 0.0 || values[i] > 1.0) {
        throw InvalidArgument("distortion.values",
                              "value outside [0,1] at index " + std::to_string(i));
      }
    }
    return DistortionFunction(distortion::Tabulated{std::move(values)});
  }

  const Variant& family() const noexcept { return family_; }

  /// T(t). Exact 0 at t = 0 and exact 1 at t = 1.
  double operator()(double t) const {
    if (t < -distortion::kDomainSlack || t > 1.0 + distortion::kDomainSlack || std::isnan(t)) {
      throw DomainError("distortion evaluated outside [0,1]: t = " + std::to_string(t));
    }
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::clamp(eval_interior(t), 0.0, 1.0);
  }

  /// Interior points where T is not smooth (kinks or jumps).
  std::vector<double> breakpoints() const {
    return std::visit(
        [](const auto& d) -> std::vector<double> {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, distortion::TVaR> || std::is_same_v<D, distortion::VaR>) {
            return {1.0 - d.alpha};
          } else if constexpr (std::is_same_v<D, distortion::PiecewiseLinear>) {
            std::vector<double> out;
            for (std::size_t i = 1; i + 1 < d.knots.size(); ++i) out.push_back(d.knots[i].first);
            return out;
          } else if constexpr (std::is_same_v<D, distortion::Tabulated>) {
            std::vector<double> out;
            const double n = static_cast<double>(d.values.size() - 1);
            for (std::size_t i = 1; i + 1 < d.values.size(); ++i) out.push_back(i / n);
            return out;
          } else if constexpr (std::is_same_v<D, distortion::Conjugate>) {
            std::vector<double> out;
            for (double b : d.base->breakpoints()) out.push_back(1.0 - b);
            std::reverse(out.begin(), out.end());
            return out;
          } else {
            return {};
          }
        },
        family_);
  }

  bool is_monotone(int resolution) const {
    double prev = 0.0;
    for (int i = 1; i <= resolution; ++i) {
      const double v = (*this)(static_cast<double>(i) / resolution);
      if (v < prev - 1e-12) return false;
      prev = v;
    }
    return true;
  }

  std::string describe() const {
    return std::visit(
        [](const auto& d) -> std::string {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, distortion::Identity>) return "identity";
          else if constexpr (std::is_same_v<D, distortion::TVaR>) return "tvar(" + fmt(d.alpha) + ")";
          else if constexpr (std::is_same_v<D, distortion::VaR>) return "var(" + fmt(d.alpha) + ")";
          else if constexpr (std::is_same_v<D, distortion::TverskyKahneman>) return "tk(" + fmt(d.theta) + ")";
          else if constexpr (std::is_same_v<D, distortion::PiecewiseLinear>)
            return "piecewise(" + std::to_string(d.knots.size()) + " knots)";
          else if constexpr (std::is_same_v<D, distortion::Tabulated>)
            return "tabulated(" + std::to_string(d.values.size()) + " values)";
          else return "conjugate(" + d.base->describe() + ")";
        },
        family_);
  }

 private:
  explicit DistortionFunction(Variant v) : family_(std::move(v)) {}
  friend DistortionFunction conjugate(const DistortionFunction& d);

  static void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw InvalidArgument("distortion.alpha", "must lie in (0,1), got " + std::to_string(alpha));
    }
  }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }

  double eval_interior(double t) const {
    return std::visit(
        [t](const auto& d) -> double {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, distortion::Identity>) {
            return t;
          } else if constexpr (std::is_same_v<D, distortion::TVaR>) {
            return std::min(1.0, t / (1.0 - d.alpha));
          } else if constexpr (std::is_same_v<D, distortion::VaR>) {
            return t > 1.0 - d.alpha ? 1.0 : 0.0;
          } else if constexpr (std::is_same_v<D, distortion::TverskyKahneman>) {
            const double a = std::pow(t, d.theta);
            const double b = std::pow(1.0 - t, d.theta);
            return a / std::pow(a + b, 1.0 / d.theta);
          } else if constexpr (std::is_same_v<D, distortion::PiecewiseLinear>) {
            const auto& k = d.knots;
            auto it = std::upper_bound(k.begin(), k.end(), t,
                                       [](double x, const auto& knot) { return x < knot.first; });
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = (t - lo.first) / (hi.first - lo.first);
            return lo.second + w * (hi.second - lo.second);
          } else if constexpr (std::is_same_v<D, distortion::Tabulated>) {
            const auto& v = d.values;
            const double pos = t * static_cast<double>(v.size() - 1);
            const auto i = std::min(static_cast<std::size_t>(pos), v.size() - 2);
            const double w = pos - static_cast<double>(i);
            return v[i] + w * (v[i + 1] - v[i]);
          } else {
            return 1.0 - (*d.base)(1.0 - t);
          }
        },
        family_);
  }

  Variant family_;
};

/// t -> 1 - T(1 - t). Involutive: conjugating a conjugate returns the original.
inline DistortionFunction conjugate(const DistortionFunction& d) {
  if (std::holds_alternative<distortion::Identity>(d.family())) return d;
  if (const auto* c = std::get_if<distortion::Conjugate>(&d.family())) return *c->base;
  return DistortionFunction(
      distortion::Conjugate{std::make_shared<const DistortionFunction>(d)});
}

/// Sign structure of T(t) - t on (0,1).
inline CrossingSet crossing_set(const DistortionFunction& d, int resolution = 4096) {
  ScanOptions opt;
  opt.resolution = resolution;
  const auto snaps = d.breakpoints();
  return scan_sign_changes([&d](double t) { return d(t) - t; }, opt, snaps);
}

/// Sign structure of a(t) - b(t) on (0,1).
inline CrossingSet difference_crossing_set(const DistortionFunction& a, const DistortionFunction& b,
                                           int resolution = 4096) {
  ScanOptions opt;
  opt.resolution = resolution;
  auto snaps = a.breakpoints();
  const auto more = b.breakpoints();
  snaps.insert(snaps.end(), more.begin(), more.end());
  return scan_sign_changes([&](double t) { return a(t) - b(t); }, opt, snaps);
}

/// True iff d2(t) >= d1(t) - 1e-10 on the uniform grid.
inline bool dominates(const DistortionFunction& d2, const DistortionFunction& d1,
                      int resolution = 4096) {
  for (int i = 0; i <= resolution; ++i) {
    const double t = static_cast<double>(i) / resolution;
    if (d2(t) < d1(t) - 1e-10) return false;
  }
  return true;
}

/// Weak risk aversion: T(t) >= t on the grid.
inline bool is_weakly_risk_averse(const DistortionFunction& d, int resolution = 4096) {
  return dominates(d, DistortionFunction::identity(), resolution);
}

/// Grid check of concavity (strong risk aversion) via second differences.
inline bool is_concave(const DistortionFunction& d, int resolution = 4096) {
  double prev = d(0.0);
  double cur = d(1.0 / resolution);
  for (int i = 2; i <= resolution; ++i) {
    const double next = d(static_cast<double>(i) / resolution);
    if (next - 2.0 * cur + prev > 1e-10) return false;
    prev = cur;
    cur = next;
  }
  return true;
}

}  // namespace bowley
