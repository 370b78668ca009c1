// SPDX-License-Identifier: Apache-2.0
#pragma once

// Functionals of the model in layer form. An indemnity with marginal kappa
// pays I(X) = int_0^M kappa(y) 1{X > y} dy, so every Choquet integral of it
// under a distortion d reduces to int_0^M kappa(y) d(S(y)) dy.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bowley/distortion.hpp"
#include "bowley/errors.hpp"
#include "bowley/loss.hpp"
#include "bowley/quadrature.hpp"

namespace bowley {

/// Indemnity in marginal form: kappa is piecewise constant, taking `level` on
/// (previous upper, upper]. Feasible by construction (0 <= kappa <= 1), which
/// makes both I and the retention x - I(x) non-decreasing and 1-Lipschitz.
class Indemnity {
 public:
  struct Segment {
    double upper;
    double level;
  };

  Indemnity(double bound, std::vector<Segment> segments) : bound_(bound) {
    if (!(bound > 0.0)) throw InvalidArgument("indemnity.bound", "must be positive");
    if (segments.empty()) throw InvalidArgument("indemnity.segments", "empty partition");
    double prev = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      auto s = segments[i];
      if (!(s.upper > prev)) {
        throw InvalidArgument("indemnity.segments",
                              "bounds must be strictly increasing at segment " + std::to_string(i));
      }
      if (s.level < -1e-12 || s.level > 1.0 + 1e-12 || std::isnan(s.level)) {
        throw InvalidArgument("indemnity.segments",
                              "marginal level outside [0,1] at segment " + std::to_string(i));
      }
      s.level = std::clamp(s.level, 0.0, 1.0);
      if (!segments_.empty() && segments_.back().level == s.level) {
        segments_.back().upper = s.upper;
      } else {
        segments_.push_back(s);
      }
      prev = s.upper;
    }
    if (std::abs(segments_.back().upper - bound) > 1e-12 * bound) {
      throw InvalidArgument("indemnity.segments", "last bound must equal the loss bound");
    }
    segments_.back().upper = bound;
    cumulative_.reserve(segments_.size() + 1);
    cumulative_.push_back(0.0);
    double lo = 0.0;
    for (const auto& s : segments_) {
      cumulative_.push_back(cumulative_.back() + s.level * (s.upper - lo));
      lo = s.upper;
    }
  }

  static Indemnity full(double bound) { return Indemnity(bound, {{bound, 1.0}}); }
  static Indemnity none(double bound) { return Indemnity(bound, {{bound, 0.0}}); }

  /// Full cover of the layer (lower, upper], nothing elsewhere.
  static Indemnity layer(double bound, double lower, double upper) {
    std::vector<Segment> s;
    if (lower > 0.0) s.push_back({lower, 0.0});
    s.push_back({upper, 1.0});
    if (upper < bound) s.push_back({bound, 0.0});
    return Indemnity(bound, std::move(s));
  }

  double bound() const noexcept { return bound_; }
  std::span<const Segment> segments() const noexcept { return segments_; }

  double marginal(double y) const {
    auto it = std::lower_bound(segments_.begin(), segments_.end(), y,
                               [](const Segment& s, double v) { return s.upper < v; });
    if (it == segments_.end()) --it;
    return it->level;
  }

  /// I(x) = int_0^x kappa.
  double operator()(double x) const {
    x = std::clamp(x, 0.0, bound_);
    auto it = std::lower_bound(segments_.begin(), segments_.end(), x,
                               [](const Segment& s, double v) { return s.upper < v; });
    if (it == segments_.end()) --it;
    const auto i = static_cast<std::size_t>(it - segments_.begin());
    const double lo = i == 0 ? 0.0 : segments_[i - 1].upper;
    return cumulative_[i] + it->level * (x - lo);
  }

  double retention(double x) const { return std::clamp(x, 0.0, bound_) - (*this)(x); }

  /// Quantile of the retained loss: F^{-1}(t) - I(F^{-1}(t)).
  double retention_quantile(const LossModel& m, double t) const {
    return retention(m.quantile(t));
  }

  std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) out.push_back(segments_[i].upper);
    return out;
  }

 private:
  double bound_;
  std::vector<Segment> segments_;
  std::vector<double> cumulative_;
};

struct Contract {
  Indemnity indemnity;
  double premium;
};

/// Layer-space images y = F^{-1}(1 - t) of t-space breakpoints.
inline std::vector<double> layer_cuts(const LossModel& m, std::span<const double> t_points) {
  std::vector<double> out;
  out.reserve(t_points.size());
  for (double t : t_points) out.push_back(m.quantile(1.0 - t));
  return out;
}

/// Cells of [0,M] on which integrands built from `m`, `ind` and the listed
/// distortions are smooth.
inline std::vector<double> smooth_cuts(const LossModel& m, const Indemnity* ind,
                                       std::initializer_list<const DistortionFunction*> ds,
                                       std::span<const double> extra_t = {}) {
  std::vector<double> cuts = m.breakpoints();
  if (ind) {
    const auto b = ind->breakpoints();
    cuts.insert(cuts.end(), b.begin(), b.end());
  }
  for (const auto* d : ds) {
    const auto y = layer_cuts(m, d->breakpoints());
    cuts.insert(cuts.end(), y.begin(), y.end());
  }
  const auto y = layer_cuts(m, extra_t);
  cuts.insert(cuts.end(), y.begin(), y.end());
  return cuts;
}

/// Integral over [0,M] of kappa(y) * h(y). Indemnity bounds are added to the
/// cuts so kappa is constant on every cell.
template <typename H>
double integrate_weighted(const Indemnity& ind, const LossModel& m, std::vector<double> cuts,
                          H h) {
  const auto b = ind.breakpoints();
  cuts.insert(cuts.end(), b.begin(), b.end());
  return integrate_piecewise(
      [&](double y) {
        const double k = ind.marginal(y);
        return k == 0.0 ? 0.0 : k * h(y);
      },
      0.0, m.bound(), cuts);
}

/// rho_T(X) = int_0^M T(S(y)) dy.
inline double drm_of_loss(const LossModel& m, const DistortionFunction& T) {
  const auto cuts = smooth_cuts(m, nullptr, {&T});
  return integrate_piecewise([&](double y) { return T(m.survival(y)); }, 0.0, m.bound(), cuts);
}

/// Choquet integral of I(X) under the distorted probability d o P.
inline double choquet_of_indemnity(const Indemnity& ind, const LossModel& m,
                                   const DistortionFunction& d) {
  return integrate_weighted(ind, m, smooth_cuts(m, nullptr, {&d}),
                            [&](double y) { return d(m.survival(y)); });
}

/// E[I(X)] = int kappa S dy.
inline double expected_indemnity(const Indemnity& ind, const LossModel& m) {
  return choquet_of_indemnity(ind, m, DistortionFunction::identity());
}

/// rho_T of the retained loss X - I(X) = int (1 - kappa) T(S) dy.
inline double drm_of_retention(const Indemnity& ind, const LossModel& m,
                               const DistortionFunction& T) {
  auto cuts = smooth_cuts(m, &ind, {&T});
  return integrate_piecewise(
      [&](double y) {
        const double k = 1.0 - ind.marginal(y);
        return k == 0.0 ? 0.0 : k * T(m.survival(y));
      },
      0.0, m.bound(), cuts);
}

/// Policyholder's total risk when buying `ind` priced with distortion g:
/// rho_T(R(X)) + Pi_g(I(X)) = int [(1 - kappa) T(S) + kappa g(S)] dy.
inline double policyholder_objective(const Indemnity& ind, const LossModel& m,
                                     const DistortionFunction& T, const DistortionFunction& g) {
  const auto cuts = smooth_cuts(m, &ind, {&T, &g});
  return integrate_piecewise(
      [&](double y) {
        const double k = ind.marginal(y);
        const double s = m.survival(y);
        const double retained = k == 1.0 ? 0.0 : (1.0 - k) * T(s);
        const double ceded = k == 0.0 ? 0.0 : k * g(s);
        return retained + ceded;
      },
      0.0, m.bound(), cuts);
}

/// Insurer's expected profit Pi_g(I(X)) - E[I(X)] = int kappa [g(S) - S] dy.
inline double insurer_profit(const Indemnity& ind, const LossModel& m,
                             const DistortionFunction& g) {
  return integrate_weighted(ind, m, smooth_cuts(m, nullptr, {&g}), [&](double y) {
    const double s = m.survival(y);
    return g(s) - s;
  });
}

}  // namespace bowley
