// SPDX-License-Identifier: Apache-2.0
#pragma once

// Policyholder best response, canonical Stackelberg equilibrium and
// comparative statics.
//
// Conventions: a t-space sign structure on (0,1) maps to layer space through
// y = F^{-1}(1 - t), which reverses order. Survival probabilities above the
// largest crossing correspond to the lowest layers.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bowley/choquet.hpp"
#include "bowley/distortion.hpp"
#include "bowley/errors.hpp"
#include "bowley/loss.hpp"
#include "bowley/sign_scan.hpp"

namespace bowley {

enum class RegionLabel { Full, None, Tie };

inline const char* to_string(RegionLabel l) {
  switch (l) {
    case RegionLabel::Full: return "FULL";
    case RegionLabel::None: return "NONE";
    case RegionLabel::Tie: return "TIE";
  }
  return "?";
}

/// How kappa is chosen on layers where the policyholder is indifferent.
enum class TiePolicy {
  Retain,          // kappa = 0
  Cede,            // kappa = 1
  InsurerOptimal,  // kappa = 1 where the pricing distortion exceeds S, else 0
};

inline const char* to_string(TiePolicy p) {
  switch (p) {
    case TiePolicy::Retain: return "retain";
    case TiePolicy::Cede: return "cede";
    case TiePolicy::InsurerOptimal: return "insurer";
  }
  return "?";
}

struct Region {
  double lower;
  double upper;
  RegionLabel label;
};

/// Labelled partition of [0,M] plus the t-space sign structure it came from.
struct SignRegionPartition {
  std::vector<Region> regions;
  CrossingSet generator;
};

struct EquilibriumResult {
  DistortionFunction pricing;
  Indemnity indemnity;
  double premium = 0.0;
  double profit = 0.0;        // insurer_profit(kappa*, m, g*)
  double profit_layer = 0.0;  // int (T(S) - S)^+ dy
  double policyholder_risk = 0.0;
  SignRegionPartition partition;
  CrossingSet crossing_set;
};

struct BestResponse {
  Indemnity indemnity;
  SignRegionPartition partition;
};

namespace detail {

// Layer-space regions of a t-space sign structure. `label_of` maps a sign
// class to a region label.
template <typename L>
std::vector<Region> to_regions(const CrossingSet& cs, const LossModel& m, L label_of) {
  std::vector<Region> out;
  const std::size_t k = cs.points.size();
  double lo = 0.0;
  for (std::size_t j = k + 1; j-- > 0;) {
    const double hi = j == 0 ? m.bound() : m.quantile(1.0 - cs.points[j - 1]);
    const RegionLabel lab = label_of(cs.signs[j]);
    if (hi > lo) {
      if (!out.empty() && out.back().label == lab) {
        out.back().upper = hi;
      } else {
        out.push_back({lo, hi, lab});
      }
      lo = hi;
    }
  }
  if (out.empty()) out.push_back({0.0, m.bound(), label_of(cs.signs.front())});
  out.back().upper = m.bound();
  return out;
}

// Labels by the sign of T(S) - S: FULL above the identity, NONE below.
inline std::vector<Region> equilibrium_regions(const CrossingSet& cs, const LossModel& m) {
  return to_regions(cs, m, [](Sign s) {
    switch (s) {
      case Sign::Positive: return RegionLabel::Full;
      case Sign::Negative: return RegionLabel::None;
      default: return RegionLabel::Tie;
    }
  });
}

inline double tie_level(TiePolicy p) { return p == TiePolicy::Cede ? 1.0 : 0.0; }

// Indemnity from labelled regions. Tie regions under InsurerOptimal are split
// by the sign of g(S) - S.
inline Indemnity regions_to_indemnity(const std::vector<Region>& regions, const LossModel& m,
                                      TiePolicy tie, const DistortionFunction& pricing,
                                      int resolution) {
  std::vector<Indemnity::Segment> segs;
  std::vector<Region> pricing_regions;
  bool need_pricing = tie == TiePolicy::InsurerOptimal &&
                      std::any_of(regions.begin(), regions.end(),
                                  [](const Region& r) { return r.label == RegionLabel::Tie; });
  if (need_pricing) {
    pricing_regions = to_regions(crossing_set(pricing, resolution), m, [](Sign s) {
      return s == Sign::Positive ? RegionLabel::Full : RegionLabel::None;
    });
  }
  for (const auto& r : regions) {
    if (r.label == RegionLabel::Full) {
      segs.push_back({r.upper, 1.0});
    } else if (r.label == RegionLabel::None) {
      segs.push_back({r.upper, 0.0});
    } else if (!need_pricing) {
      segs.push_back({r.upper, tie_level(tie)});
    } else {
      for (const auto& p : pricing_regions) {
        const double lo = std::max(r.lower, p.lower);
        const double hi = std::min(r.upper, p.upper);
        if (hi > lo) segs.push_back({hi, p.label == RegionLabel::Full ? 1.0 : 0.0});
      }
    }
  }
  return Indemnity(m.bound(), std::move(segs));
}

}  // namespace detail

/// Policyholder's optimal indemnity when insurance is priced with g: full
/// cover of layers where g(S) < T(S), none where g(S) > T(S), tie policy
/// elsewhere.
inline BestResponse best_response(const DistortionFunction& T, const DistortionFunction& g,
                                  const LossModel& m, TiePolicy tie = TiePolicy::Retain,
                                  int resolution = 4096) {
  auto cs = difference_crossing_set(g, T, resolution);
  auto regions = detail::to_regions(cs, m, [](Sign s) {
    switch (s) {
      case Sign::Negative: return RegionLabel::Full;
      case Sign::Positive: return RegionLabel::None;
      default: return RegionLabel::Tie;
    }
  });
  auto ind = detail::regions_to_indemnity(regions, m, tie, g, resolution);
  return {std::move(ind), {std::move(regions), std::move(cs)}};
}

/// Equilibrium profit in layer form, int_0^M (T(S(y)) - S(y))^+ dy.
inline double equilibrium_profit_quantile_form(const DistortionFunction& T, const LossModel& m,
                                               int resolution = 4096) {
  const auto cs = crossing_set(T, resolution);
  const auto cuts = smooth_cuts(m, nullptr, {&T}, cs.points);
  return integrate_piecewise(
      [&](double y) {
        const double s = m.survival(y);
        return std::max(0.0, T(s) - s);
      },
      0.0, m.bound(), cuts);
}

inline constexpr double kRouteTolerance = 1e-7;

/// Canonical Stackelberg equilibrium: pricing g* = T, kappa* = 1 where
/// T(S) > S and 0 where T(S) < S.
inline EquilibriumResult solve(const DistortionFunction& T, const LossModel& m,
                               TiePolicy tie = TiePolicy::Retain, int resolution = 4096) {
  auto cs = crossing_set(T, resolution);
  auto regions = detail::equilibrium_regions(cs, m);
  auto ind = detail::regions_to_indemnity(regions, m, tie, T, resolution);

  const double premium = choquet_of_indemnity(ind, m, T);
  const double profit = insurer_profit(ind, m, T);
  const double layer = equilibrium_profit_quantile_form(T, m, resolution);
  if (std::abs(profit - layer) > kRouteTolerance) {
    throw RouteDisagreement("equilibrium profit routes disagree for " + T.describe() + " / " +
                                m.describe(),
                            profit, layer);
  }
  const double risk = policyholder_objective(ind, m, T, T);
  return EquilibriumResult{T,      std::move(ind), premium, profit, layer, risk,
                           {regions, cs}, cs};
}

struct ComparisonReport {
  EquilibriumResult first;
  EquilibriumResult second;
  bool indemnity_ordered = false;
  double max_indemnity_violation = 0.0;  // max over the grid of I1 - I2
  bool profit_ordered = false;
  double profit_violation = 0.0;  // V1 - V2
};

/// Equilibria for two policyholders with T2 >= T1 and the pointwise checks
/// I1 <= I2, V1 <= V2 (both with 1e-8 slack). Ties are retained on both sides.
inline ComparisonReport compare(const DistortionFunction& T1, const DistortionFunction& T2,
                                const LossModel& m, int resolution = 4096) {
  if (!dominates(T2, T1, resolution)) {
    throw PreconditionError("compare: " + T2.describe() + " does not dominate " + T1.describe());
  }
  auto e1 = solve(T1, m, TiePolicy::Retain, resolution);
  auto e2 = solve(T2, m, TiePolicy::Retain, resolution);
  double worst = -INFINITY;
  for (int i = 0; i <= resolution; ++i) {
    const double x = m.bound() * i / resolution;
    worst = std::max(worst, e1.indemnity(x) - e2.indemnity(x));
  }
  ComparisonReport r{std::move(e1), std::move(e2)};
  r.max_indemnity_violation = worst;
  r.indemnity_ordered = worst <= 1e-8;
  r.profit_violation = r.first.profit - r.second.profit;
  r.profit_ordered = r.profit_violation <= 1e-8;
  return r;
}

}  // namespace bowley
