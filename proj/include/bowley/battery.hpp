// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fixed sets of distortions and loss models exercised by `verify` and the test
// suites, plus generators of random pointwise-dominated distortion pairs.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bowley/distortion.hpp"
#include "bowley/loss.hpp"
#include "bowley/oracle.hpp"

namespace bowley::battery {

inline DistortionFunction sampled(const DistortionFunction& d, int points) {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v[i] = d(static_cast<double>(i) / (points - 1));
  v.front() = 0.0;
  v.back() = 1.0;
  return DistortionFunction::tabulated(std::move(v));
}

inline std::vector<DistortionFunction> distortions() {
  return {
      DistortionFunction::identity(),
      DistortionFunction::tvar(0.9),
      DistortionFunction::tvar(0.5),
      DistortionFunction::var(0.9),
      DistortionFunction::var(0.75),
      DistortionFunction::tversky_kahneman(0.3),
      DistortionFunction::tversky_kahneman(0.5),
      DistortionFunction::tversky_kahneman(0.8),
      // S-shaped: below the identity first, then above.
      DistortionFunction::piecewise_linear({{0.0, 0.0}, {0.3, 0.1}, {0.6, 0.75}, {1.0, 1.0}}),
      // Coincides with the identity on [0.4, 0.6].
      DistortionFunction::piecewise_linear(
          {{0.0, 0.0}, {0.2, 0.3}, {0.4, 0.4}, {0.6, 0.6}, {0.8, 0.7}, {1.0, 1.0}}),
      sampled(DistortionFunction::tversky_kahneman(0.6), 129),
  };
}

inline bool is_var(const DistortionFunction& d) {
  return std::holds_alternative<distortion::VaR>(d.family());
}

inline LossModel tabulated_loss() {
  // Piecewise-linear CDF of a triangular-ish shape on [0, 10].
  std::vector<double> cdf(21);
  for (int i = 0; i <= 20; ++i) {
    const double u = i / 20.0;
    cdf[i] = u < 0.5 ? 2.0 * u * u : 1.0 - 2.0 * (1.0 - u) * (1.0 - u);
  }
  return LossModel::tabulated(10.0, std::move(cdf));
}

inline std::vector<LossModel> models() {
  return {
      LossModel::uniform(10.0),
      LossModel::truncated_exponential(0.1, 10.0),
      LossModel::truncated_exponential(0.5, 10.0),
      LossModel::truncated_exponential(1.0, 10.0),
      LossModel::kumaraswamy(1.5, 1.0, 10.0),
      LossModel::kumaraswamy(1.5, 0.5, 10.0),
      LossModel::kumaraswamy(2.0, 0.3, 10.0),
      tabulated_loss(),
  };
}

/// The 20 (T, m) pairs used for the pricing falsification battery.
inline std::vector<std::pair<DistortionFunction, LossModel>> falsification_pairs() {
  const std::vector<DistortionFunction> ds{
      DistortionFunction::tvar(0.9),
      DistortionFunction::var(0.9),
      DistortionFunction::tversky_kahneman(0.5),
      DistortionFunction::tversky_kahneman(0.3),
      DistortionFunction::piecewise_linear({{0.0, 0.0}, {0.3, 0.1}, {0.6, 0.75}, {1.0, 1.0}}),
  };
  const std::vector<LossModel> ms{
      LossModel::uniform(10.0),
      LossModel::truncated_exponential(0.5, 10.0),
      LossModel::kumaraswamy(1.5, 0.5, 10.0),
      tabulated_loss(),
  };
  std::vector<std::pair<DistortionFunction, LossModel>> out;
  for (const auto& d : ds) {
    for (const auto& m : ms) out.emplace_back(d, m);
  }
  return out;
}

inline const std::vector<std::string>& dominance_families() {
  static const std::vector<std::string> f{"tvar", "var", "piecewise", "tk"};
  return f;
}

/// Random (T1, T2) with T2 >= T1 pointwise, drawn from `family`.
inline std::pair<DistortionFunction, DistortionFunction> random_dominated_pair(
    const std::string& family, std::mt19937_64& rng) {
  auto u = [&rng] { return oracle::detail::unit_uniform(rng); };
  if (family == "tvar" || family == "var") {
    const double a1 = 0.05 + 0.9 * u();
    const double a2 = a1 + (0.99 - a1) * u();
    if (family == "tvar") return {DistortionFunction::tvar(a1), DistortionFunction::tvar(a2)};
    return {DistortionFunction::var(a1), DistortionFunction::var(a2)};
  }
  if (family == "piecewise") {
    const int knots = 8;
    std::vector<double> v1(knots - 2);
    for (double& x : v1) x = u();
    std::sort(v1.begin(), v1.end());
    std::vector<std::pair<double, double>> k1{{0.0, 0.0}}, k2{{0.0, 0.0}};
    double prev2 = 0.0;
    for (int i = 1; i + 1 < knots; ++i) {
      const double t = static_cast<double>(i) / (knots - 1);
      const double a = v1[i - 1];
      const double b = std::max(prev2, std::min(1.0, a + 0.3 * u()));
      k1.emplace_back(t, a);
      k2.emplace_back(t, b);
      prev2 = b;
    }
    k1.emplace_back(1.0, 1.0);
    k2.emplace_back(1.0, 1.0);
    return {DistortionFunction::piecewise_linear(std::move(k1)),
            DistortionFunction::piecewise_linear(std::move(k2))};
  }
  if (family == "tk") {
    // Tabulated shapes on a shared grid: T1 = TK(theta1), T2 = max(TK(theta1), TK(theta2)).
    const double th1 = 0.3 + 0.7 * u();
    const double th2 = 0.3 + 0.7 * u();
    const auto a = DistortionFunction::tversky_kahneman(th1);
    const auto b = DistortionFunction::tversky_kahneman(th2);
    const int n = 257;
    std::vector<double> v1(n), v2(n);
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / (n - 1);
      v1[i] = a(t);
      v2[i] = std::max(a(t), b(t));
    }
    return {DistortionFunction::tabulated(std::move(v1)),
            DistortionFunction::tabulated(std::move(v2))};
  }
  throw InvalidArgument("family", "unknown dominance family '" + family + "'");
}

}  // namespace bowley::battery
