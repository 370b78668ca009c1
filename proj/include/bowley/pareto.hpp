// SPDX-License-Identifier: Apache-2.0
#pragma once

// Pareto optimality and individual rationality of contracts (I, pi).

#include <cmath>
#include <cstdio>
#include <string>

#include "bowley/choquet.hpp"
#include "bowley/equilibrium.hpp"

namespace bowley {

inline constexpr double kIndifferenceTolerance = 1e-7;
inline constexpr double kParetoTolerance = 1e-7;

/// rho_T(X - I(X)) + pi.
inline double policyholder_risk(const Contract& c, const LossModel& m,
                                const DistortionFunction& T) {
  return drm_of_retention(c.indemnity, m, T) + c.premium;
}

/// pi - E[I(X)].
inline double insurer_value(const Contract& c, const LossModel& m) {
  return c.premium - expected_indemnity(c.indemnity, m);
}

/// rho^Pol - V^In = int [(1 - kappa) T(S) + kappa S] dy. Independent of the premium.
inline double pareto_objective(const Contract& c, const LossModel& m,
                               const DistortionFunction& T) {
  const auto& ind = c.indemnity;
  const auto cuts = smooth_cuts(m, &ind, {&T});
  return integrate_piecewise(
      [&](double y) {
        const double k = ind.marginal(y);
        const double s = m.survival(y);
        return (1.0 - k) * T(s) + k * s;
      },
      0.0, m.bound(), cuts);
}

struct WelfareReport {
  double pareto_objective = 0.0;
  bool policyholder_rational = false;
  bool insurer_rational = false;
  double indifference_gap = 0.0;  // rho^Pol(I, pi) - rho^Pol(0, 0)
};

inline WelfareReport welfare(const Contract& c, const LossModel& m, const DistortionFunction& T) {
  WelfareReport r;
  r.pareto_objective = pareto_objective(c, m, T);
  r.indifference_gap = policyholder_risk(c, m, T) - drm_of_loss(m, T);
  r.policyholder_rational = r.indifference_gap <= kIndifferenceTolerance;
  r.insurer_rational = insurer_value(c, m) >= -kIndifferenceTolerance;
  return r;
}

struct ParetoCertificate {
  bool optimal = false;
  double objective = 0.0;
  double minimum = 0.0;  // attained by the bang-bang contract
  double gap = 0.0;      // objective - minimum
};

/// Pareto optimality against the pointwise minimiser of (1 - kappa) T(S) + kappa S,
/// whose value is rho_T(X) - int (T(S) - S)^+ dy.
inline ParetoCertificate is_pareto_optimal(const Contract& c, const LossModel& m,
                                           const DistortionFunction& T, int resolution = 4096) {
  ParetoCertificate cert;
  cert.objective = pareto_objective(c, m, T);
  cert.minimum = drm_of_loss(m, T) - equilibrium_profit_quantile_form(T, m, resolution);
  cert.gap = cert.objective - cert.minimum;
  cert.optimal = cert.gap <= kParetoTolerance;
  return cert;
}

/// Equilibrium supporting a Pareto-optimal contract that leaves the
/// policyholder indifferent: pricing T with premium rho_T(I(X)).
inline EquilibriumResult equilibrium_from_pareto(const Contract& c, const LossModel& m,
                                                 const DistortionFunction& T,
                                                 int resolution = 4096) {
  const auto cert = is_pareto_optimal(c, m, T, resolution);
  if (!cert.optimal) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "contract is not Pareto optimal: gap %.12g > %.1e", cert.gap,
                  kParetoTolerance);
    throw PreconditionError(buf, cert.gap);
  }
  const double gap = policyholder_risk(c, m, T) - drm_of_loss(m, T);
  if (std::abs(gap) > kIndifferenceTolerance) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "policyholder is not indifferent to no trade: indifference gap %.12g", gap);
    throw PreconditionError(buf, gap);
  }

  auto cs = crossing_set(T, resolution);
  auto regions = detail::equilibrium_regions(cs, m);
  EquilibriumResult r{T, c.indemnity, 0.0, 0.0, 0.0, 0.0, {std::move(regions), cs}, cs};
  r.premium = choquet_of_indemnity(c.indemnity, m, T);
  r.profit = insurer_profit(c.indemnity, m, T);
  r.profit_layer = equilibrium_profit_quantile_form(T, m, resolution);
  r.policyholder_risk = policyholder_objective(c.indemnity, m, T, T);
  if (std::abs(r.premium - c.premium) > kIndifferenceTolerance) {
    throw RouteDisagreement("recomputed premium differs from contract premium", r.premium,
                            c.premium);
  }
  return r;
}

}  // namespace bowley
