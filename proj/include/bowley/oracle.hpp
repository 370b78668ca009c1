// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent verification routes. Nothing here shares the engine's
// breakpoint-aligned quadrature: cells are uniform in y, integrated with
// composite Simpson (tanh-sinh on the two end cells, where survival curves
// may have unbounded slope), and the quantile-form profit is evaluated in t-space
// with tanh-sinh and a finite-difference quantile derivative.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bowley/choquet.hpp"
#include "bowley/distortion.hpp"
#include "bowley/equilibrium.hpp"
#include "bowley/errors.hpp"
#include "bowley/loss.hpp"

namespace bowley::oracle {

/// Uniform partition of [0,M] into n cells with a finite set of admissible
/// marginal levels per cell.
struct DiscreteGrid {
  int n = 1024;
  std::vector<double> levels{0.0, 0.25, 0.5, 0.75, 1.0};

  void validate() const {
    if (n < 16) throw InvalidArgument("grid.n", "need at least 16 cells");
    if (levels.empty()) throw InvalidArgument("grid.levels", "empty level set");
    for (double l : levels) {
      if (!(l >= 0.0 && l <= 1.0)) throw InvalidArgument("grid.levels", "level outside [0,1]");
    }
  }
};

namespace detail {

inline constexpr int kSimpsonPanels = 8;

template <typename F>
double simpson(F& f, double a, double b) {
  const int n = 2 * kSimpsonPanels;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

// Per-cell integrals of a(S(y)) and b(S(y)) - a(S(y)).
struct CellIntegrals {
  std::vector<double> base;
  std::vector<double> delta;
};

template <typename A, typename B>
CellIntegrals cell_integrals(const LossModel& m, int n, A a, B b) {
  CellIntegrals out{std::vector<double>(n), std::vector<double>(n)};
  const double w = m.bound() / n;
  for (int i = 0; i < n; ++i) {
    const double lo = i * w;
    const double hi = i + 1 == n ? m.bound() : (i + 1) * w;
    auto fa = [&](double y) { return a(m.survival(y)); };
    auto fd = [&](double y) {
      const double s = m.survival(y);
      return b(s) - a(s);
    };
    if (i == 0 || i + 1 == n) {
      boost::math::quadrature::tanh_sinh<double> ts;
      out.base[i] = ts.integrate(fa, lo, hi);
      out.delta[i] = ts.integrate(fd, lo, hi);
    } else {
      out.base[i] = simpson(fa, lo, hi);
      out.delta[i] = simpson(fd, lo, hi);
    }
  }
  return out;
}

// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct DiscreteResponse {
  Indemnity indemnity;
  double objective;
};

/// Exhaustive per-cell minimisation of the policyholder objective over the
/// grid's level set. Ties resolve to the lowest level.
inline DiscreteResponse discrete_best_response(const DistortionFunction& T,
                                               const DistortionFunction& g, const LossModel& m,
                                               const DiscreteGrid& grid) {
  grid.validate();
  auto levels = grid.levels;
  std::sort(levels.begin(), levels.end());
  const auto cells = detail::cell_integrals(m, grid.n, T, g);
  std::vector<Indemnity::Segment> segs;
  double objective = 0.0;
  const double w = m.bound() / grid.n;
  for (int i = 0; i < grid.n; ++i) {
    double best = levels.front();
    double best_val = best * cells.delta[i];
    for (double l : levels) {
      const double v = l * cells.delta[i];
      if (v < best_val) {
        best = l;
        best_val = v;
      }
    }
    objective += cells.base[i] + best_val;
    segs.push_back({i + 1 == grid.n ? m.bound() : (i + 1) * w, best});
  }
  return {Indemnity(m.bound(), std::move(segs)), objective};
}

/// Minimal Pareto objective int [(1 - kappa) T(S) + kappa S] over discrete contracts.
inline double discrete_pareto_scan(const LossModel& m, const DistortionFunction& T,
                                   const DiscreteGrid& grid) {
  grid.validate();
  const auto cells =
      detail::cell_integrals(m, grid.n, T, [](double s) { return s; });
  double total = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (double l : grid.levels) best = std::min(best, l * cells.delta[i]);
    total += cells.base[i] + best;
  }
  return total;
}

/// Monotone piecewise-linear distortion on `knots` equally spaced abscissae
/// with sorted uniform interior values.
inline DistortionFunction sample_pricing_distortion(std::mt19937_64& rng, int knots) {
  std::vector<double> v(static_cast<std::size_t>(knots - 2));
  for (double& x : v) x = detail::unit_uniform(rng);
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> k;
  k.emplace_back(0.0, 0.0);
  for (int i = 1; i + 1 < knots; ++i) {
    k.emplace_back(static_cast<double>(i) / (knots - 1), v[static_cast<std::size_t>(i - 1)]);
  }
  k.emplace_back(1.0, 1.0);
  return DistortionFunction::piecewise_linear(std::move(k));
}

struct PricingSearch {
  double best_profit = -std::numeric_limits<double>::infinity();
  int best_trial = -1;
  std::vector<double> trace;  // profit per trial, in trial order
};

/// Falsification search: profit the insurer earns from random monotone pricing
/// distortions when the policyholder best-responds with insurer-optimistic ties.
inline PricingSearch random_pricing_search(const DistortionFunction& T, const LossModel& m,
                                           int trials, int knots, std::uint64_t seed,
                                           int resolution = 4096) {
  if (trials < 1) throw PreconditionError("random_pricing_search: trials must be >= 1");
  if (knots < 4) throw PreconditionError("random_pricing_search: knots must be >= 4");
  std::mt19937_64 rng(seed);
  PricingSearch out;
  out.trace.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    const auto g = sample_pricing_distortion(rng, knots);
    const auto br = best_response(T, g, m, TiePolicy::InsurerOptimal, resolution);
    const double p = insurer_profit(br.indemnity, m, g);
    out.trace.push_back(p);
    if (p > out.best_profit) {
      out.best_profit = p;
      out.best_trial = i;
    }
  }
  return out;
}

/// Equilibrium profit int_0^1 (F^{-1})'(t) (t - T~(t))^+ dt evaluated directly
/// in t-space, with the quantile derivative taken by central differences.
inline double quantile_form_profit(const DistortionFunction& T, const LossModel& m,
                                   int resolution = 4096) {
  const auto Tc = conjugate(T);
  std::vector<double> pts{0.0, 1.0};
  for (double b : Tc.breakpoints()) pts.push_back(b);
  for (double p : crossing_set(T, resolution).points) pts.push_back(1.0 - p);
  for (double x : m.breakpoints()) pts.push_back(m.cdf(x));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    if (!(b > a)) continue;
    auto f = [&](double t) -> double {
      const double room = std::min(t - a, b - t);
      if (!(room > 1e-12)) return 0.0;
      const double w = t - Tc(t);
      if (w <= 0.0) return 0.0;
      const double h = std::min(1e-6, 1e-3 * room);
      const double dq = (m.quantile(t + h) - m.quantile(t - h)) / (2.0 * h);
      return dq * w;
    };
    total += integrator.integrate(f, a, b);
  }
  return total;
}

}  // namespace bowley::oracle
