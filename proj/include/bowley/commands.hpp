// SPDX-License-Identifier: Apache-2.0
#pragma once

// Drivers behind the `bowley` tool: single solves, theta sweeps written as CSV,
// and the verification battery. Output is deterministic for a given config
// and seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "bowley/battery.hpp"
#include "bowley/config.hpp"
#include "bowley/equilibrium.hpp"
#include "bowley/oracle.hpp"
#include "bowley/pareto.hpp"

#include <json.hpp>

namespace bowley {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// "[0,9): FULL; [9,10]: NONE"
inline std::string region_table(const std::vector<Region>& regions) {
  std::string out;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& r = regions[i];
    if (i) out += "; ";
    out += "[" + format_number(r.lower) + "," + format_number(r.upper) +
           (i + 1 == regions.size() ? "]" : ")") + ": " + to_string(r.label);
  }
  return out;
}

// ---------------------------------------------------------------------------
// solve

struct SolveReport {
  EquilibriumResult equilibrium;
  double profit_quantile_route = 0.0;
  double no_trade_risk = 0.0;
  double indifference_gap = 0.0;
  ParetoCertificate pareto;
};

inline SolveReport run_solve(const DistortionFunction& T, const LossModel& m, TiePolicy tie,
                             int resolution) {
  SolveReport r{solve(T, m, tie, resolution), 0.0, 0.0, 0.0, {}};
  r.profit_quantile_route = oracle::quantile_form_profit(T, m, resolution);
  r.no_trade_risk = drm_of_loss(m, T);
  r.indifference_gap = r.equilibrium.policyholder_risk - r.no_trade_risk;
  r.pareto = is_pareto_optimal({r.equilibrium.indemnity, r.equilibrium.premium}, m, T, resolution);
  return r;
}

inline void print_solve_report(const SolveReport& r, const DistortionFunction& T,
                               const LossModel& m, TiePolicy tie, int resolution,
                               std::ostream& out) {
  const auto& e = r.equilibrium;
  out << "loss: " << m.describe() << "\n";
  out << "distortion: " << T.describe() << "\n";
  out << "tie policy: " << to_string(tie) << "\n";
  out << "resolution: " << resolution << "\n";
  out << "crossing points:";
  if (e.crossing_set.points.empty()) out << " none";
  for (double p : e.crossing_set.points) out << " " << format_number(p);
  out << "\n";
  out << "crossing signs: ";
  for (Sign s : e.crossing_set.signs) out << sign_char(s);
  out << "\n";
  out << "regions: " << region_table(e.partition.regions) << "\n";
  out << "premium: " << format_number(e.premium) << "\n";
  out << "profit (indemnity route): " << format_number(e.profit) << "\n";
  out << "profit (layer route): " << format_number(e.profit_layer) << "\n";
  out << "profit (quantile route): " << format_number(r.profit_quantile_route) << "\n";
  out << "policyholder risk: " << format_number(e.policyholder_risk) << "\n";
  out << "no-trade risk: " << format_number(r.no_trade_risk) << "\n";
  out << "indifference gap: " << format_number(r.indifference_gap) << "\n";
  out << "pareto optimal: " << (r.pareto.optimal ? "yes" : "no")
      << " (objective " << format_number(r.pareto.objective) << ", minimum "
      << format_number(r.pareto.minimum) << ", gap " << format_number(r.pareto.gap) << ")\n";
}

inline SolveReport cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const auto m = cfg.loss();
  const auto T = cfg.distortion();
  const auto tie = cfg.tie();
  const int res = cfg.resolution();
  auto r = run_solve(T, m, tie, res);
  print_solve_report(r, T, m, tie, res, out);
  return r;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  double theta;
  double t1;
  double deductible;
  double premium;
  double profit;
  bool is_argmax = false;
};

inline std::vector<double> theta_grid(const SweepSpec& s) {
  const auto n = static_cast<long>(std::floor((s.stop - s.start) / s.step + 1e-9));
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) {
    out.push_back(std::round((s.start + static_cast<double>(i) * s.step) * 1e10) / 1e10);
  }
  return out;
}

/// One equilibrium per Tversky-Kahneman shape. The argmax is taken on the
/// grid without interpolation; the first maximal row wins ties.
inline std::vector<SweepRow> sweep_theta(const std::vector<double>& thetas, const LossModel& m,
                                         TiePolicy tie, int resolution) {
  std::vector<SweepRow> rows;
  rows.reserve(thetas.size());
  for (double th : thetas) {
    const auto T = DistortionFunction::tversky_kahneman(th);
    const auto e = solve(T, m, tie, resolution);
    SweepRow row{th, std::numeric_limits<double>::quiet_NaN(),
                 std::numeric_limits<double>::quiet_NaN(), e.premium, e.profit};
    if (e.crossing_set.points.size() == 1) {
      row.t1 = e.crossing_set.points.front();
      row.deductible = m.quantile(1.0 - row.t1);
    }
    rows.push_back(row);
  }
  if (!rows.empty()) {
    auto best = std::max_element(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
      return a.profit < b.profit;
    });
    best->is_argmax = true;
  }
  return rows;
}

inline constexpr const char* kSweepHeader = "theta,t1,deductible,premium,profit,is_argmax";

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kSweepHeader << "\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.4f,%.12g,%.12g,%.12g,%.12g,%d\n", r.theta, r.t1,
                  r.deductible, r.premium, r.profit, r.is_argmax ? 1 : 0);
    out << buf;
  }
}

struct SweepPanel {
  std::string label;  // e.g. "lambda=0.5"; empty without a loss sweep
  std::vector<SweepRow> rows;
};

inline std::vector<SweepPanel> cmd_sweep(const RunConfig& cfg) {
  const auto spec = cfg.sweep();
  const auto thetas = theta_grid(spec);
  const auto tie = cfg.tie();
  const int res = cfg.resolution();
  std::vector<SweepPanel> panels;
  if (spec.loss_parameter.empty()) {
    panels.push_back({"", sweep_theta(thetas, cfg.loss(), tie, res)});
    return panels;
  }
  for (const auto& v : spec.loss_values) {
    const auto c = cfg.with_loss_value(spec.loss_parameter, v);
    panels.push_back({spec.loss_parameter + "=" + v, sweep_theta(thetas, c.loss(), tie, res)});
  }
  return panels;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  std::string name;
  std::string failure_class;  // oracle_falsification, route_disagreement, invariant_breach
  bool passed = true;
  double worst_gap = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int resolution = 4096;
  int trials = 1000;           // random pricing distortions per (T, m) pair
  int knots = 16;              // knots of each random pricing distortion
  int dominance_pairs = 50;    // random dominated pairs per family
  int oracle_cells = 4096;     // discrete best-response grid
};

namespace detail {

inline void track(CheckResult& c, double gap, const std::string& where) {
  ++c.cases;
  if (c.cases == 1 || gap > c.worst_gap || std::isnan(gap)) {
    c.worst_gap = gap;
    c.detail = where;
  }
}

inline void finish(CheckResult& c) { c.passed = c.worst_gap <= c.tolerance; }

inline std::string label(const DistortionFunction& d, const LossModel& m) {
  return d.describe() + " / " + m.describe();
}

}  // namespace detail

inline CheckResult check_spot_values(const VerifyOptions& o) {
  CheckResult c{"closed_form_spot_values", "invariant_breach", true, 0.0, 0.0, 0, {}};
  c.tolerance = 0.0;
  const auto U = LossModel::uniform(10.0);
  const auto tv = solve(DistortionFunction::tvar(0.9), U, TiePolicy::Retain, o.resolution);
  const auto va = solve(DistortionFunction::var(0.9), U, TiePolicy::Retain, o.resolution);
  // Gaps are excesses over each value's own tolerance.
  detail::track(c, std::abs(tv.profit - 4.5) - 1e-7, "tvar(0.9) profit 4.5");
  double full_gap = 0.0;
  for (int i = 0; i <= 100; ++i) full_gap = std::max(full_gap, std::abs(tv.indemnity(i * 0.1) - i * 0.1));
  detail::track(c, full_gap - 1e-9, "tvar(0.9) full insurance");
  detail::track(c, std::abs(va.profit - 4.05) - 1e-6, "var(0.9) profit 4.05");
  const double cap = va.indemnity(10.0);
  detail::track(c, std::abs(cap - 9.0) - 1e-6, "var(0.9) cap 9");
  detail::finish(c);
  return c;
}

inline CheckResult check_indifference(const VerifyOptions& o) {
  CheckResult c{"indifference", "invariant_breach", true, 0.0, 0.0, 0, {}};
  c.tolerance = kIndifferenceTolerance;
  for (const auto& m : battery::models()) {
    for (const auto& T : battery::distortions()) {
      const auto e = solve(T, m, TiePolicy::Retain, o.resolution);
      detail::track(c, std::abs(e.policyholder_risk - drm_of_loss(m, T)), detail::label(T, m));
    }
  }
  detail::finish(c);
  return c;
}

/// Layer vs quantile route, as excess over the per-family budget (1e-6 smooth,
/// 1e-4 VaR). The two layer-space routes inside `solve` must agree to 1e-7.
inline CheckResult check_route_agreement(const VerifyOptions& o) {
  CheckResult c{"profit_route_agreement", "route_disagreement", true, 0.0, 0.0, 0, {}};
  c.tolerance = 0.0;
  for (const auto& m : battery::models()) {
    for (const auto& T : battery::distortions()) {
      const double budget = battery::is_var(T) ? 1e-4 : 1e-6;
      try {
        const auto e = solve(T, m, TiePolicy::Retain, o.resolution);
        const double q = oracle::quantile_form_profit(T, m, o.resolution);
        detail::track(c, std::abs(e.profit_layer - q) - budget, detail::label(T, m));
      } catch (const RouteDisagreement& err) {
        detail::track(c, std::abs(err.first() - err.second()), detail::label(T, m));
      }
    }
  }
  detail::finish(c);
  return c;
}

inline CheckResult check_discrete_best_response(const VerifyOptions& o) {
  CheckResult c{"discrete_best_response", "oracle_falsification", true, 0.0, 0.0, 0, {}};
  c.tolerance = 1e-3;
  const std::vector<DistortionFunction> pricing{
      DistortionFunction::identity(), DistortionFunction::tvar(0.5),
      DistortionFunction::tversky_kahneman(0.7),
      DistortionFunction::piecewise_linear({{0.0, 0.0}, {0.5, 0.6}, {1.0, 1.0}})};
  oracle::DiscreteGrid grid;
  grid.n = o.oracle_cells;
  for (const auto& m : {LossModel::uniform(10.0), LossModel::truncated_exponential(0.5, 10.0),
                        LossModel::kumaraswamy(1.5, 0.5, 10.0)}) {
    for (const auto& T : battery::distortions()) {
      for (const auto& g : pricing) {
        const auto br = best_response(T, g, m, TiePolicy::Retain, o.resolution);
        const double analytic = policyholder_objective(br.indemnity, m, T, g);
        const double discrete = oracle::discrete_best_response(T, g, m, grid).objective;
        detail::track(c, std::abs(discrete - analytic),
                      detail::label(T, m) + " priced " + g.describe());
      }
    }
  }
  detail::finish(c);
  return c;
}

inline CheckResult check_pricing_falsification(const VerifyOptions& o) {
  CheckResult c{"pricing_falsification", "oracle_falsification", true, 0.0, 0.0, 0, {}};
  c.tolerance = 1e-6;
  std::uint64_t s = o.seed;
  for (const auto& [T, m] : battery::falsification_pairs()) {
    const double theory = solve(T, m, TiePolicy::Retain, o.resolution).profit;
    const auto search = oracle::random_pricing_search(T, m, o.trials, o.knots, s++, o.resolution);
    detail::track(c, search.best_profit - theory, detail::label(T, m));
  }
  detail::finish(c);
  return c;
}

inline CheckResult check_comparative_statics(const VerifyOptions& o) {
  CheckResult c{"comparative_statics", "invariant_breach", true, 0.0, 0.0, 0, {}};
  c.tolerance = 1e-8;
  std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  const auto ms = battery::models();
  std::size_t k = 0;
  for (const auto& fam : battery::dominance_families()) {
    for (int i = 0; i < o.dominance_pairs; ++i) {
      const auto [T1, T2] = battery::random_dominated_pair(fam, rng);
      const auto& m = ms[k++ % ms.size()];
      const auto r = compare(T1, T2, m, o.resolution);
      const std::string where = fam + " #" + std::to_string(i) + " " + m.describe();
      detail::track(c, r.max_indemnity_violation, where + " indemnity");
      detail::track(c, r.profit_violation, where + " profit");
    }
  }
  detail::finish(c);
  return c;
}

inline CheckResult check_pareto(const VerifyOptions& o) {
  CheckResult c{"pareto_round_trip", "invariant_breach", true, 0.0, 0.0, 0, {}};
  c.tolerance = 0.0;
  oracle::DiscreteGrid grid;
  grid.n = o.oracle_cells;
  for (const auto& m : battery::models()) {
    for (const auto& T : battery::distortions()) {
      const auto e = solve(T, m, TiePolicy::Retain, o.resolution);
      const Contract contract{e.indemnity, e.premium};
      const auto cert = is_pareto_optimal(contract, m, T, o.resolution);
      const std::string where = detail::label(T, m);
      detail::track(c, cert.gap - kParetoTolerance, where + " pareto gap");
      const auto back = equilibrium_from_pareto(contract, m, T, o.resolution);
      detail::track(c, std::abs(back.premium - e.premium) - 1e-7, where + " premium round trip");
      double shifted_gap = std::numeric_limits<double>::infinity();
      try {
        equilibrium_from_pareto({e.indemnity, e.premium + 0.1}, m, T, o.resolution);
      } catch (const PreconditionError& err) {
        shifted_gap = err.gap();
      }
      detail::track(c, std::abs(shifted_gap - 0.1) - 1e-9, where + " shifted premium");
      const double scan = oracle::discrete_pareto_scan(m, T, grid);
      // Discrete contracts cannot beat the analytic minimum beyond quadrature error.
      detail::track(c, cert.minimum - scan - 1e-6, where + " discrete scan");
    }
  }
  detail::finish(c);
  return c;
}

inline nlohmann::json to_json(const CheckResult& c) {
  return nlohmann::json{{"check", c.name},         {"passed", c.passed},
                        {"cases", c.cases},        {"worst_gap", c.worst_gap},
                        {"tolerance", c.tolerance}, {"worst_case", c.detail},
                        {"failure_class", c.passed ? "" : c.failure_class}};
}

struct VerifyOutcome {
  std::vector<CheckResult> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

inline VerifyOptions verify_options(const RunConfig& cfg) {
  VerifyOptions o;
  o.seed = static_cast<std::uint64_t>(cfg.get_int("verify.seed", 1));
  o.resolution = cfg.resolution();
  o.trials = static_cast<int>(cfg.get_int("verify.trials", o.trials));
  o.knots = static_cast<int>(cfg.get_int("verify.knots", o.knots));
  o.dominance_pairs = static_cast<int>(cfg.get_int("verify.pairs", o.dominance_pairs));
  o.oracle_cells = static_cast<int>(cfg.get_int("verify.cells", o.oracle_cells));
  if (o.trials < 1) throw ConfigError("verify.trials", cfg.line_of("verify.trials"), "must be >= 1");
  if (o.knots < 4) throw ConfigError("verify.knots", cfg.line_of("verify.knots"), "must be >= 4");
  if (o.oracle_cells < 16) {
    throw ConfigError("verify.cells", cfg.line_of("verify.cells"), "must be >= 16");
  }
  return o;
}

/// Runs the battery, printing one JSON object per check and a summary line.
inline VerifyOutcome cmd_verify(const RunConfig& cfg, const VerifyOptions& o, std::ostream& out) {
  // A configured loss/distortion pair must at least construct.
  if (cfg.has("loss.kind")) cfg.loss();
  if (cfg.has("distortion.kind")) cfg.distortion();

  VerifyOutcome outcome;
  const std::vector<std::function<CheckResult(const VerifyOptions&)>> checks{
      check_spot_values,           check_indifference,          check_route_agreement,
      check_discrete_best_response, check_pricing_falsification, check_comparative_statics,
      check_pareto};
  for (const auto& run : checks) {
    outcome.checks.push_back(run(o));
    out << to_json(outcome.checks.back()).dump() << "\n";
  }
  nlohmann::json summary{{"summary", true},
                         {"checks_run", outcome.checks.size()},
                         {"passed", outcome.passed()},
                         {"seed", o.seed},
                         {"resolution", o.resolution},
                         {"trials", o.trials}};
  std::vector<std::string> failed;
  for (const auto& c : outcome.checks) {
    if (!c.passed) failed.push_back(c.failure_class);
  }
  summary["failure_classes"] = failed;
  out << summary.dump() << "\n";
  return outcome;
}

}  // namespace bowley
