// SPDX-License-Identifier: Apache-2.0
//
// bowley: Stackelberg equilibria of a monopoly insurance market with
// distortion risk measures.
//
//   bowley solve  --config run.cfg
//   bowley sweep  --config configs/sweep_uniform.cfg --out uniform.csv
//   bowley verify --seed 7

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bowley/commands.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> resolution;
  std::optional<std::string> tie;
};

bowley::RunConfig load_config(const Options& o, bool required) {
  bowley::RunConfig cfg;
  if (!o.config.empty()) {
    cfg = bowley::RunConfig::load(o.config);
  } else if (required) {
    throw bowley::ConfigError("--config", 0, "a config file is required for this command");
  }
  if (o.resolution) cfg.set("solver.resolution", std::to_string(*o.resolution));
  if (o.tie) cfg.set("solver.tie", *o.tie);
  if (o.seed) cfg.set("verify.seed", std::to_string(*o.seed));
  if (!o.out.empty()) cfg.set("output.path", o.out);
  return cfg;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw bowley::ConfigError("--out", 0, "cannot open '" + path + "' for writing");
  return f;
}

// out.csv + "lambda=0.5" -> out_lambda0.5.csv
std::string panel_path(const std::string& base, const std::string& label) {
  if (label.empty()) return base;
  std::filesystem::path p(base);
  std::string tag;
  for (char ch : label) {
    if (ch == '=') continue;
    tag += ch == ':' ? '_' : ch;
  }
  const std::string stem = p.stem().string() + "_" + tag;
  return (p.parent_path() / (stem + p.extension().string())).string();
}

int run_solve(const Options& o) {
  const auto cfg = load_config(o, true);
  if (const auto path = cfg.output_path()) {
    auto f = open_output(*path);
    bowley::cmd_solve(cfg, f);
  } else {
    bowley::cmd_solve(cfg, std::cout);
  }
  return 0;
}

int run_sweep(const Options& o) {
  const auto cfg = load_config(o, true);
  const auto panels = bowley::cmd_sweep(cfg);
  const auto path = cfg.output_path();
  for (const auto& panel : panels) {
    if (path) {
      auto f = open_output(panel_path(*path, panel.label));
      bowley::write_sweep_csv(panel.rows, f);
    } else {
      if (!panel.label.empty()) std::cout << "# " << panel.label << "\n";
      bowley::write_sweep_csv(panel.rows, std::cout);
    }
  }
  return 0;
}

int run_verify(const Options& o) {
  const auto cfg = load_config(o, false);
  const auto opts = bowley::verify_options(cfg);
  bowley::VerifyOutcome outcome;
  if (const auto path = cfg.output_path()) {
    auto f = open_output(*path);
    outcome = bowley::cmd_verify(cfg, opts, f);
  } else {
    outcome = bowley::cmd_verify(cfg, opts, std::cout);
  }
  return outcome.passed() ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg equilibria for distortion-risk insurance markets"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "Run configuration file");
    sub->add_option("--out", o.out, "Output path (default: stdout)");
    sub->add_option("--resolution", o.resolution, "Grid points for sign scanning")
        ->check(CLI::Range(64, 1 << 24));
    sub->add_option("--tie", o.tie, "Tie policy on indifferent layers")
        ->check(CLI::IsMember({"retain", "cede", "insurer"}));
    sub->add_option("--seed", o.seed, "Seed for randomized checks");
  };

  auto* solve = app.add_subcommand("solve", "Compute the canonical equilibrium");
  auto* sweep = app.add_subcommand("sweep", "Tversky-Kahneman shape sweep as CSV");
  auto* verify = app.add_subcommand("verify", "Run the verification battery");
  for (auto* sub : {solve, sweep, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*solve) return run_solve(o);
    if (*sweep) return run_sweep(o);
    return run_verify(o);
  } catch (const bowley::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const bowley::RouteDisagreement& e) {
    std::cerr << "route disagreement: " << e.what() << " (" << e.first() << " vs " << e.second()
              << ")\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
