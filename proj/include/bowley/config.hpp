// SPDX-License-Identifier: Apache-2.0
#pragma once

// Run configuration: key-value text with optional [section] blocks.
//
//   [loss]
//   kind = truncexp
//   lambda = 0.5
//   M = 10
//
//   [distortion]
//   kind = tk
//   theta = 0.5
//
// `loss.kind = uniform` at top level is equivalent to `kind = uniform` under
// [loss]. Lists are comma-separated; piecewise knots are written `t:v`.

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bowley/distortion.hpp"
#include "bowley/equilibrium.hpp"
#include "bowley/errors.hpp"
#include "bowley/loss.hpp"

namespace bowley {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message)
      : std::runtime_error(format(field, line, message)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, int line, const std::string& message) {
    std::string out = "config error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " (" + field + ")";
    return out + ": " + message;
  }

  std::string field_;
  int line_;
};

struct SweepSpec {
  std::string parameter = "theta";
  double start = 0.30;
  double stop = 0.80;
  double step = 0.01;
  std::string loss_parameter;           // "", "lambda", "a:b" or "M"
  std::vector<std::string> loss_values;  // raw values, one CSV per value
};

class RunConfig {
 public:
  struct Entry {
    std::string value;
    int line;
  };

  static RunConfig parse(std::istream& in) {
    RunConfig cfg;
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string line = strip(raw.substr(0, raw.find_first_of("#;")));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("", line_no, "unterminated section header");
        section = strip(line.substr(1, line.size() - 2));
        if (section.empty()) throw ConfigError("", line_no, "empty section name");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("", line_no, "expected `key = value`");
      std::string key = strip(line.substr(0, eq));
      const std::string value = strip(line.substr(eq + 1));
      if (key.empty()) throw ConfigError("", line_no, "missing key");
      if (!section.empty()) key = section + "." + key;
      if (cfg.entries_.count(key)) {
        throw ConfigError(key, line_no,
                          "duplicate key (first set at line " +
                              std::to_string(cfg.entries_[key].line) + ")");
      }
      cfg.entries_[key] = {value, line_no};
    }
    return cfg;
  }

  static RunConfig parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  static RunConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
    return parse(in);
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  void set(const std::string& key, std::string value) { entries_[key] = {std::move(value), 0}; }

  std::string get_string(const std::string& key) const { return entry(key).value; }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
  }

  double get_double(const std::string& key) const {
    const auto& e = entry(key);
    return to_double(e.value, key, e.line);
  }

  double get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
  }

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& e = entry(key);
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(e.value.c_str(), &end, 10);
    if (errno || end == e.value.c_str() || *end != '\0') {
      throw ConfigError(key, e.line, "expected an integer, got '" + e.value + "'");
    }
    return v;
  }

  std::vector<double> get_list(const std::string& key) const {
    const auto& e = entry(key);
    std::vector<double> out;
    for (const auto& item : split(e.value, ',')) out.push_back(to_double(item, key, e.line));
    return out;
  }

  std::vector<std::string> get_raw_list(const std::string& key) const {
    return split(entry(key).value, ',');
  }

  LossModel loss() const {
    const std::string kind = get_string("loss.kind");
    return guarded("loss", [&] {
      const double M = get_double("loss.M", 10.0);
      if (kind == "uniform") return LossModel::uniform(M);
      if (kind == "truncexp") return LossModel::truncated_exponential(get_double("loss.lambda"), M);
      if (kind == "kumaraswamy") {
        return LossModel::kumaraswamy(get_double("loss.a"), get_double("loss.b"), M);
      }
      if (kind == "tabulated") return LossModel::tabulated(M, get_list("loss.cdf_values"));
      throw ConfigError("loss.kind", line_of("loss.kind"), "unknown loss kind '" + kind + "'");
    });
  }

  DistortionFunction distortion() const {
    const std::string kind = get_string("distortion.kind");
    return guarded("distortion", [&] {
      if (kind == "identity") return DistortionFunction::identity();
      if (kind == "tvar") return DistortionFunction::tvar(get_double("distortion.alpha"));
      if (kind == "var") return DistortionFunction::var(get_double("distortion.alpha"));
      if (kind == "tk") return DistortionFunction::tversky_kahneman(get_double("distortion.theta"));
      if (kind == "piecewise") return DistortionFunction::piecewise_linear(knots());
      if (kind == "tabulated") return DistortionFunction::tabulated(get_list("distortion.values"));
      throw ConfigError("distortion.kind", line_of("distortion.kind"),
                        "unknown distortion kind '" + kind + "'");
    });
  }

  int resolution() const {
    const auto r = get_int("solver.resolution", 4096);
    if (r < 64) {
      throw ConfigError("solver.resolution", line_of("solver.resolution"), "must be >= 64");
    }
    return static_cast<int>(r);
  }

  TiePolicy tie() const {
    const std::string v = get_string("solver.tie", "retain");
    if (v == "retain") return TiePolicy::Retain;
    if (v == "cede") return TiePolicy::Cede;
    if (v == "insurer") return TiePolicy::InsurerOptimal;
    throw ConfigError("solver.tie", line_of("solver.tie"),
                      "expected retain, cede or insurer, got '" + v + "'");
  }

  SweepSpec sweep() const {
    SweepSpec s;
    s.parameter = get_string("sweep.parameter", s.parameter);
    if (s.parameter != "theta") {
      throw ConfigError("sweep.parameter", line_of("sweep.parameter"),
                        "only the Tversky-Kahneman shape `theta` can be swept");
    }
    s.start = get_double("sweep.start", s.start);
    s.stop = get_double("sweep.stop", s.stop);
    s.step = get_double("sweep.step", s.step);
    if (!(s.step > 0.0) || !(s.stop >= s.start)) {
      throw ConfigError("sweep.step", line_of("sweep.step"), "need step > 0 and stop >= start");
    }
    if (has("sweep.loss_parameter")) {
      s.loss_parameter = get_string("sweep.loss_parameter");
      if (s.loss_parameter != "lambda" && s.loss_parameter != "a:b" && s.loss_parameter != "M") {
        throw ConfigError("sweep.loss_parameter", line_of("sweep.loss_parameter"),
                          "expected lambda, a:b or M");
      }
      if (!has("sweep.loss_values")) {
        throw ConfigError("sweep.loss_values", 0, "required with sweep.loss_parameter");
      }
      s.loss_values = get_raw_list("sweep.loss_values");
    }
    return s;
  }

  /// Copy with loss parameters overridden by one sweep value.
  RunConfig with_loss_value(const std::string& parameter, const std::string& value) const {
    RunConfig c = *this;
    const int line = line_of("sweep.loss_values");
    if (parameter == "a:b") {
      const auto ab = split(value, ':');
      if (ab.size() != 2) throw ConfigError("sweep.loss_values", line, "expected a:b pairs");
      c.entries_["loss.a"] = {ab[0], line};
      c.entries_["loss.b"] = {ab[1], line};
    } else {
      c.entries_["loss." + parameter] = {value, line};
    }
    return c;
  }

  std::optional<std::string> output_path() const {
    if (has("output.path")) return get_string("output.path");
    return std::nullopt;
  }

  int line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

 private:
  static std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  }

  static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
      item = strip(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  static double to_double(const std::string& s, const std::string& key, int line) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (errno || end == s.c_str() || *end != '\0') {
      throw ConfigError(key, line, "expected a number, got '" + s + "'");
    }
    return v;
  }

  const Entry& entry(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError(key, 0, "missing required key");
    return it->second;
  }

  std::vector<std::pair<double, double>> knots() const {
    const auto& e = entry("distortion.knots");
    std::vector<std::pair<double, double>> out;
    for (const auto& item : split(e.value, ',')) {
      const auto tv = split(item, ':');
      if (tv.size() != 2) throw ConfigError("distortion.knots", e.line, "expected t:v pairs");
      out.emplace_back(to_double(tv[0], "distortion.knots", e.line),
                       to_double(tv[1], "distortion.knots", e.line));
    }
    return out;
  }

  // Construction errors are re-raised with the offending field and its line.
  template <typename F>
  auto guarded(const std::string& block, F build) const -> decltype(build()) {
    try {
      return build();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.field(), line_of(e.field()), e.what());
    } catch (const DomainError& e) {
      throw ConfigError(block, 0, e.what());
    }
  }

  std::map<std::string, Entry> entries_;
};

}  // namespace bowley
