// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bounded loss models on [0, M] with strictly increasing CDF.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "bowley/errors.hpp"

namespace bowley {

namespace loss {

struct Uniform {
  double M;
};

/// F(x) = (1 - exp(-lambda x)) / (1 - exp(-lambda M)).
struct TruncatedExponential {
  double lambda;
  double M;
};

/// F(x) = 1 - (1 - (x/M)^a)^b.
struct Kumaraswamy {
  double a;
  double b;
  double M;
};

/// CDF values on the uniform grid x_i = i M / (n - 1), linearly interpolated.
struct Tabulated {
  double M;
  std::vector<double> cdf;
};

}  // namespace loss

class LossModel {
 public:
  using Variant =
      std::variant<loss::Uniform, loss::TruncatedExponential, loss::Kumaraswamy, loss::Tabulated>;

  static LossModel uniform(double M) {
    check_bound(M);
    return LossModel(loss::Uniform{M});
  }

  static LossModel truncated_exponential(double lambda, double M) {
    check_bound(M);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw InvalidArgument("loss.lambda", "must be > 0, got " + std::to_string(lambda));
    }
    return LossModel(loss::TruncatedExponential{lambda, M});
  }

  static LossModel kumaraswamy(double a, double b, double M) {
    check_bound(M);
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("loss.a", "must be > 0");
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("loss.b", "must be > 0");
    return LossModel(loss::Kumaraswamy{a, b, M});
  }

  /// Requires F(0) = 0, F(M) = 1 and a minimum slope of 1e-10 on every cell.
  static LossModel tabulated(double M, std::vector<double> cdf) {
    check_bound(M);
    if (cdf.size() < 2) throw InvalidArgument("loss.cdf_values", "need at least two values");
    if (cdf.front() != 0.0) throw InvalidArgument("loss.cdf_values", "first value must be 0");
    if (cdf.back() != 1.0) throw InvalidArgument("loss.cdf_values", "last value must be 1");
    const double dx = M / static_cast<double>(cdf.size() - 1);
    for (std::size_t i = 1; i < cdf.size(); ++i) {
      if ((cdf[i] - cdf[i - 1]) / dx < 1e-10) {
        throw InvalidArgument("loss.cdf_values",
                              "CDF must be strictly increasing at index " + std::to_string(i));
      }
    }
    return LossModel(loss::Tabulated{M, std::move(cdf)});
  }

  const Variant& family() const noexcept { return family_; }

  double bound() const noexcept {
    return std::visit([](const auto& m) { return m.M; }, family_);
  }

  double cdf(double x) const {
    x = clamp_x(x);
    const double M = bound();
    if (x <= 0.0) return 0.0;
    if (x >= M) return 1.0;
    const double v = std::visit(
        [x](const auto& m) -> double {
          using L = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<L, loss::Uniform>) {
            return x / m.M;
          } else if constexpr (std::is_same_v<L, loss::TruncatedExponential>) {
            return std::expm1(-m.lambda * x) / std::expm1(-m.lambda * m.M);
          } else if constexpr (std::is_same_v<L, loss::Kumaraswamy>) {
            // 1 - (1 - u^a)^b = -expm1(b log1p(-u^a))
            const double ua = std::pow(x / m.M, m.a);
            return -std::expm1(m.b * std::log1p(-ua));
          } else {
            const double pos = x / m.M * static_cast<double>(m.cdf.size() - 1);
            const auto i = std::min(static_cast<std::size_t>(pos), m.cdf.size() - 2);
            const double w = pos - static_cast<double>(i);
            return m.cdf[i] + w * (m.cdf[i + 1] - m.cdf[i]);
          }
        },
        family_);
    return std::clamp(v, 0.0, 1.0);
  }

  double survival(double x) const { return 1.0 - cdf(x); }

  /// Left-continuous inverse of the CDF; quantile(0) = 0, quantile(1) = M.
  double quantile(double t) const {
    if (std::isnan(t) || t < -kSlack || t > 1.0 + kSlack) {
      throw DomainError("loss quantile outside [0,1]: t = " + std::to_string(t));
    }
    const double M = bound();
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return M;
    const double v = std::visit(
        [t](const auto& m) -> double {
          using L = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<L, loss::Uniform>) {
            return t * m.M;
          } else if constexpr (std::is_same_v<L, loss::TruncatedExponential>) {
            return -std::log1p(t * std::expm1(-m.lambda * m.M)) / m.lambda;
          } else if constexpr (std::is_same_v<L, loss::Kumaraswamy>) {
            const double ua = -std::expm1(std::log1p(-t) / m.b);
            return m.M * std::pow(ua, 1.0 / m.a);
          } else {
            const auto& c = m.cdf;
            auto it = std::upper_bound(c.begin(), c.end(), t);
            const auto i = static_cast<std::size_t>(it - c.begin()) - 1;
            const double w = (t - c[i]) / (c[i + 1] - c[i]);
            const double dx = m.M / static_cast<double>(c.size() - 1);
            return (static_cast<double>(i) + w) * dx;
          }
        },
        family_);
    return std::clamp(v, 0.0, M);
  }

  double density(double x) const {
    x = clamp_x(x);
    return std::visit(
        [x](const auto& m) -> double {
          using L = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<L, loss::Uniform>) {
            return 1.0 / m.M;
          } else if constexpr (std::is_same_v<L, loss::TruncatedExponential>) {
            return m.lambda * std::exp(-m.lambda * x) / -std::expm1(-m.lambda * m.M);
          } else if constexpr (std::is_same_v<L, loss::Kumaraswamy>) {
            const double u = x / m.M;
            return m.a * m.b / m.M * std::pow(u, m.a - 1.0) *
                   std::pow(1.0 - std::pow(u, m.a), m.b - 1.0);
          } else {
            const double dx = m.M / static_cast<double>(m.cdf.size() - 1);
            const double pos = x / dx;
            const auto i = std::min(static_cast<std::size_t>(pos), m.cdf.size() - 2);
            return (m.cdf[i + 1] - m.cdf[i]) / dx;
          }
        },
        family_);
  }

  /// Interior points of [0, M] where F is not smooth.
  std::vector<double> breakpoints() const {
    if (const auto* tab = std::get_if<loss::Tabulated>(&family_)) {
      std::vector<double> out;
      const double dx = tab->M / static_cast<double>(tab->cdf.size() - 1);
      for (std::size_t i = 1; i + 1 < tab->cdf.size(); ++i) out.push_back(i * dx);
      return out;
    }
    return {};
  }

  std::string describe() const {
    return std::visit(
        [](const auto& m) -> std::string {
          using L = std::decay_t<decltype(m)>;
          char buf[96];
          if constexpr (std::is_same_v<L, loss::Uniform>) {
            std::snprintf(buf, sizeof buf, "uniform(M=%g)", m.M);
          } else if constexpr (std::is_same_v<L, loss::TruncatedExponential>) {
            std::snprintf(buf, sizeof buf, "truncexp(lambda=%g,M=%g)", m.lambda, m.M);
          } else if constexpr (std::is_same_v<L, loss::Kumaraswamy>) {
            std::snprintf(buf, sizeof buf, "kumaraswamy(a=%g,b=%g,M=%g)", m.a, m.b, m.M);
          } else {
            std::snprintf(buf, sizeof buf, "tabulated(M=%g,n=%zu)", m.M, m.cdf.size());
          }
          return buf;
        },
        family_);
  }

 private:
  static constexpr double kSlack = 1e-12;

  explicit LossModel(Variant v) : family_(std::move(v)) {}

  static void check_bound(double M) {
    if (!(M > 0.0) || !std::isfinite(M)) {
      throw InvalidArgument("loss.M", "must be a positive finite bound, got " + std::to_string(M));
    }
  }

  double clamp_x(double x) const {
    const double M = bound();
    if (std::isnan(x) || x < -kSlack * M || x > M * (1.0 + kSlack)) {
      throw DomainError("loss evaluated outside [0,M]: x = " + std::to_string(x));
    }
    return std::clamp(x, 0.0, M);
  }

  Variant family_;
};

}  // namespace bowley
