// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bowley/battery.hpp"
#include "bowley/loss.hpp"

using namespace bowley;

TEST(Loss, Examples) {
  EXPECT_DOUBLE_EQ(LossModel::uniform(10).quantile(0.9), 9.0);
  EXPECT_EQ(LossModel::truncated_exponential(0.5, 10).cdf(10), 1.0);
  const auto k = LossModel::kumaraswamy(1, 1, 10);
  for (int i = 0; i <= 100; ++i) EXPECT_NEAR(k.cdf(i * 0.1), i * 0.01, 1e-15);
}

TEST(Loss, EndpointNormalisation) {
  for (const auto& m : battery::models()) {
    EXPECT_EQ(m.survival(0.0), 1.0) << m.describe();
    EXPECT_EQ(m.survival(m.bound()), 0.0) << m.describe();
    EXPECT_EQ(m.quantile(0.0), 0.0);
    EXPECT_EQ(m.quantile(1.0), m.bound());
  }
}

TEST(Loss, SurvivalIsComplementOfCdf) {
  for (const auto& m : battery::models()) {
    for (int i = 0; i <= 200; ++i) {
      const double x = m.bound() * i / 200.0;
      EXPECT_EQ(m.survival(x), 1.0 - m.cdf(x));
    }
  }
}

TEST(Loss, QuantileRoundTrip) {
  for (const auto& m : battery::models()) {
    for (int i = 1; i < 1000; ++i) {
      const double x = m.bound() * i / 1000.0;
      EXPECT_NEAR(m.quantile(m.cdf(x)), x, 1e-8 * x) << m.describe() << " x=" << x;
    }
  }
}

TEST(Loss, DensityIntegratesToCdf) {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (const auto& m : battery::models()) {
    // Stop short of M: some densities are unbounded there.
    const double top = m.quantile(1.0 - 1e-3);
    std::vector<double> pts{0.0};
    for (double b : m.breakpoints()) {
      if (b < top) pts.push_back(b);
    }
    pts.push_back(top);
    const double pad = m.breakpoints().empty() ? 0.0 : 1e-12;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double a = pts[i], b = pts[i + 1];
      total += ts.integrate([&](double x) { return m.density(std::clamp(x, a + pad, b - pad)); }, a, b);
    }
    EXPECT_NEAR(total, m.cdf(top), 1e-8) << m.describe();
  }
}

TEST(Loss, DensityMatchesCdfSlope) {
  for (const auto& m : battery::models()) {
    for (int i = 1; i < 50; ++i) {
      const double x = m.bound() * (i + 0.37) / 51.0;
      const double h = 1e-6;
      const double slope = (m.cdf(x + h) - m.cdf(x - h)) / (2 * h);
      EXPECT_NEAR(m.density(x), slope, 1e-5 * (1.0 + slope)) << m.describe() << " x=" << x;
    }
  }
}

TEST(Loss, KumaraswamyStochasticDominance) {
  const auto riskier = LossModel::kumaraswamy(1.5, 0.5, 10);
  const auto base = LossModel::kumaraswamy(1.5, 1.0, 10);
  for (int i = 1; i < 1000; ++i) {
    const double x = i * 0.01;
    EXPECT_LE(riskier.cdf(x), base.cdf(x));
  }
}

TEST(Loss, ConstructionErrors) {
  EXPECT_THROW(LossModel::uniform(0.0), InvalidArgument);
  EXPECT_THROW(LossModel::truncated_exponential(0.0, 10), InvalidArgument);
  EXPECT_THROW(LossModel::kumaraswamy(-1, 1, 10), InvalidArgument);
  try {
    LossModel::tabulated(10, {0.0, 0.5, 0.5, 1.0});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_EQ(e.field(), "loss.cdf_values");
  }
  EXPECT_THROW(LossModel::tabulated(10, {0.0, 0.5, 0.9}), InvalidArgument);
}

TEST(Loss, DomainErrors) {
  const auto m = LossModel::uniform(10);
  EXPECT_THROW(m.cdf(-0.1), DomainError);
  EXPECT_THROW(m.cdf(10.1), DomainError);
  EXPECT_THROW(m.quantile(1.1), DomainError);
  EXPECT_THROW(m.quantile(-0.1), DomainError);
}

TEST(Loss, TabulatedInverseInterpolation) {
  const auto m = LossModel::tabulated(4.0, {0.0, 0.1, 0.5, 0.9, 1.0});
  EXPECT_NEAR(m.cdf(1.5), 0.3, 1e-15);
  EXPECT_NEAR(m.quantile(0.3), 1.5, 1e-15);
  EXPECT_NEAR(m.density(1.5), 0.4, 1e-15);
  EXPECT_EQ(m.breakpoints(), (std::vector<double>{1.0, 2.0, 3.0}));
}

TEST(Loss, TruncatedExponentialClosedForm) {
  const auto m = LossModel::truncated_exponential(0.5, 10);
  const double x = 3.0;
  EXPECT_NEAR(m.cdf(x), (1 - std::exp(-1.5)) / (1 - std::exp(-5.0)), 1e-15);
}
