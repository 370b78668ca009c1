// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "bowley/battery.hpp"
#include "bowley/distortion.hpp"
#include "test_support.hpp"

using namespace bowley;

namespace {

std::vector<DistortionFunction> all_families() {
  auto ds = battery::distortions();
  ds.push_back(conjugate(DistortionFunction::var(0.8)));
  return ds;
}

}  // namespace

TEST(Distortion, Evaluate) {
  EXPECT_DOUBLE_EQ(DistortionFunction::identity()(0.37), 0.37);
  EXPECT_DOUBLE_EQ(DistortionFunction::tvar(0.9)(0.05), 0.5);
  const auto var = DistortionFunction::var(0.9);
  EXPECT_EQ(var(1.0 - 0.9), 0.0);
  EXPECT_EQ(var(0.1 + 1e-9), 1.0);
  EXPECT_EQ(var(0.05), 0.0);
  EXPECT_NEAR(DistortionFunction::tversky_kahneman(1.0)(0.6), 0.6, 1e-12);
}

TEST(Distortion, VaRJumpPointIsLeftOpen) {
  const auto var = DistortionFunction::var(0.75);
  EXPECT_EQ(var(0.25), 0.0);
  EXPECT_EQ(var(std::nextafter(0.25, 1.0)), 1.0);
}

TEST(Distortion, EndpointsAreExact) {
  for (const auto& d : all_families()) {
    EXPECT_EQ(d(0.0), 0.0) << d.describe();
    EXPECT_EQ(d(1.0), 1.0) << d.describe();
  }
}

TEST(Distortion, DomainErrors) {
  const auto d = DistortionFunction::tvar(0.5);
  EXPECT_THROW(d(-1e-6), DomainError);
  EXPECT_THROW(d(1.0 + 1e-6), DomainError);
  EXPECT_NO_THROW(d(1.0 + 1e-13));
  EXPECT_EQ(d(1.0 + 1e-13), 1.0);
}

TEST(Distortion, ConstructionErrorsNameTheField) {
  EXPECT_THROW(DistortionFunction::tvar(1.0), InvalidArgument);
  EXPECT_THROW(DistortionFunction::var(0.0), InvalidArgument);
  EXPECT_THROW(DistortionFunction::tversky_kahneman(0.0), InvalidArgument);
  EXPECT_THROW(DistortionFunction::tversky_kahneman(1.5), InvalidArgument);
  try {
    DistortionFunction::tabulated({0.0, 0.6, 0.4, 1.0});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_EQ(e.field(), "distortion.values");
  }
  EXPECT_THROW(DistortionFunction::piecewise_linear({{0.0, 0.0}, {0.5, 0.5}, {0.5, 0.6}, {1.0, 1.0}}),
               InvalidArgument);
  EXPECT_THROW(DistortionFunction::piecewise_linear({{0.0, 0.1}, {1.0, 1.0}}), InvalidArgument);
}

TEST(Distortion, TverskyKahnemanBelowMonotoneRangeIsRejected) {
  EXPECT_THROW(DistortionFunction::tversky_kahneman(0.2), InvalidArgument);
  EXPECT_NO_THROW(DistortionFunction::tversky_kahneman(0.3));
}

TEST(Distortion, Conjugate) {
  const auto id = conjugate(DistortionFunction::identity());
  EXPECT_TRUE(std::holds_alternative<distortion::Identity>(id.family()));

  const double alpha = 0.8;
  const auto vc = conjugate(DistortionFunction::var(alpha));
  for (double t : {0.0, 0.3, 0.79, 0.8, 0.81, 1.0}) {
    EXPECT_EQ(vc(t), t >= alpha ? 1.0 : 0.0) << t;
  }
  EXPECT_NEAR(conjugate(DistortionFunction::tvar(0.9))(0.95), 0.5, 1e-12);
}

TEST(Distortion, ConjugationIsAnInvolution) {
  for (const auto& d : all_families()) {
    const auto cc = conjugate(conjugate(d));
    for (int i = 0; i <= 4096; ++i) {
      const double t = i / 4096.0;
      ASSERT_NEAR(cc(t), d(t), 1e-12) << d.describe() << " t=" << t;
    }
  }
}

TEST(Distortion, MonotoneOnEveryFamily) {
  for (const auto& d : all_families()) {
    for (int res : {64, 1000, 65536}) EXPECT_TRUE(d.is_monotone(res)) << d.describe();
  }
}

TEST(Distortion, CrossingSetExamples) {
  const auto tv = crossing_set(DistortionFunction::tvar(0.9));
  EXPECT_TRUE(tv.points.empty());
  EXPECT_EQ(tv.signs, std::vector<Sign>{Sign::Positive});

  const auto var = crossing_set(DistortionFunction::var(0.9));
  ASSERT_EQ(var.points.size(), 1u);
  EXPECT_NEAR(var.points[0], 0.1, 1e-12);
  EXPECT_EQ(var.signs[0], Sign::Negative);
  EXPECT_EQ(var.signs[1], Sign::Positive);

  // Root of T(t) = t for theta = 0.5, from a 30-digit root finder.
  const auto tk = crossing_set(DistortionFunction::tversky_kahneman(0.5));
  ASSERT_EQ(tk.points.size(), 1u);
  EXPECT_NEAR(tk.points[0], 0.278132099237213, 1e-10);
  EXPECT_EQ(tk.signs[0], Sign::Positive);
  EXPECT_EQ(tk.signs[1], Sign::Negative);

  const auto id = crossing_set(DistortionFunction::identity());
  EXPECT_TRUE(id.points.empty());
  EXPECT_EQ(id.signs, std::vector<Sign>{Sign::Zero});
}

TEST(Distortion, CrossingSetRejectsCoarseResolution) {
  EXPECT_THROW(crossing_set(DistortionFunction::identity(), 63), PreconditionError);
}

TEST(Distortion, CrossingPointMovesRightWithTheta) {
  double prev = 0.0;
  for (int k = 30; k <= 80; ++k) {
    const auto cs = crossing_set(DistortionFunction::tversky_kahneman(k / 100.0));
    ASSERT_EQ(cs.points.size(), 1u);
    EXPECT_GE(cs.points[0], prev);
    prev = cs.points[0];
  }
}

TEST(Distortion, PiecewiseCrossingMatchesExactSegmentIntersection) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(5);
    for (double& x : v) x = testkit::unit(rng);
    std::sort(v.begin(), v.end());
    std::vector<std::pair<double, double>> k{{0.0, 0.0}};
    for (int i = 0; i < 5; ++i) k.emplace_back((i + 1) / 6.0, v[i]);
    k.emplace_back(1.0, 1.0);
    // Exact sign changes of the excess, one linear segment at a time.
    std::vector<double> exact;
    for (std::size_t i = 1; i < k.size(); ++i) {
      const double e0 = k[i - 1].second - k[i - 1].first;
      const double e1 = k[i].second - k[i].first;
      if ((e0 > 0 && e1 < 0) || (e0 < 0 && e1 > 0)) {
        exact.push_back(k[i - 1].first + (k[i].first - k[i - 1].first) * e0 / (e0 - e1));
      } else if (e1 == 0.0 && i + 1 < k.size()) {
        const double e2 = k[i + 1].second - k[i + 1].first;
        if ((e0 > 0 && e2 < 0) || (e0 < 0 && e2 > 0)) exact.push_back(k[i].first);
      }
    }
    const auto cs = crossing_set(DistortionFunction::piecewise_linear(k));
    ASSERT_EQ(cs.points.size(), exact.size()) << "trial " << trial;
    for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_NEAR(cs.points[i], exact[i], 1e-9);
  }
}

TEST(Distortion, PiecewiseCoincidingWithIdentityGivesZeroInterval) {
  const auto d = DistortionFunction::piecewise_linear(
      {{0.0, 0.0}, {0.2, 0.3}, {0.4, 0.4}, {0.6, 0.6}, {0.8, 0.7}, {1.0, 1.0}});
  const auto cs = crossing_set(d);
  ASSERT_EQ(cs.points.size(), 2u);
  EXPECT_NEAR(cs.points[0], 0.4, 1e-9);
  EXPECT_NEAR(cs.points[1], 0.6, 1e-9);
  EXPECT_EQ(cs.signs, (std::vector<Sign>{Sign::Positive, Sign::Zero, Sign::Negative}));
}

TEST(Distortion, WeakRiskAversion) {
  EXPECT_TRUE(is_weakly_risk_averse(DistortionFunction::tvar(0.3)));
  EXPECT_TRUE(is_weakly_risk_averse(DistortionFunction::tvar(0.99)));
  EXPECT_FALSE(is_weakly_risk_averse(DistortionFunction::tversky_kahneman(0.5)));
  EXPECT_TRUE(is_weakly_risk_averse(DistortionFunction::identity()));
  EXPECT_FALSE(is_weakly_risk_averse(DistortionFunction::var(0.9)));
}

TEST(Distortion, Dominance) {
  EXPECT_TRUE(dominates(DistortionFunction::tvar(0.9), DistortionFunction::identity()));
  EXPECT_TRUE(dominates(DistortionFunction::tvar(0.95), DistortionFunction::tvar(0.9)));
  EXPECT_FALSE(dominates(DistortionFunction::tvar(0.9), DistortionFunction::tvar(0.95)));
  EXPECT_FALSE(dominates(DistortionFunction::tversky_kahneman(0.5), DistortionFunction::identity()));
  EXPECT_TRUE(dominates(DistortionFunction::var(0.9), DistortionFunction::var(0.8)));
}

TEST(Distortion, Concavity) {
  EXPECT_TRUE(is_concave(DistortionFunction::tvar(0.7)));
  EXPECT_TRUE(is_concave(DistortionFunction::identity()));
  EXPECT_FALSE(is_concave(DistortionFunction::tversky_kahneman(0.5)));
}

TEST(Distortion, Breakpoints) {
  EXPECT_EQ(DistortionFunction::tvar(0.75).breakpoints(), std::vector<double>{0.25});
  EXPECT_EQ(conjugate(DistortionFunction::var(0.75)).breakpoints(), std::vector<double>{0.75});
  EXPECT_TRUE(DistortionFunction::tversky_kahneman(0.5).breakpoints().empty());
  EXPECT_EQ(DistortionFunction::tabulated({0.0, 0.7, 0.9, 1.0}).breakpoints().size(), 2u);
}

TEST(Distortion, TabulatedInterpolatesLinearly) {
  const auto d = DistortionFunction::tabulated({0.0, 0.5, 1.0 - 1e-3, 1.0});
  EXPECT_NEAR(d(1.0 / 6.0), 0.25, 1e-15);
  EXPECT_NEAR(d(1.0 / 3.0), 0.5, 1e-15);
}
