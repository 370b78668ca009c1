// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "bowley/config.hpp"

using namespace bowley;

TEST(Config, ParsesSectionsAndComments) {
  const auto c = RunConfig::parse_string(
      "# run\n"
      "[loss]\n"
      "kind = truncexp   ; inline comment\n"
      "lambda = 0.5\n"
      "\n"
      "[distortion]\n"
      "kind = tk\n"
      "theta = 0.6\n"
      "[solver]\n"
      "resolution = 2048\n"
      "tie = cede\n");
  EXPECT_EQ(c.loss().describe(), LossModel::truncated_exponential(0.5, 10).describe());
  EXPECT_DOUBLE_EQ(c.distortion()(0.3), DistortionFunction::tversky_kahneman(0.6)(0.3));
  EXPECT_EQ(c.resolution(), 2048);
  EXPECT_EQ(c.tie(), TiePolicy::Cede);
  EXPECT_EQ(c.line_of("loss.lambda"), 4);
}

TEST(Config, DottedKeysWithoutSections) {
  const auto c = RunConfig::parse_string("loss.kind = uniform\nloss.M = 4\ndistortion.kind = identity\n");
  EXPECT_EQ(c.loss().bound(), 4.0);
  EXPECT_EQ(c.tie(), TiePolicy::Retain);
  EXPECT_EQ(c.resolution(), 4096);
}

TEST(Config, PiecewiseKnots) {
  const auto c = RunConfig::parse_string("[distortion]\nkind = piecewise\nknots = 0:0, 0.5:0.8, 1:1\n");
  EXPECT_NEAR(c.distortion()(0.25), 0.4, 1e-15);
}

TEST(Config, SyntaxErrorsCarryLine) {
  try {
    RunConfig::parse_string("[loss]\nkind uniform\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(RunConfig::parse_string("[loss\n"), ConfigError);
  try {
    RunConfig::parse_string("[loss]\nkind = a\nkind = b\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "loss.kind");
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Config, InvalidParametersNameTheField) {
  try {
    RunConfig::parse_string("[distortion]\nkind = tabulated\nvalues = 0, 0.6, 0.4, 1\n").distortion();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "distortion.values");
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("distortion.values"), std::string::npos);
  }
  try {
    RunConfig::parse_string("[distortion]\nkind = tvar\nalpha = 1.5\n").distortion();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "distortion.alpha");
  }
  try {
    RunConfig::parse_string("[loss]\nkind = uniform\nM = ten\n").loss();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "loss.M");
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(RunConfig::parse_string("loss.kind = pareto\n").loss(), ConfigError);
  EXPECT_THROW(RunConfig::parse_string("distortion.theta = 0.5\n").distortion(), ConfigError);
  EXPECT_THROW(RunConfig::parse_string("solver.resolution = 10\n").resolution(), ConfigError);
  EXPECT_THROW(RunConfig::parse_string("solver.tie = maybe\n").tie(), ConfigError);
}

TEST(Config, SweepBlock) {
  const auto c = RunConfig::parse_string(
      "[sweep]\nparameter = theta\nstart = 0.3\nstop = 0.4\nstep = 0.05\n"
      "loss_parameter = a:b\nloss_values = 1.5:1, 2:0.3\n"
      "[loss]\nkind = kumaraswamy\n");
  const auto s = c.sweep();
  EXPECT_EQ(s.loss_parameter, "a:b");
  ASSERT_EQ(s.loss_values.size(), 2u);
  const auto k = c.with_loss_value("a:b", s.loss_values[1]).loss();
  EXPECT_EQ(k.describe(), LossModel::kumaraswamy(2, 0.3, 10).describe());
  EXPECT_THROW(RunConfig::parse_string("sweep.parameter = alpha\n").sweep(), ConfigError);
  EXPECT_THROW(RunConfig::parse_string("sweep.step = 0\n").sweep(), ConfigError);
  EXPECT_THROW(RunConfig::parse_string("sweep.loss_parameter = lambda\n").sweep(), ConfigError);
}

TEST(Config, MissingFile) { EXPECT_THROW(RunConfig::load("/nonexistent/bowley.ini"), ConfigError); }
