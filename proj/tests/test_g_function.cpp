// Copyright 2026 The gforce Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gforce/g_function.hpp"

namespace gforce {
namespace {

constexpr double kE = std::numbers::e;

GFunction convex_table() {
  std::vector<GFunction::Knot> knots;
  for (int j = 0; j <= 6; ++j) knots.push_back({static_cast<double>(j + 1), std::pow(2.0, j + 1)});
  return GFunction::custom_table(knots);
}

TEST(EvalG, LogIdentity) { EXPECT_NEAR(GFunction::log().value(kE - 1.0), 1.0, 1e-15); }

TEST(EvalG, SquareRoot) { EXPECT_DOUBLE_EQ(eval_g(GFunction::power(0.5, 1.0, 0.0), 9), 3.0); }

TEST(EvalG, ScaledLog) { EXPECT_NEAR(eval_g(GFunction::log(2.0, 1.0), 1), 2.0 * std::log(2.0), 1e-12); }

TEST(EvalGDerivative, LogAtZero) { EXPECT_DOUBLE_EQ(GFunction::log().derivative(0.0), 1.0); }

TEST(EvalGDerivative, PowerAtFour) { EXPECT_DOUBLE_EQ(eval_g_derivative(GFunction::power(0.5), 4), 0.25); }

TEST(EvalGDerivative, LogVanishes) { EXPECT_LT(eval_g_derivative(GFunction::log(), 1'000'000'000), 1e-8); }

TEST(EvalG, SqrtLnLnClosedForm) {
  const auto g = GFunction::sqrt_lnln();
  const double u = 1e6 + GFunction::kDefaultLnLnShift;
  EXPECT_NEAR(g.value(1e6), std::sqrt(u * std::log(std::log(u))), 1e-9);
}

TEST(EvalG, IteratedLogPositiveAtOne) { EXPECT_GT(eval_g(GFunction::iterated_log(), 1), 0.0); }

TEST(EvalG, CustomTableInterpolatesInLogT) {
  const auto g = GFunction::custom_table({{1.0, 1.0}, {100.0, 3.0}});
  EXPECT_DOUBLE_EQ(g.value(1.0), 1.0);
  EXPECT_DOUBLE_EQ(g.value(100.0), 3.0);
  EXPECT_NEAR(g.value(10.0), 2.0, 1e-12);
}

TEST(GFunctionConstruction, RejectsUndefinedFormulas) {
  EXPECT_THROW(GFunction::log(-1.0), std::invalid_argument);
  EXPECT_THROW(GFunction::log(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(GFunction::power(0.0), std::invalid_argument);
  EXPECT_THROW(GFunction::custom_table({{1.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(GFunction::custom_table({{2.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST(GFunctionParse, KindNamesRoundTrip) {
  for (auto k : {GFunction::Kind::kLog, GFunction::Kind::kIteratedLog, GFunction::Kind::kPower,
                 GFunction::Kind::kSqrtLnLn, GFunction::Kind::kCustomTable}) {
    EXPECT_EQ(parse_g_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_g_kind("cubic").has_value());
}

TEST(ValidateG, GridIsPowersOfTwo) {
  const auto grid = validation_grid();
  ASSERT_EQ(grid.size(), 31u);
  EXPECT_EQ(grid.front(), 1);
  EXPECT_EQ(grid.back(), std::int64_t{1} << 30);
}

TEST(ValidateG, LogPasses) { EXPECT_TRUE(validate_g(GFunction::log()).passed()); }

TEST(ValidateG, LinearFailsSubLinearity) {
  const auto report = validate_g(GFunction::power(1.0));
  EXPECT_FALSE(report.passed());
  const auto* c = report.find("sub-linear");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
  EXPECT_TRUE(c->first_violation.has_value());
}

TEST(ValidateG, SqrtPasses) { EXPECT_TRUE(validate_g(GFunction::power(0.5, 1.0)).passed()); }

TEST(ValidateG, ConvexTableFailsConcavity) {
  const auto report = validate_g(convex_table());
  const auto* c = report.find("concave");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
}

TEST(ValidateG, DecreasingTableFailsIncreasing) {
  const auto report = validate_g(GFunction::custom_table({{1.0, 5.0}, {10.0, 4.0}, {100.0, 3.0}}));
  const auto* c = report.find("increasing");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
}

TEST(ValidateG, BoundedFailsUnboundedness) {
  // Flat after t=10: concave and increasing but bounded.
  const auto report = validate_g(GFunction::custom_table({{1.0, 1.0}, {10.0, 2.0}, {1e12, 2.0}}));
  const auto* c = report.find("unbounded");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
}

TEST(ValidateG, ReportListsEveryHypothesis) {
  const auto report = validate_g(GFunction::log());
  for (const char* h : {"positive", "increasing", "concave", "sub-linear", "unbounded", "derivative"}) {
    EXPECT_NE(report.find(h), nullptr) << h;
  }
}

// Properties over every shipped kind and a spread of parameters.

class ShippedKinds : public ::testing::TestWithParam<GFunction::Kind> {};

TEST_P(ShippedKinds, DefaultsAreAdmissible) {
  const auto report = validate_g(GFunction::with_defaults(GetParam()));
  EXPECT_TRUE(report.passed()) << ::testing::PrintToString(report.failures());
}

TEST_P(ShippedKinds, IncreasingAndConcaveOnDenseSample) {
  const auto g = GFunction::with_defaults(GetParam());
  double prev = g.value(1.0);
  double prev_slope = g.derivative(1.0);
  for (double t = 2.0; t < 1e9; t *= 1.37) {
    const double v = g.value(t);
    const double s = g.derivative(t);
    EXPECT_GE(v, prev) << t;
    EXPECT_LE(s, prev_slope * (1 + 1e-12)) << t;
    EXPECT_GE(s, 0.0) << t;
    prev = v;
    prev_slope = s;
  }
}

TEST_P(ShippedKinds, DerivativeMatchesCentralDifference) {
  const auto g = GFunction::with_defaults(GetParam());
  for (double t : {3.0, 50.0, 1e3, 1e5, 1e7}) {
    const double h = t * 1e-5;
    const double fd = (g.value(t + h) - g.value(t - h)) / (2 * h);
    EXPECT_NEAR(g.derivative(t), fd, 1e-5 * std::max(1.0, std::abs(fd))) << t;
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, ShippedKinds,
                         ::testing::Values(GFunction::Kind::kLog, GFunction::Kind::kIteratedLog,
                                           GFunction::Kind::kPower, GFunction::Kind::kSqrtLnLn),
                         [](const auto& info) {
                           std::string s(to_string(info.param));
                           for (auto& c : s) c = (c == '-') ? '_' : c;
                           return s;
                         });

TEST(ValidateGProperty, PowerAdmissibleIffExponentBelowOne) {
  for (double a : {0.2, 0.3, 0.5, 0.8, 0.95}) EXPECT_TRUE(validate_g(GFunction::power(a)).passed()) << a;
  for (double a : {1.0, 1.2, 2.0}) EXPECT_FALSE(validate_g(GFunction::power(a)).passed()) << a;
}

TEST(ValidateG, SlowPowerFailsUnboundednessProxy) {
  // 2^(30*0.1) = 8 never climbs 10 above g(1) on the grid.
  const auto* c = validate_g(GFunction::power(0.1)).find("unbounded");
  EXPECT_FALSE(c->passed);
  EXPECT_TRUE(validate_g(GFunction::power(0.1, 4.0)).passed());
}

TEST(ValidateG, NearLinearPowerFailsGridProxy) {
  // g(t)/t shrinks by 2^(-30*0.01) over the grid, short of the halving required.
  EXPECT_FALSE(validate_g(GFunction::power(0.99)).find("sub-linear")->passed);
}

TEST(ValidateGProperty, ScaleDoesNotChangeShape) {
  for (double s : {0.5, 1.0, 3.0, 20.0}) {
    const auto r = validate_g(GFunction::log(s));
    for (const char* h : {"positive", "increasing", "concave", "sub-linear", "derivative"}) {
      EXPECT_TRUE(r.find(h)->passed) << s << " " << h;
    }
  }
}

}  // namespace
}  // namespace gforce
