// Copyright 2026 The Coupon BNE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coupon_bne/privacy.h"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "coupon_bne/errors.h"
#include "coupon_bne/oracle.h"

namespace coupon_bne {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent enumeration of the four likelihood ratios.
double RatioOracle(double num, double den) {
  if (num == 0.0 && den == 0.0) return 1.0;
  if (den == 0.0) return kInf;
  return num / den;
}

double XGameOracle(double p, double q) {
  double m = RatioOracle(p, 1 - q);
  m = std::max(m, RatioOracle(1 - q, p));
  m = std::max(m, RatioOracle(q, 1 - p));
  m = std::max(m, RatioOracle(1 - p, q));
  return m;
}

TEST(XGameTest, Examples) {
  EXPECT_NEAR(XGame(BStrategy(0.75, 0.75)).value(), 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(XGame(BStrategy(0.3, 0.7)).value(), 1.0);
  EXPECT_TRUE(XGame(BStrategy(1.0, 0.5)).is_positive_infinity());
  EXPECT_DOUBLE_EQ(XGame(BStrategy(1.0, 0.0)).value(), 1.0);
}

TEST(DpEpsilonTest, Examples) {
  EXPECT_NEAR(DpEpsilon(BStrategy(0.75, 0.75)).value(), std::log(3.0), 1e-15);
  EXPECT_DOUBLE_EQ(DpEpsilon(BStrategy(0.5, 0.5)).value(), 0.0);
  // max(0.9 / 0.2, 0.8 / 0.1, 0.1 / 0.8, 0.2 / 0.9) = 8.
  EXPECT_NEAR(DpEpsilon(BStrategy(0.9, 0.8)).value(), std::log(8.0), 1e-14);
  EXPECT_TRUE(DpEpsilon(BStrategy(1.0, 1.0)).is_positive_infinity());
}

TEST(DpEpsilonTest, GridMatchesOracleAndSymmetries) {
  const int n = 40;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double p = static_cast<double>(i) / n,
                   q = static_cast<double>(j) / n;
      const double x = XGame(BStrategy(p, q)).value();
      const double oracle = XGameOracle(p, q);
      if (std::isinf(oracle)) {
        EXPECT_TRUE(std::isinf(x));
      } else {
        EXPECT_NEAR(x, oracle, 1e-12 * oracle);
      }
      EXPECT_EQ(x, XGame(BStrategy(q, p)).value());
      const double flipped = XGame(BStrategy(1 - p, 1 - q)).value();
      if (std::isinf(x)) {
        EXPECT_TRUE(std::isinf(flipped));
      } else {
        EXPECT_NEAR(x, flipped, 1e-12 * x);
      }
      // Zero privacy loss on the uninformative line, positive off it.
      const double eps = DpEpsilon(BStrategy(p, q)).value();
      if (i + j == n) {
        EXPECT_NEAR(eps, 0.0, 1e-15) << p << " " << q;
      } else {
        EXPECT_GT(eps, 1e-3) << p << " " << q;
      }
    }
  }
}

TEST(RandomizedResponseTest, Examples) {
  EXPECT_TRUE(IsRandomizedResponse(BStrategy(0.75, 0.75), 0.0));
  EXPECT_FALSE(IsRandomizedResponse(BStrategy(1.0, 1.0), 0.0));
  EXPECT_FALSE(IsRandomizedResponse(BStrategy(0.6, 0.4), 0.0));
  EXPECT_TRUE(IsRandomizedResponse(BStrategy(0.5, 0.5), 0.0));
}

PrivacyAwareParams Params(double d0, double r0, double r1, double v) {
  return PrivacyAwareParams(Prior(d0), CouponValues(r0, r1), v);
}

TEST(PrivacyAwareUtilityTest, Examples) {
  const auto params = Params(0.5, 100, 100, 1);
  EXPECT_DOUBLE_EQ(PrivacyAwareUtility(params, BStrategy(1, 0)).value(), 50.0);
  EXPECT_TRUE(
      PrivacyAwareUtility(params, BStrategy(1, 0.5)).is_negative_infinity());
  const double u =
      PrivacyAwareUtility(params, BStrategy(0.9899, 0.9899)).value();
  EXPECT_NEAR(u, 94.40, 5e-3);
  EXPECT_THROW(Params(0.5, 1, 1, 0.0), Error);
}

TEST(SolvePrivacyAwareTest, InteriorOptimum) {
  const auto params = Params(0.5, 100, 100, 1);
  const PrivacyAwareSolution sol = SolvePrivacyAware(params);
  const double p_star = 0.5 * (1 + std::sqrt(0.96));
  EXPECT_NEAR(sol.b.p, p_star, 1e-15);
  EXPECT_NEAR(sol.b.q, p_star, 1e-15);
  EXPECT_NEAR(sol.utility.value(), 94.40, 5e-3);
  EXPECT_FALSE(sol.degenerate);
  // First-order condition Y = v / (p (1 - p)).
  EXPECT_NEAR(params.Y() - params.v / (p_star * (1 - p_star)), 0.0, 1e-8);
}

TEST(SolvePrivacyAwareTest, CornerWhenValuationIsHigh) {
  const auto params = Params(0.9, 10, 10, 100);
  EXPECT_FALSE(PrivacyAwareInteriorPoint(params).has_value());
  const PrivacyAwareSolution sol = SolvePrivacyAware(params);
  EXPECT_EQ(sol.b.p, 1.0);
  EXPECT_EQ(sol.b.q, 0.0);
  EXPECT_NEAR(sol.utility.value(), 9.0, 1e-12);
}

TEST(SolvePrivacyAwareTest, TieIsFlagged) {
  const PrivacyAwareSolution sol = SolvePrivacyAware(Params(0.5, 1, 1, 100));
  EXPECT_TRUE(sol.degenerate);
  EXPECT_FALSE(sol.note.empty());
}

TEST(SolvePrivacyAwareTest, UtilityShareTendsToOne) {
  const auto params = Params(0.5, 1e6, 1e6, 1);
  const PrivacyAwareSolution sol = SolvePrivacyAware(params);
  EXPECT_NEAR(sol.utility.value() / params.Y(), 1.0, 1e-3);
}

// The solver's value dominates every point of the 1e-3 grid.
TEST(SolvePrivacyAwareTest, BeatsTheGrid) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.05, 0.95), r(0.1, 60.0),
      v(0.1, 5.0);
  for (int i = 0; i < 4; ++i) {
    const auto params = Params(d(rng), r(rng), r(rng), v(rng));
    const PrivacyAwareSolution sol = SolvePrivacyAware(params);
    const GridArgmax grid = PrivacyAwareGridArgmax(params, 1e-3);
    EXPECT_GE(sol.utility.value(), grid.utility.value() - 1e-6);
  }
}

TEST(SolvePrivacyAwareTest, GridArgmaxNearInteriorPoint) {
  const auto params = Params(0.5, 100, 100, 1);
  const auto start = std::chrono::steady_clock::now();
  const GridArgmax grid = PrivacyAwareGridArgmax(params, 1e-3);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const double p_star = 0.5 * (1 + std::sqrt(0.96));
  EXPECT_LE(std::abs(grid.b.p - p_star), 1e-3);
  EXPECT_LE(std::abs(grid.b.q - p_star), 1e-3);
  EXPECT_LT(secs, 5.0);
}

TEST(TwoPlayerZStarTest, StatedRootLiesInBracket) {
  const double z = TwoPlayerZStar(10, 1);
  EXPECT_GT(z, 0.9);
  EXPECT_LT(z, 1.0);
  EXPECT_NEAR(10 * z - std::log(z / (1 - z)) - 1, 0.0, 1e-8);
}

TEST(TwoPlayerZStarTest, IndifferenceRoot) {
  const double z = TwoPlayerZStar(10, 1, ZStarReading::kIndifference);
  EXPECT_NEAR(z, 0.9999545608576162, 1e-12);
  EXPECT_NEAR(10 * (2 * z - 1) - std::log(z / (1 - z)), 0.0, 1e-6);
}

TEST(TwoPlayerZStarTest, DegenerateBracketDoesNotCrash) {
  try {
    TwoPlayerZStar(4, 1);
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::kNoRoot ||
                e.code() == ErrorCode::kInvalidRange);
  }
  EXPECT_THROW(TwoPlayerZStar(1.5, 1), Error);
}

TEST(ClassifyTwoPlayerTest, Examples) {
  EXPECT_EQ(CategoryName(ClassifyTwoPlayerNe(BStrategy(0.9, 0.9), 10, 1)),
            "RandomizedResponse");
  const auto pool = ClassifyTwoPlayerNe(BStrategy(1, 0), 10, 1);
  ASSERT_TRUE(std::holds_alternative<PoolOnZero>(pool));
  EXPECT_EQ(std::get<PoolOnZero>(pool).z, 0.0);
  EXPECT_EQ(CategoryName(ClassifyTwoPlayerNe(BStrategy(0.5, 0.9), 10, 1)),
            "NotEquilibrium");
  EXPECT_EQ(CategoryName(ClassifyTwoPlayerNe(BStrategy(0, 1), 10, 1)),
            "PoolOnOne");
}

// Largest gain either player gets from a unilateral deviation on a grid
// plus the analytic candidates p = 1 - q (pooling) and p = q.
double TwoPlayerGap(const BStrategy& b, double rho, double v) {
  const int n = 2000;
  double gap = 0.0;
  const double u0 = TwoPlayerUtility(b, 0, rho, v).value();
  const double u1 = TwoPlayerUtility(b, 1, rho, v).value();
  auto consider = [&](double x) {
    const double d0 = TwoPlayerUtility(BStrategy(x, b.q), 0, rho, v).value();
    const double d1 = TwoPlayerUtility(BStrategy(b.p, x), 1, rho, v).value();
    if (d0 > u0) gap = std::max(gap, d0 - u0);
    if (d1 > u1) gap = std::max(gap, d1 - u1);
  };
  for (int i = 0; i <= n; ++i) consider(static_cast<double>(i) / n);
  consider(1 - b.q);
  consider(b.q);
  consider(1 - b.p);
  consider(b.p);
  return gap;
}

// Every point the classifier accepts survives the deviation search, and a
// sample of rejected points does not.
TEST(ClassifyTwoPlayerTest, AgreesWithDeviationSearch) {
  const double rho = 10, v = 1;
  const double zi = TwoPlayerZStar(rho, v, ZStarReading::kIndifference);
  for (double z : {0.9, 0.95, 0.99, 0.999, zi}) {
    const BStrategy b(z, z);
    EXPECT_EQ(CategoryName(ClassifyTwoPlayerNe(b, rho, v)),
              "RandomizedResponse");
    EXPECT_LT(TwoPlayerGap(b, rho, v), 1e-6) << z;
  }
  for (double z : {0.0, 1e-6, 1 - zi}) {
    const BStrategy b(1 - z, z);
    EXPECT_EQ(CategoryName(ClassifyTwoPlayerNe(b, rho, v)), "PoolOnZero");
    EXPECT_LT(TwoPlayerGap(b, rho, v), 1e-6) << z;
  }
  for (const BStrategy& b : {BStrategy(0.5, 0.9), BStrategy(0.8, 0.8),
                             BStrategy(0.5, 0.5), BStrategy(0.9, 0.2)}) {
    EXPECT_EQ(CategoryName(ClassifyTwoPlayerNe(b, rho, v)), "NotEquilibrium");
    EXPECT_GT(TwoPlayerGap(b, rho, v), 1e-4);
  }
}

}  // namespace
}  // namespace coupon_bne
