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

#include "coupon_bne/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "coupon_bne/errors.h"
#include "coupon_bne/game.h"

namespace coupon_bne {
namespace {

const double kRrD0 = 0.5505102572168219;

GameSpec QuadraticScoring() {
  return ScoringGame{Prior(0.6), CouponValues(1, 1), MakeQuadratic()};
}

GameSpec IdentityTie() {
  return IdentityGame{Prior(0.6), CouponValues(0.5, 0.5)};
}

GameSpec OptOutCase6() {
  return OptOutGame{Prior(kRrD0), CouponValues(1.0, 1.2),
                    PaymentMatrix(1, 3, 2, 1)};
}

GameSpec PrivacyGame() {
  return PrivacyAwareGame{Prior(0.5), CouponValues(100, 100), 1.0};
}

GameSpec ContinuousUniform() {
  return IdentityContinuousGame{
      Prior(0.7), ValuationModel{UniformValuation{}, UniformValuation{}}};
}

std::vector<GameSpec> AllGames() {
  return {PrivacyGame(), QuadraticScoring(), IdentityTie(), ContinuousUniform(),
          OptOutCase6()};
}

double Distance(const BStrategy& a, const BStrategy& b) {
  return std::max(std::abs(a.p - b.p), std::abs(a.q - b.q));
}

TEST(BestResponseGapTest, SolvedProfilesHaveSmallGaps) {
  for (const GameSpec& game : AllGames()) {
    const EquilibriumReport report = Solve(game);
    const GapReport gaps = BestResponseGap(game, report.profile, 1e-3);
    EXPECT_LE(gaps.max_gap(), 1e-4) << GameName(game);
    EXPECT_GE(gaps.gap_a, 0.0);
    EXPECT_GE(gaps.gap_b0, 0.0);
    EXPECT_GE(gaps.gap_b1, 0.0);
    EXPECT_EQ(gaps.grid_step, 1e-3);
  }
}

TEST(BestResponseGapTest, IdentityTruthfulIsNotEquilibrium) {
  const GapReport gaps = BestResponseGap(
      IdentityTie(), Profile{BStrategy(1, 1), GuessPolicy(1, 1), std::nullopt},
      1e-3);
  // Type 0 moves from rho0 - x = -0.5 to y - 1 = 0.
  EXPECT_NEAR(gaps.gap_b0, 0.5, 1e-12);
  EXPECT_FALSE(gaps.argmax_deviations.empty());
}

TEST(BestResponseGapTest, NullDeviationIsZero) {
  // Pure grid profiles where every player is already at a best response.
  const GapReport id = BestResponseGap(
      IdentityGame{Prior(0.6), CouponValues(0.8, 0.5)},
      Profile{BStrategy(1, 0), GuessPolicy(1, 0.65), std::nullopt}, 1e-2);
  EXPECT_EQ(id.max_gap(), 0.0);
  const GapReport opt = BestResponseGap(
      OptOutGame{Prior(kRrD0), CouponValues(3.5, 4.5),
                 PaymentMatrix(1, 3, 2, 1)},
      Profile{BStrategy(1, 1), OptOutPolicy(1, 0, 0, 1), std::nullopt}, 1e-2);
  EXPECT_EQ(opt.max_gap(), 0.0);
}

TEST(BestResponseGapTest, FinerGridFindsAtLeastAsMuch) {
  const std::vector<std::pair<GameSpec, Profile>> cases = {
      {QuadraticScoring(),
       Profile{BStrategy(0.7, 0.4), ScoringReportPair(0.33, 0.61),
               std::nullopt}},
      {IdentityTie(),
       Profile{BStrategy(0.37, 0.81), GuessPolicy(0.4, 0.7), std::nullopt}},
      {OptOutCase6(), Profile{BStrategy(0.3, 0.9), OptOutPolicy(0.2, 0, 0, 0.5),
                              std::nullopt}},
      {PrivacyGame(),
       Profile{BStrategy(0.913, 0.457), std::monostate{}, std::nullopt}},
      {ContinuousUniform(),
       Profile{BStrategy(0.5, 0.5), GuessPolicy(1, 0.3), 0.437}},
  };
  for (const auto& [game, profile] : cases) {
    const GapReport coarse = BestResponseGap(game, profile, 1e-2);
    const GapReport fine = BestResponseGap(game, profile, 1e-3);
    EXPECT_GE(fine.gap_a, coarse.gap_a) << GameName(game);
    EXPECT_GE(fine.gap_b0, coarse.gap_b0) << GameName(game);
    EXPECT_GE(fine.gap_b1, coarse.gap_b1) << GameName(game);
    EXPECT_GT(fine.max_gap(), 0.0) << GameName(game);
  }
}

TEST(BestResponseGapTest, InfiniteUtilityGivesInfiniteGap) {
  // Pure separation makes the privacy cost infinite; any interior point
  // on the grid is finite.
  const GapReport gaps = BestResponseGap(
      PrivacyGame(), Profile{BStrategy(1, 1), std::monostate{}, std::nullopt},
      1e-2);
  EXPECT_TRUE(std::isinf(gaps.max_gap()));
}

TEST(EnumerateEquilibriaTest, ScoringSingleComponent) {
  const auto comps = EnumerateEquilibria(QuadraticScoring(), 0.025, 0.01);
  ASSERT_EQ(comps.size(), 1u);
  double best = 1.0;
  for (const Profile& m : comps[0].members) {
    best = std::min(best, Distance(m.b, BStrategy(0.875, 0.5625)));
  }
  EXPECT_LE(best, 0.025);
}

TEST(EnumerateEquilibriaTest, IdentityTraceIsTheL2Segment) {
  const auto comps = EnumerateEquilibria(IdentityTie(), 0.05, 0.03);
  ASSERT_EQ(comps.size(), 1u);
  const auto& c = comps[0];
  // The segment runs from (1/3, 1) to (1, 0).
  EXPECT_LE(c.p_min, 1.0 / 3.0 + 0.05);
  EXPECT_GE(c.p_max, 1.0 - 1e-12);
  EXPECT_LE(c.q_min, 1e-12);
  EXPECT_GE(c.q_max, 1.0 - 1e-12);
  for (const Profile& m : c.members) {
    EXPECT_LE(std::abs(0.6 * (1 - m.b.p) - 0.4 * m.b.q), 0.05) << m.b.p;
  }
  // Randomized response lies on it.
  double best = 1.0;
  for (const Profile& m : c.members) {
    best = std::min(best, Distance(m.b, BStrategy(0.6, 0.6)));
  }
  EXPECT_LE(best, 0.05);
}

TEST(EnumerateEquilibriaTest, OptOutSingleComponentAroundP5) {
  const auto comps = EnumerateEquilibria(OptOutCase6(), 0.01, 0.01);
  ASSERT_EQ(comps.size(), 1u);
  const EquilibriumReport report = Solve(OptOutCase6());
  double best = 1.0;
  for (const Profile& m : comps[0].members) {
    best = std::min(best, Distance(m.b, report.profile.b));
  }
  EXPECT_LE(best, 0.01);
}

TEST(EnumerateEquilibriaTest, FindsEverySolverOutput) {
  const std::vector<std::tuple<GameSpec, double, double>> cases = {
      {PrivacyGame(), 0.01, 0.5},
      {QuadraticScoring(), 0.025, 0.01},
      {IdentityGame{Prior(0.6), CouponValues(0.8, 0.5)}, 0.05, 0.01},
      {IdentityGame{Prior(0.6), CouponValues(0.5, 0.8)}, 0.05, 0.03},
      {ContinuousUniform(), 0.01, 1e-3},
      {OptOutCase6(), 0.01, 0.01},
  };
  for (const auto& [game, step, tol] : cases) {
    const EquilibriumReport report = Solve(game);
    const auto comps = EnumerateEquilibria(game, step, tol);
    ASSERT_FALSE(comps.empty()) << GameName(game);
    double best = 1.0;
    for (const auto& c : comps) {
      for (const Profile& m : c.members) {
        best = std::min(best, Distance(m.b, report.profile.b));
      }
    }
    EXPECT_LE(best, step + 1e-12) << GameName(game);
  }
}

TEST(EnumerateEquilibriaTest, Guards) {
  try {
    EnumerateEquilibria(IdentityTie(), 5e-4, 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRange);
  }
  try {
    // Every A action ties under a huge tolerance, so each B point expands
    // into a full mixture grid.
    EnumerateEquilibria(IdentityGame{Prior(0.5), CouponValues(0.5, 0.5)}, 1e-3,
                        10.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExceeded);
  }
}

TEST(EnumerateEquilibriaTest, IndependentOfWorkerCount) {
  auto run = [](const char* threads) {
    setenv("COUPON_BNE_THREADS", threads, 1);
    auto comps = EnumerateEquilibria(IdentityTie(), 0.05, 0.03);
    unsetenv("COUPON_BNE_THREADS");
    return comps;
  };
  const auto one = run("1");
  const auto many = run("4");
  ASSERT_EQ(one.size(), many.size());
  for (size_t i = 0; i < one.size(); ++i) {
    ASSERT_EQ(one[i].members.size(), many[i].members.size());
    for (size_t j = 0; j < one[i].members.size(); ++j) {
      EXPECT_EQ(one[i].members[j].b.p, many[i].members[j].b.p);
      EXPECT_EQ(one[i].members[j].b.q, many[i].members[j].b.q);
    }
  }
}

TEST(UtilitySurfaceTest, CornerRows) {
  const auto rows = UtilitySurface(IdentityTie(), 2);
  ASSERT_EQ(rows.size(), 9u);
  bool saw00 = false, saw11 = false, saw_mid = false;
  for (const SurfaceRow& r : rows) {
    if (r.p == 0 && r.q == 0) saw00 = true;
    if (r.p == 0.5 && r.q == 0.5) saw_mid = true;
    if (r.p == 1 && r.q == 1) {
      saw11 = true;
      // Truthful B: A guesses the signal and is always right.
      EXPECT_DOUBLE_EQ(r.u_a_best, 1.0);
      EXPECT_DOUBLE_EQ(r.u_b0.value(), 0.5 - 1.0);
    }
  }
  EXPECT_TRUE(saw00 && saw11 && saw_mid);
  const auto privacy = UtilitySurface(PrivacyGame(), 2);
  for (const SurfaceRow& r : privacy) EXPECT_EQ(r.u_a_best, 0.0);
  try {
    UtilitySurface(ContinuousUniform(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupported);
  }
}

TEST(PrivacyAwareGridArgmaxTest, MatchesSolverWithinOneStep) {
  const PrivacyAwareParams params(Prior(0.5), CouponValues(100, 100), 1.0);
  const GridArgmax grid = PrivacyAwareGridArgmax(params, 1e-3);
  const PrivacyAwareSolution exact = SolvePrivacyAware(params);
  EXPECT_LE(Distance(grid.b, exact.b), 1e-3 + 1e-12);
  EXPECT_GE(exact.utility, grid.utility);
}

TEST(WorkerCountTest, ReadsEnvironment) {
  setenv("COUPON_BNE_THREADS", "3", 1);
  EXPECT_EQ(WorkerCount(), 3);
  setenv("COUPON_BNE_THREADS", "0", 1);
  EXPECT_GE(WorkerCount(), 1);
  unsetenv("COUPON_BNE_THREADS");
  EXPECT_GE(WorkerCount(), 1);
}

}  // namespace
}  // namespace coupon_bne
