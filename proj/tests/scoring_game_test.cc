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

#include "coupon_bne/scoring_game.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "coupon_bne/errors.h"
#include "coupon_bne/game.h"
#include "coupon_bne/oracle.h"
#include "coupon_bne/privacy.h"

namespace coupon_bne {
namespace {

double MaxGap(const Prior& prior, const CouponValues& coupons,
              const ScoringRule& rule, const ScoringBne& bne, double step) {
  const GameSpec game = ScoringGame{prior, coupons, rule};
  return BestResponseGap(game, Profile{bne.b, bne.a, std::nullopt}, step)
      .max_gap();
}

TEST(BenchmarkProfitTest, Examples) {
  EXPECT_NEAR(BenchmarkProfit(Prior(0.5), MakeQuadratic()), 1.5, 1e-15);
  EXPECT_NEAR(BenchmarkProfit(Prior(0.6), MakeQuadratic()), 1.52, 1e-15);
  EXPECT_NEAR(BenchmarkProfit(Prior(0.5), MakeLogarithmic()), -std::log(2.0),
              1e-15);
}

TEST(BBestResponseTest, Examples) {
  const ScoringRule quad = MakeQuadratic();
  BResponse r = BBestResponse(quad, ScoringReportPair(0.25, 0.75),
                              CouponValues(1.0, 1.0));
  EXPECT_EQ(r.p, PureChoice::kFree);
  EXPECT_EQ(r.q, PureChoice::kFree);

  for (const ScoringRule& rule :
       {MakeQuadratic(), MakeSpherical(), MakeLogarithmic()}) {
    r = BBestResponse(rule, ScoringReportPair(0.3, 0.3),
                      CouponValues(0.2, 0.2));
    EXPECT_EQ(r.p, PureChoice::kOne) << rule.name();
    EXPECT_EQ(r.q, PureChoice::kOne) << rule.name();
  }

  r = BBestResponse(quad, ScoringReportPair(0.0, 1.0), CouponValues(3, 3));
  EXPECT_EQ(r.p, PureChoice::kOne);
  EXPECT_EQ(r.q, PureChoice::kOne);
  r = BBestResponse(quad, ScoringReportPair(0.0, 1.0), CouponValues(1, 1));
  EXPECT_EQ(r.p, PureChoice::kZero);
  EXPECT_EQ(r.q, PureChoice::kZero);
}

TEST(SolveScoringBneTest, QuadraticInterior) {
  const Prior prior(0.6);
  const ScoringBne bne = SolveScoringBne(prior, 1.0, MakeQuadratic());
  EXPECT_EQ(bne.regime, ScoringRegime::kInterior);
  EXPECT_TRUE(bne.unique);
  EXPECT_NEAR(*bne.y1, 0.75, 1e-12);
  EXPECT_NEAR(bne.b.p, 0.875, 1e-12);
  EXPECT_NEAR(bne.b.q, 0.5625, 1e-12);
  EXPECT_NEAR(bne.a.x0, 0.25, 1e-12);
  EXPECT_NEAR(bne.a.x1, 0.75, 1e-12);
  EXPECT_NEAR(bne.posterior_epsilon, std::log(3.0), 1e-12);
  EXPECT_NEAR(bne.a_profit, 1.625, 1e-12);
  EXPECT_NEAR(bne.benchmark_profit, 1.52, 1e-12);

  const auto [y0, y1] = BayesPosteriors(prior, bne.b);
  EXPECT_NEAR(y0, 0.25, 1e-12);
  EXPECT_NEAR(y1, 0.75, 1e-12);
}

TEST(SolveScoringBneTest, LogarithmicEpsilonEqualsRho) {
  const ScoringBne bne = SolveScoringBne(Prior(0.5), 0.8, MakeLogarithmic());
  EXPECT_EQ(bne.regime, ScoringRegime::kInterior);
  EXPECT_NEAR(bne.posterior_epsilon, 0.8, 1e-10);
  for (double d0 : {0.55, 0.6}) {
    const ScoringBne other = SolveScoringBne(Prior(d0), 0.8, MakeLogarithmic());
    ASSERT_EQ(other.regime, ScoringRegime::kInterior) << d0;
    EXPECT_NEAR(other.posterior_epsilon, 0.8, 1e-10) << d0;
  }
}

TEST(SolveScoringBneTest, SphericalSeparatingBoundary) {
  const ScoringBne bne = SolveScoringBne(Prior(0.5), 1.0, MakeSpherical());
  EXPECT_EQ(bne.regime, ScoringRegime::kSeparating11);
  EXPECT_FALSE(bne.unique);
  EXPECT_EQ(bne.b.p, 1.0);
  EXPECT_EQ(bne.b.q, 1.0);
  EXPECT_FALSE(bne.notes.empty());

  const ScoringBne above = SolveScoringBne(Prior(0.5), 1.5, MakeSpherical());
  EXPECT_EQ(above.regime, ScoringRegime::kSeparating11);
  EXPECT_TRUE(above.unique);
  EXPECT_TRUE(std::isinf(above.posterior_epsilon));

  // Interior roots 1/2 + 1/2 sqrt(rho^2 / (2 - rho^2)).
  for (double rho : {0.3, 0.6, 0.9}) {
    const ScoringBne s = SolveScoringBne(Prior(0.5), rho, MakeSpherical());
    ASSERT_EQ(s.regime, ScoringRegime::kInterior);
    EXPECT_NEAR(*s.y1, 0.5 + 0.5 * std::sqrt(rho * rho / (2 - rho * rho)),
                1e-12);
  }
}

TEST(SolveScoringBneTest, PoolingRegime) {
  const Prior prior(0.9);
  const ScoringRule rule = MakeQuadratic();
  const ScoringBne bne = SolveScoringBne(prior, 1.0, rule);
  EXPECT_EQ(bne.regime, ScoringRegime::kPooling10);
  EXPECT_EQ(bne.b.p, 1.0);
  EXPECT_EQ(bne.b.q, 0.0);
  EXPECT_NEAR(bne.a.x0, 0.1, 1e-15);
  ASSERT_TRUE(bne.x1_interval.has_value());
  EXPECT_FALSE(bne.y1.has_value());
  EXPECT_EQ(bne.posterior_epsilon, 0.0);
  // Every off-path report in the interval sustains the pooling profile.
  for (double x1 : {bne.x1_interval->lo, bne.x1_interval->midpoint(),
                    bne.x1_interval->hi}) {
    ScoringBne probe = bne;
    probe.a.x1 = x1;
    EXPECT_LE(MaxGap(prior, CouponValues(1, 1), rule, probe, 1e-3), 1e-9) << x1;
  }
}

TEST(SolveScoringBneTest, Errors) {
  const ScoringRule quad = MakeQuadratic();
  EXPECT_THROW(SolveScoringBne(Prior(0.5), 0.0, quad), Error);
  EXPECT_THROW(SolveScoringBne(Prior(0.5), -1.0, quad), Error);
  EXPECT_THROW(SolveScoringBne(Prior(0.5), std::nan(""), quad), Error);
  const ScoringRule skewed = ScoringRule::Custom(
      "skewed", [](double x) { return x * x * x + x * x; },
      [](double x) { return 3 * x * x + 2 * x; },
      [](double x) { return 6 * x + 2; });
  try {
    SolveScoringBne(Prior(0.5), 1.0, skewed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonSymmetricRule);
  }
}

TEST(PosteriorSymmetryResidualTest, Examples) {
  EXPECT_NEAR(PosteriorSymmetryResidual(Prior(0.6), BStrategy(0.875, 0.5625)),
              0.0, 1e-12);
  EXPECT_NEAR(PosteriorSymmetryResidual(Prior(0.5), BStrategy(0.3, 0.3)), 0.0,
              1e-15);
  EXPECT_GT(
      std::abs(PosteriorSymmetryResidual(Prior(0.6), BStrategy(0.7, 0.7))),
      1e-3);
}

TEST(AProfitAdvantageTest, Examples) {
  const ScoringRule quad = MakeQuadratic();
  EXPECT_NEAR(AProfitAdvantage(Prior(0.5), 1.0, quad), 0.125, 1e-12);
  EXPECT_LT(AProfitAdvantage(Prior(0.9), 1.0, quad), 0.0);
  // y1 = (2 + rho) / 4 = 0.75 = D0.
  EXPECT_NEAR(AProfitAdvantage(Prior(0.75), 1.0, quad), 0.0, 1e-12);
  EXPECT_THROW(AProfitAdvantage(Prior(0.5), 2.0, quad), Error);
}

TEST(AProfitAdvantageTest, PositiveExactlyWhenPriorBelowPosterior) {
  const ScoringRule quad = MakeQuadratic();
  for (double d0 = 0.5; d0 < 0.99; d0 += 0.037) {
    for (double rho = 0.05; rho < 2.0; rho += 0.11) {
      const double y1 = (2 + rho) / 4;
      const double adv = AProfitAdvantage(Prior(d0), rho, quad);
      if (std::abs(d0 - y1) < 1e-9) continue;
      EXPECT_EQ(adv > 0, d0 < y1) << d0 << " " << rho;
      const ScoringBne bne = SolveScoringBne(Prior(d0), rho, quad);
      if (bne.regime == ScoringRegime::kInterior) {
        EXPECT_NEAR(adv, bne.a_profit - bne.benchmark_profit, 1e-12);
      }
    }
  }
}

TEST(AsymmetricTest, ResidualsAndBayesRoundTrip) {
  const Prior prior(0.6);
  const CouponValues coupons(1.1, 0.9);
  const ScoringRule rule = MakeQuadratic();
  const ScoringBne bne = SolveScoringBneAsymmetric(prior, coupons, rule);
  ASSERT_TRUE(bne.y0 && bne.y1);
  EXPECT_LT(*bne.y0, *bne.y1);
  const auto [r1, r2] =
      AsymmetricSystemResiduals(coupons, rule, *bne.y0, *bne.y1);
  EXPECT_LT(std::abs(r1), 1e-8);
  EXPECT_LT(std::abs(r2), 1e-8);
  // The defining indifference equations, written out directly.
  EXPECT_NEAR(rule.f0(*bne.y0) - rule.f0(*bne.y1), 1.1, 1e-8);
  EXPECT_NEAR(rule.f1(*bne.y1) - rule.f1(*bne.y0), 0.9, 1e-8);
  const auto [y0, y1] = BayesPosteriors(prior, bne.b);
  EXPECT_NEAR(y0, *bne.y0, 1e-8);
  EXPECT_NEAR(y1, *bne.y1, 1e-8);
  EXPECT_GT(std::abs(*bne.y0 + *bne.y1 - 1.0), 1e-3);
  EXPECT_LE(MaxGap(prior, coupons, rule, bne, 1e-3), 1e-4);
}

TEST(AsymmetricTest, NearlyEqualCouponsMatchSymmetricSolver) {
  const Prior prior(0.6);
  const ScoringRule rule = MakeQuadratic();
  const ScoringBne sym = SolveScoringBne(prior, 1.0, rule);
  for (double factor : {1.0 + 1e-6, 1.0 - 1e-6}) {
    const ScoringBne asym =
        SolveScoringBneAsymmetric(prior, CouponValues(1.0, factor), rule);
    EXPECT_NEAR(asym.b.p, sym.b.p, 1e-4);
    EXPECT_NEAR(asym.b.q, sym.b.q, 1e-4);
    EXPECT_NEAR(*asym.y1, *sym.y1, 1e-5);
  }
}

TEST(AsymmetricTest, NoInteriorSolution) {
  try {
    SolveScoringBneAsymmetric(Prior(0.6), CouponValues(5.0, 4.0),
                              MakeQuadratic());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoInteriorSolution);
  }
}

class ScoringPropertyTest : public ::testing::TestWithParam<const char*> {};

TEST_P(ScoringPropertyTest, InteriorInvariants) {
  const ScoringRule rule = MakeRule(GetParam());
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> d0_dist(0.5, 0.95);
  std::uniform_real_distribution<double> rho_dist(0.01, 3.0);
  int interior = 0;
  for (int i = 0; i < 200 && interior < 12; ++i) {
    const Prior prior(d0_dist(rng));
    const double rho = rho_dist(rng);
    const ScoringBne bne = SolveScoringBne(prior, rho, rule);
    if (bne.regime != ScoringRegime::kInterior) continue;
    ++interior;
    EXPECT_GT(*bne.y1, 0.5);
    EXPECT_LE(*bne.y1, 1.0);
    EXPECT_DOUBLE_EQ(bne.a.x0, 1.0 - *bne.y1);
    const auto [y0, y1] = BayesPosteriors(prior, bne.b);
    EXPECT_NEAR(y0, 1.0 - *bne.y1, 1e-10);
    EXPECT_NEAR(y1, *bne.y1, 1e-10);
    EXPECT_NEAR(PosteriorSymmetryResidual(prior, bne.b), 0.0, 1e-10);
    EXPECT_LE(MaxGap(prior, CouponValues(rho, rho), rule, bne, 1e-3), 1e-4)
        << prior.d0() << " " << rho;
    const ExtendedReal dp = DpEpsilon(bne.b);
    if (prior.equal_masses()) {
      EXPECT_NEAR(dp.value(), bne.posterior_epsilon, 1e-9);
    } else {
      EXPECT_GT(dp.value(), bne.posterior_epsilon) << prior.d0() << " " << rho;
    }
  }
  EXPECT_GE(interior, 12);
}

TEST_P(ScoringPropertyTest, PosteriorNondecreasingInRho) {
  const ScoringRule rule = MakeRule(GetParam());
  const Prior prior(0.5);
  double last = 0.5;
  for (double rho = 0.01; rho < 3.0; rho += 0.01) {
    const ScoringBne bne = SolveScoringBne(prior, rho, rule);
    if (bne.regime != ScoringRegime::kInterior) continue;
    EXPECT_GE(*bne.y1, last) << rho;
    last = *bne.y1;
  }
}

TEST_P(ScoringPropertyTest, EqualMassesDpMatchesPosterior) {
  const ScoringRule rule = MakeRule(GetParam());
  const ScoringBne bne = SolveScoringBne(Prior(0.5), 0.5, rule);
  ASSERT_EQ(bne.regime, ScoringRegime::kInterior);
  EXPECT_NEAR(DpEpsilon(bne.b).value(), bne.posterior_epsilon, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Rules, ScoringPropertyTest,
                         ::testing::Values("quadratic", "spherical",
                                           "logarithmic"));

}  // namespace
}  // namespace coupon_bne
