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

#include "coupon_bne/core.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "coupon_bne/errors.h"
#include "coupon_bne/extended_real.h"

namespace coupon_bne {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInternalInconsistency;
}

TEST(PriorTest, ComplementsAndKeepsOrder) {
  const Prior prior(0.6);
  EXPECT_DOUBLE_EQ(prior.d0(), 0.6);
  EXPECT_DOUBLE_EQ(prior.d1(), 0.4);
  EXPECT_FALSE(prior.relabeled());
  EXPECT_DOUBLE_EQ(prior.original_d0(), 0.6);
}

TEST(PriorTest, RelabelsWhenTypeOneIsLikelier) {
  const Prior prior(0.3);
  EXPECT_TRUE(prior.relabeled());
  EXPECT_DOUBLE_EQ(prior.d0(), 0.7);
  EXPECT_DOUBLE_EQ(prior.d1(), 0.3);
  EXPECT_DOUBLE_EQ(prior.original_d0(), 0.3);
}

TEST(PriorTest, EqualMasses) {
  EXPECT_TRUE(Prior(0.5).equal_masses());
  EXPECT_FALSE(Prior(0.5 + 1e-9).equal_masses());
}

TEST(PriorTest, RejectsBadInput) {
  EXPECT_EQ(CodeOf([] { Prior(0.6, 0.5); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { Prior(1.0); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { Prior(0.0); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { Prior(std::nan("")); }), ErrorCode::kDomainError);
  EXPECT_NO_THROW(Prior(0.6, 0.4 + 5e-13));
}

TEST(ProbabilityTest, ClampsWithinSlackAndRejectsBeyond) {
  EXPECT_EQ(CheckedProbability(1.0 + 5e-13, "p"), 1.0);
  EXPECT_EQ(CheckedProbability(-5e-13, "p"), 0.0);
  EXPECT_EQ(CodeOf([] { CheckedProbability(1.0 + 1e-9, "p"); }),
            ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { BStrategy(0.5, -0.1); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { GuessPolicy(2.0, 0.5); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { ScoringReportPair(0.5, 1.5); }),
            ErrorCode::kDomainError);
}

TEST(ValueTypesTest, Validation) {
  EXPECT_EQ(CodeOf([] { CouponValues(0.0, 1.0); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { CouponValues(1.0, -2.0); }), ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { PaymentMatrix(1.0, -1.0, 1.0, 1.0); }),
            ErrorCode::kDomainError);
  EXPECT_NO_THROW(PaymentMatrix(0.0, 1.0, 1.0, 0.0));
  EXPECT_EQ(CodeOf([] { OptOutPolicy(0.6, 0.6, 0.0, 0.0); }),
            ErrorCode::kDomainError);
  EXPECT_EQ(CodeOf([] { OptOutPolicy(0.0, 0.0, 0.7, 0.4); }),
            ErrorCode::kDomainError);
  EXPECT_NO_THROW(OptOutPolicy(0.5, 0.5, 0.2, 0.3));
}

TEST(BayesPosteriorsTest, Examples) {
  const Prior prior(0.6);
  auto [a0, a1] = BayesPosteriors(prior, BStrategy(1.0, 1.0));
  EXPECT_DOUBLE_EQ(a0, 0.0);
  EXPECT_DOUBLE_EQ(a1, 1.0);
  auto [b0, b1] = BayesPosteriors(prior, BStrategy(0.3, 0.7));
  EXPECT_NEAR(b0, 0.4, 1e-15);
  EXPECT_NEAR(b1, 0.4, 1e-15);
  auto [c0, c1] = BayesPosteriors(prior, BStrategy(0.875, 0.5625));
  EXPECT_NEAR(c0, 0.25, 1e-15);
  EXPECT_NEAR(c1, 0.75, 1e-15);
}

TEST(BayesPosteriorsTest, ZeroMassSignal) {
  const Prior prior(0.6);
  EXPECT_EQ(CodeOf([&] { BayesPosteriors(prior, BStrategy(1.0, 0.0)); }),
            ErrorCode::kZeroSignalMass);
  const Posteriors post = TryBayesPosteriors(prior, BStrategy(1.0, 0.0));
  ASSERT_TRUE(post.y0.has_value());
  EXPECT_NEAR(*post.y0, 0.4, 1e-15);
  EXPECT_FALSE(post.y1.has_value());
  EXPECT_DOUBLE_EQ(SignalMass1(prior, BStrategy(1.0, 0.0)), 0.0);
  EXPECT_DOUBLE_EQ(SignalMass0(prior, BStrategy(1.0, 0.0)), 1.0);
}

// Sampled properties: range, the uninformative line, and informativeness.
TEST(BayesPosteriorsTest, SampledProperties) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> d(0.5, 0.99);
  for (int i = 0; i < 5000; ++i) {
    const Prior prior(d(rng));
    const double p = u(rng), q = u(rng);
    const BStrategy b(p, q);
    if (SignalMass0(prior, b) == 0.0 || SignalMass1(prior, b) == 0.0) continue;
    auto [y0, y1] = BayesPosteriors(prior, b);
    EXPECT_GE(y0, 0.0);
    EXPECT_LE(y0, 1.0);
    EXPECT_GE(y1, 0.0);
    EXPECT_LE(y1, 1.0);
    const double d1 = prior.d1();
    if (p > 1.0 - q + 1e-9) {
      EXPECT_LT(y0, d1);
      EXPECT_GT(y1, d1);
    } else if (p < 1.0 - q - 1e-9) {
      EXPECT_GT(y0, d1);
      EXPECT_LT(y1, d1);
    }
    auto [z0, z1] = BayesPosteriors(prior, BStrategy(p, 1.0 - p));
    EXPECT_NEAR(z0, d1, 1e-12);
    EXPECT_NEAR(z1, d1, 1e-12);
  }
}

TEST(RelabelTest, SwapsLabelsAndIsAnInvolution) {
  const BStrategy b = Relabel(BStrategy(0.2, 0.7));
  EXPECT_DOUBLE_EQ(b.p, 0.7);
  EXPECT_DOUBLE_EQ(b.q, 0.2);
  const ScoringReportPair r = Relabel(ScoringReportPair(0.1, 0.8));
  EXPECT_DOUBLE_EQ(r.x0, 0.2);
  EXPECT_DOUBLE_EQ(r.x1, 0.9);
  const PaymentMatrix m = Relabel(PaymentMatrix(1, 2, 3, 4));
  EXPECT_DOUBLE_EQ(m.m00, 4);
  EXPECT_DOUBLE_EQ(m.m01, 3);
  EXPECT_DOUBLE_EQ(m.m10, 2);
  EXPECT_DOUBLE_EQ(m.m11, 1);
  const OptOutPolicy o = Relabel(Relabel(OptOutPolicy(0.1, 0.2, 0.3, 0.4)));
  EXPECT_DOUBLE_EQ(o.x0, 0.1);
  EXPECT_DOUBLE_EQ(o.y1, 0.4);
  const GuessPolicy g = Relabel(GuessPolicy(0.1, 0.9));
  EXPECT_DOUBLE_EQ(g.x, 0.9);
  EXPECT_DOUBLE_EQ(g.y, 0.1);
}

// Posteriors computed in the swapped labels, mapped back, agree with the
// textbook formula in the caller's labels.
TEST(RelabelTest, PosteriorsMirror) {
  const double d0 = 0.3, d1 = 0.7, p = 0.8, q = 0.35;
  const double y0 = d1 * (1 - q) / (d0 * p + d1 * (1 - q));
  const double y1 = d1 * q / (d0 * (1 - p) + d1 * q);
  const Prior prior(d0);
  ASSERT_TRUE(prior.relabeled());
  auto [c0, c1] = BayesPosteriors(prior, Relabel(BStrategy(p, q)));
  EXPECT_NEAR(1.0 - c1, y0, 1e-15);
  EXPECT_NEAR(1.0 - c0, y1, 1e-15);
}

TEST(ExtendedRealTest, OrderingAndText) {
  EXPECT_THROW(ExtendedReal(std::nan("")), Error);
  EXPECT_LT(ExtendedReal::NegativeInfinity(), ExtendedReal(-1e300));
  EXPECT_LT(ExtendedReal(1e300), ExtendedReal::PositiveInfinity());
  EXPECT_EQ(ExtendedReal::PositiveInfinity().ToString(), "inf");
  EXPECT_EQ(ExtendedReal::NegativeInfinity().ToString(), "-inf");
  EXPECT_EQ(ExtendedReal(0.1).ToString(), "0.1");
  EXPECT_EQ(FormatDouble(-0.0), "0");
  EXPECT_EQ(FormatDouble(1.0), "1");
  EXPECT_TRUE(ExtendedReal(2.0).is_finite());
}

TEST(ExtendedRealTest, FormatRoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

}  // namespace
}  // namespace coupon_bne
