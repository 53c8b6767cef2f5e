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

#ifndef COUPON_BNE_SCORING_GAME_H_
#define COUPON_BNE_SCORING_GAME_H_

#include <optional>
#include <string>
#include <vector>

#include "coupon_bne/core.h"
#include "coupon_bne/scoring.h"

namespace coupon_bne {

// Solvers in this file work in the canonical frame (prior.d0() >= d1()).

enum class ScoringRegime { kPooling10, kSeparating11, kInterior };

std::string RegimeName(ScoringRegime regime);

struct ScoringBne {
  BStrategy b;
  ScoringReportPair a;
  // Posterior after signal 1; nullopt when signal 1 is never sent.
  std::optional<double> y1;
  std::optional<double> y0;
  // ln(y1 / y0), which is ln(y1 / (1 - y1)) in the symmetric interior
  // regime. +inf when the reports fully separate, 0 when B pools.
  double posterior_epsilon = 0.0;
  double a_profit = 0.0;
  double benchmark_profit = 0.0;
  ScoringRegime regime = ScoringRegime::kInterior;
  bool unique = true;
  // Pooling10 only: the set of off-path reports x1 that keep (1, 0) a best
  // response for both types. a.x1 is its midpoint.
  std::optional<Interval> x1_interval;
  std::vector<std::string> notes;
};

struct Utilities {
  double u_a = 0.0;
  double u_b0 = 0.0;
  double u_b1 = 0.0;
};

Utilities ScoringUtilities(const Prior& prior, const CouponValues& coupons,
                           const ScoringRule& rule, const BStrategy& b,
                           const ScoringReportPair& a);

// g(D1).
double BenchmarkProfit(const Prior& prior, const ScoringRule& rule);

enum class PureChoice { kZero, kOne, kFree };

struct BResponse {
  PureChoice p = PureChoice::kFree;
  PureChoice q = PureChoice::kFree;
};

// Type 0 compares rho0 with f0(x0) - f0(x1); type 1 compares rho1 with
// f1(x1) - f1(x0). Within 1e-9 the type is indifferent.
BResponse BBestResponse(const ScoringRule& rule, const ScoringReportPair& a,
                        const CouponValues& coupons);

// rho0 = rho1 = rho. Throws kInvalidRange for rho <= 0 or non-finite and
// kNonSymmetricRule for asymmetric generators.
ScoringBne SolveScoringBne(const Prior& prior, double rho,
                           const ScoringRule& rule);

// D0^2 p (1-p) - D1^2 q (1-q).
double PosteriorSymmetryResidual(const Prior& prior, const BStrategy& b);

// g(y1) - g(D1) with g'(y1) = rho. Positive exactly in the interior regime.
// Throws kInvalidRange when rho >= g'(1).
double AProfitAdvantage(const Prior& prior, double rho,
                        const ScoringRule& rule);

// rho0 != rho1. Solves f0(y0) - f0(y1) = rho0, f1(y1) - f1(y0) = rho1 with
// y0 < y1 by nested bisection and recovers (p, q) from Bayes' rule. Throws
// kNoInteriorSolution when no such interior point exists.
ScoringBne SolveScoringBneAsymmetric(const Prior& prior,
                                     const CouponValues& coupons,
                                     const ScoringRule& rule);

// Residuals of the two-equation system in its F_mu form:
// F_mu(y0) - F_mu(y1) with mu = rho0 / (rho0 + rho1), and
// F_half(y0) - F_half(y1) - (rho0 - rho1) / 2.
std::pair<double, double> AsymmetricSystemResiduals(const CouponValues& coupons,
                                                    const ScoringRule& rule,
                                                    double y0, double y1);

}  // namespace coupon_bne

#endif  // COUPON_BNE_SCORING_GAME_H_
