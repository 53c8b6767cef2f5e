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

#ifndef COUPON_BNE_IDENTITY_GAME_H_
#define COUPON_BNE_IDENTITY_GAME_H_

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coupon_bne/core.h"
#include "coupon_bne/extended_real.h"
#include "coupon_bne/scoring_game.h"

namespace coupon_bne {

// Solvers in this file work in the canonical frame (prior.d0() >= d1()).

// u_A = D0 p x + D0 (1-p)(1-y) + D1 q y + D1 (1-q)(1-x),
// u_B0 = p (rho0 - x) + (1-p)(y - 1), u_B1 = q (rho1 - y) + (1-q)(x - 1).
Utilities IdentityUtilities(const Prior& prior, const CouponValues& coupons,
                            const BStrategy& b, const GuessPolicy& a);

enum class IdentityCase {
  kRho0Greater,
  kRhoEqual,
  kRho1Greater,
  kDegenerateEqualPrior,
  // Both coupons worth more than the maximal payment: everyone is truthful.
  kSeparating,
};

std::string IdentityCaseName(IdentityCase c);

struct IdentityBne {
  BStrategy b;
  // Endpoints of B's equilibrium segment on l2 when B is not pinned down.
  std::optional<std::pair<BStrategy, BStrategy>> b_segment;
  GuessPolicy a;
  // A's equilibrium set for y when it is an interval; a.y is its midpoint.
  std::optional<Interval> y_interval;
  IdentityCase identity_case = IdentityCase::kRho0Greater;
  std::optional<BStrategy> rr_point;
  ExtendedReal dp_epsilon;
  bool unique = true;
  // Other equilibrium profiles reported alongside the representative.
  std::vector<std::pair<BStrategy, GuessPolicy>> alternatives;
  std::vector<std::string> notes;
};

IdentityBne SolveIdentityBne(const Prior& prior, const CouponValues& coupons);

enum class LinePosition { kAboveL2, kOnL2, kBelowL2, kOnL1, kBelowL1 };

std::string LinePositionName(LinePosition pos);

// l1: D0 p = D1 (1-q); l2: D0 (1-p) = D1 q, with l2 above l1. BelowL2 is
// the strip strictly between them. Tolerance 1e-10. When the two lines
// coincide (D0 = D1) OnL2 is reported.
LinePosition LinesMembership(const Prior& prior, const BStrategy& b);

// Valuation distributions over [0, inf) with CDF(0) = 0.
struct UniformValuation {
  double lo = 0.0;
  double hi = 1.0;
};
struct ExponentialValuation {
  double rate = 1.0;
};
// Piecewise-linear CDF through (value, cdf) knots: values strictly
// increasing, cdf nondecreasing from 0 to 1; 0 before the first knot and 1
// after the last.
struct PiecewiseLinearValuation {
  std::vector<std::pair<double, double>> knots;
};

using ValuationDistribution =
    std::variant<UniformValuation, ExponentialValuation,
                 PiecewiseLinearValuation>;

// Throws kInvalidDistribution.
void ValidateDistribution(const ValuationDistribution& dist);
double Cdf(const ValuationDistribution& dist, double x);
// E[rho ; rho > t], the mean restricted to valuations above t.
double PartialMean(const ValuationDistribution& dist, double t);
bool SameDistribution(const ValuationDistribution& a,
                      const ValuationDistribution& b);
std::string DistributionName(const ValuationDistribution& dist);

// Valuation law per type. When both are the same law the types' valuations
// are identically distributed.
struct ValuationModel {
  ValuationDistribution type0;
  ValuationDistribution type1;

  bool shared() const { return SameDistribution(type0, type1); }
  double CdfB(const Prior& prior, double x) const;
};

struct ThresholdStrategy {
  double t = 0.0;
};

struct ContinuousThresholdBne {
  GuessPolicy a;
  ThresholdStrategy threshold;
  // Smallest and largest solutions of CDF_B(y) = D1 on [0, 1]; equal to 1 in
  // the no-root branch.
  double y_star = 1.0;
  double y_star_max = 1.0;
  bool root_branch = false;
  // Induced aggregate (p, q) = (1 - CDF0(T), 1 - CDF1(T)).
  BStrategy induced_b;
  // Only when both types share one valuation law.
  std::optional<ExtendedReal> dp_epsilon;
  bool unique = true;
  std::vector<std::string> notes;
};

ContinuousThresholdBne SolveContinuousThreshold(const Prior& prior,
                                                const ValuationModel& model);

}  // namespace coupon_bne

#endif  // COUPON_BNE_IDENTITY_GAME_H_
