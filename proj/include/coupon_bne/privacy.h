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

#ifndef COUPON_BNE_PRIVACY_H_
#define COUPON_BNE_PRIVACY_H_

#include <optional>
#include <string>
#include <variant>

#include "coupon_bne/core.h"
#include "coupon_bne/extended_real.h"

namespace coupon_bne {

// Largest likelihood ratio between the two types' signal distributions,
// with 0/0 = 1 and a/0 = +inf for a > 0.
ExtendedReal XGame(const BStrategy& b);

// ln(XGame(b)); zero exactly when the signal is uninformative.
ExtendedReal DpEpsilon(const BStrategy& b);

// |p - q| <= tol and p in [1/2, 1).
bool IsRandomizedResponse(const BStrategy& b, double tol);

struct PrivacyAwareParams {
  PrivacyAwareParams(const Prior& prior, const CouponValues& coupons, double v);

  Prior prior;
  CouponValues coupons;
  double v;

  // D0 * rho0 + D1 * rho1.
  double Y() const;
};

// D0 rho0 p + D1 rho1 q - v * DpEpsilon(b); -inf when the privacy loss is
// infinite.
ExtendedReal PrivacyAwareUtility(const PrivacyAwareParams& params,
                                 const BStrategy& b);

struct PrivacyAwareSolution {
  BStrategy b;
  ExtendedReal utility;
  // Set when two candidates tie within 1e-12 (relative).
  bool degenerate = false;
  std::string note;
};

// Argmax over {(1,0), (0,1), (p*,p*)} with
// p* = (1 + sqrt(1 - 4v/Y)) / 2, the interior point only when Y > 4v.
PrivacyAwareSolution SolvePrivacyAware(const PrivacyAwareParams& params);

// The interior candidate p*, or nullopt when Y <= 4v.
std::optional<double> PrivacyAwareInteriorPoint(
    const PrivacyAwareParams& params);

// Two B types as separate players with rho0 = rho1 = rho.
enum class ZStarReading {
  // rho z - v ln(z / (1 - z)) - v = 0.
  kStated,
  // rho (2z - 1) - v ln(z / (1 - z)) = 0: type 0's indifference between
  // matching the other player's randomized response and pooling.
  kIndifference,
};

// Root on (1 - v/rho, 1). Throws kInvalidRange unless rho > 2v and kNoRoot
// if the bracket has no sign change.
double TwoPlayerZStar(double rho, double v,
                      ZStarReading reading = ZStarReading::kStated);

struct PoolOnZero {
  double z;
};
struct PoolOnOne {
  double z;
};
struct RandomizedResponseCategory {
  double z;
};
struct NotEquilibrium {};

using TwoPlayerNeCategory =
    std::variant<PoolOnZero, PoolOnOne, RandomizedResponseCategory,
                 NotEquilibrium>;

std::string CategoryName(const TwoPlayerNeCategory& category);

// Membership tolerance 1e-9. In the pooling categories both players send
// signal 1 with the same probability z (p = 1 - z, q = z); PoolOnZero needs
// z <= 1 - z_i and PoolOnOne z >= z_i, where z_i is the indifference root.
// RandomizedResponse is p = q = z in [1 - v/rho, z_i].
TwoPlayerNeCategory ClassifyTwoPlayerNe(const BStrategy& b, double rho,
                                        double v);

// Per-player utility rho * own - v * DpEpsilon(b) for player t in {0, 1}.
ExtendedReal TwoPlayerUtility(const BStrategy& b, int player, double rho,
                              double v);

}  // namespace coupon_bne

#endif  // COUPON_BNE_PRIVACY_H_
