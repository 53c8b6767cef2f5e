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

#ifndef COUPON_BNE_OPTOUT_GAME_H_
#define COUPON_BNE_OPTOUT_GAME_H_

#include <optional>
#include <string>
#include <vector>

#include "coupon_bne/core.h"
#include "coupon_bne/extended_real.h"
#include "coupon_bne/scoring_game.h"

namespace coupon_bne {

// Solvers in this file work in the canonical frame (prior.d0() >= d1()).

inline constexpr double kCaseTolerance = 1e-9;

// M00 D0 < M01 D1 and M11 D1 < M10 D0: without a signal, every accusation
// loses money for A. Throws kDivisionByZero if M01 or M10 is zero.
bool CheckStrawman(const Prior& prior, const PaymentMatrix& m);

// Human-readable list of the violated strawman inequalities (empty when the
// check passes).
std::string StrawmanViolation(const Prior& prior, const PaymentMatrix& m);

enum class OptOutCase {
  kCase1,
  kCase2,
  kCase3,
  kCase4,
  kCase5,
  kCase6,
  kBoundary,
  kInfeasible,
};

std::string OptOutCaseName(OptOutCase c);

struct CaseClassification {
  OptOutCase label = OptOutCase::kInfeasible;
  // Rows (Case1..Case6) whose conditions hold up to the tolerance.
  std::vector<OptOutCase> matching;
  // Rows whose conditions hold with the tolerance as margin.
  std::vector<OptOutCase> strict;
  // Some inequality of some row lies within the tolerance of equality.
  bool degenerate = false;
};

// Evaluates the six condition rows with relative tolerance `tol`. Exactly
// one strict match gives that row; any weak match on a boundary gives
// kBoundary. Throws kInternalInconsistency when nothing matches and
// kInfeasible when the strawman check fails.
CaseClassification ClassifyCase(const Prior& prior, const PaymentMatrix& m,
                                const CouponValues& coupons,
                                double tol = kCaseTolerance);

struct OptOutProfile {
  BStrategy b;
  OptOutPolicy a;
  OptOutCase row = OptOutCase::kCase1;
};

// The strategy pair listed for one row of the case table.
OptOutProfile CaseStrategies(const Prior& prior, const PaymentMatrix& m,
                             const CouponValues& coupons, OptOutCase row);

struct OptOutBne {
  BStrategy b;
  OptOutPolicy a;
  CaseClassification classification;
  ExtendedReal dp_epsilon;
  // ln(D1 M01 / (D0 M00)) when the randomized-response condition holds.
  std::optional<double> rr_epsilon;
  bool rr = false;
  bool unique = true;
  // Boundary results: one profile per matching row.
  std::vector<OptOutProfile> candidates;
  std::vector<std::string> notes;
};

OptOutBne SolveOptOutBne(const Prior& prior, const PaymentMatrix& m,
                         const CouponValues& coupons);

// |D0^2 M00 M10 - D1^2 M01 M11| <= tol * max of the two terms.
bool RrCondition(const Prior& prior, const PaymentMatrix& m,
                 double tol = kCaseTolerance);

Utilities OptOutUtilities(const Prior& prior, const PaymentMatrix& m,
                          const CouponValues& coupons, const BStrategy& b,
                          const OptOutPolicy& a);

// Expected value to A of each action after a signal, weighted by the
// probability of that signal: {guess 0, guess 1}. Opting out is worth 0.
struct AccusationValues {
  double guess0 = 0.0;
  double guess1 = 0.0;
};
AccusationValues OptOutAccusationValues(const Prior& prior,
                                        const PaymentMatrix& m,
                                        const BStrategy& b, int signal);

}  // namespace coupon_bne

#endif  // COUPON_BNE_OPTOUT_GAME_H_
