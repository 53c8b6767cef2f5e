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

#ifndef COUPON_BNE_GAME_H_
#define COUPON_BNE_GAME_H_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coupon_bne/core.h"
#include "coupon_bne/extended_real.h"
#include "coupon_bne/identity_game.h"
#include "coupon_bne/privacy.h"
#include "coupon_bne/scoring.h"

namespace coupon_bne {

// Game descriptions hold the caller's labels: coupons, matrices and
// distributions are indexed by the types as written, even when the Prior
// stores them swapped. Solve() maps into the canonical frame and back.

struct PrivacyAwareGame {
  Prior prior{0.5};
  CouponValues coupons;
  double v = 1.0;
};

struct ScoringGame {
  Prior prior{0.5};
  CouponValues coupons;
  ScoringRule rule = MakeQuadratic();
};

struct IdentityGame {
  Prior prior{0.5};
  CouponValues coupons;
};

struct IdentityContinuousGame {
  Prior prior{0.5};
  ValuationModel valuations{UniformValuation{}, UniformValuation{}};
};

struct OptOutGame {
  Prior prior{0.5};
  CouponValues coupons;
  PaymentMatrix matrix;
};

using GameSpec = std::variant<PrivacyAwareGame, ScoringGame, IdentityGame,
                              IdentityContinuousGame, OptOutGame>;

// "privacy_aware", "scoring", "identity", "identity_continuous", "optout".
std::string GameName(const GameSpec& game);

// The same game with types swapped when prior.relabeled(), so that every
// label-indexed parameter agrees with the stored prior.
GameSpec Canonical(const GameSpec& game);

using AStrategy =
    std::variant<std::monostate, ScoringReportPair, GuessPolicy, OptOutPolicy>;

// What the oracle needs to evaluate a profile. `threshold` is B's strategy
// in the continuous-valuation game, where `b` is the induced aggregate.
struct Profile {
  BStrategy b;
  AStrategy a;
  std::optional<double> threshold;
};

Profile Relabel(const Profile& profile);

struct EquilibriumReport {
  std::string game;
  Profile profile;
  Posteriors posteriors;
  std::optional<double> u_a;
  ExtendedReal u_b0;
  ExtendedReal u_b1;
  std::optional<ExtendedReal> dp_epsilon;
  std::string case_label;
  bool unique = true;
  std::vector<std::string> notes;
  // Game-specific scalars (posterior_epsilon, a_profit, y_star, ...).
  std::map<std::string, double> metrics;
  // Game-specific equilibrium sets (x1, y, b_p, ...).
  std::map<std::string, Interval> intervals;
  // Further equilibrium profiles (boundary cases, degenerate priors).
  std::vector<Profile> alternatives;
};

// Expected utilities of a profile in the caller's labels. For the
// privacy-aware game u_b0 = u_b1 = B's ex-ante utility and u_a is nullopt.
struct ProfileUtilities {
  std::optional<double> u_a;
  ExtendedReal u_b0;
  ExtendedReal u_b1;
};
ProfileUtilities EvaluateProfile(const GameSpec& game, const Profile& profile);

// Dispatches to the solver for the game variant. Throws Error.
EquilibriumReport Solve(const GameSpec& game);

}  // namespace coupon_bne

#endif  // COUPON_BNE_GAME_H_
