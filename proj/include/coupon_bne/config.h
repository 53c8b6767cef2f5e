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

#ifndef COUPON_BNE_CONFIG_H_
#define COUPON_BNE_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>

#include "coupon_bne/game.h"
#include "coupon_bne/oracle.h"
#include "json.hpp"

namespace coupon_bne {

// Game documents use the symbol names of the model:
//   {"game": "scoring", "d0": 0.6, "rho": 1.0, "rule": "quadratic"}
//   {"game": "optout", "d0": 0.55, "rho0": 1, "rho1": 1.2,
//    "m00": 1, "m01": 3, "m10": 2, "m11": 1}
//   {"game": "identity_continuous", "d0": 0.7,
//    "valuation": {"family": "uniform", "lo": 0, "hi": 1}}
// "rho" sets both coupons; "valuation0"/"valuation1" give per-type laws.
// Throws Error(kConfigError) on unknown or invalid fields.
GameSpec GameSpecFromJson(const nlohmann::json& doc);
nlohmann::json GameSpecToJson(const GameSpec& game);

struct SweepSpec {
  // "rho", "rho0", "rho1", "v" or "d0".
  std::string axis;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;

  double ValueAt(int i) const;
};

struct CasesSpec {
  int samples = 10000;
  // "uniform", "case6" or "boundary".
  std::string sampler = "uniform";
};

struct RunConfig {
  GameSpec game;
  double grid_step = 1e-3;
  double tol = 1e-4;
  std::uint64_t seed = 0;
  std::optional<SweepSpec> sweep;
  std::optional<CasesSpec> cases;
};

// Reads the game plus optional "grid", "tol", "seed", "sweep", "cases".
RunConfig RunConfigFromJson(const nlohmann::json& doc);

// Applies one sweep value to the game. Throws kConfigError when the axis does
// not exist for the game.
GameSpec WithAxisValue(const GameSpec& game, const std::string& axis,
                       double value);

// Extended reals are written as numbers, or "inf" / "-inf".
nlohmann::json ExtendedToJson(ExtendedReal value);
ExtendedReal ExtendedFromJson(const nlohmann::json& value);

nlohmann::json ProfileToJson(const Profile& profile);
// Accepts a profile object or a full report (reads its "b", "a",
// "threshold"). Throws kConfigError.
Profile ProfileFromJson(const nlohmann::json& doc);

nlohmann::json ReportToJson(const EquilibriumReport& report);
nlohmann::json GapReportToJson(const GapReport& gaps, double tol);

}  // namespace coupon_bne

#endif  // COUPON_BNE_CONFIG_H_
