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

#ifndef COUPON_BNE_ORACLE_H_
#define COUPON_BNE_ORACLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "coupon_bne/game.h"

namespace coupon_bne {

// Deviation gains: how much each player could gain by unilaterally moving
// to the best strategy on the deviation grid (or the exact best response
// where A's action set is finite). Never negative; +inf when the current
// profile yields -inf and some deviation does not.
struct GapReport {
  double gap_a = 0.0;
  double gap_b0 = 0.0;
  double gap_b1 = 0.0;
  double grid_step = 0.0;
  std::vector<std::string> argmax_deviations;

  double max_gap() const;
};

// Grid points are i / n for n = round(1 / grid_step), so a finer grid whose
// step divides the coarser one contains it.
//
// Per game: B deviates over p (type 0) and q (type 1), or jointly over (p, q)
// for the privacy-aware agent. A's best response is exact per signal in the
// identity and opt-out games, gridded per signal over reports in the scoring
// game, and exact over pure (x, y) in the continuous game, where B's gap is
// taken over a grid of valuations.
GapReport BestResponseGap(const GameSpec& game, const Profile& profile,
                          double grid_step);

inline constexpr std::int64_t kEnumerationBudget = 10'000'000;

struct EquilibriumComponent {
  std::vector<Profile> members;
  double p_min = 0.0;
  double p_max = 0.0;
  double q_min = 0.0;
  double q_max = 0.0;
  // Member closest to the centroid of the component's B-points.
  Profile representative;
};

// Scans the B grid; for each point builds A's (near-)best responses, ties
// within tol gridded over mixtures, and keeps profiles whose gaps are all
// <= tol. Members are grouped into components of grid-adjacent B points
// (Chebyshev distance one). Throws kInvalidRange for grid_step < 1e-3 and
// kBudgetExceeded past kEnumerationBudget profile evaluations.
std::vector<EquilibriumComponent> EnumerateEquilibria(const GameSpec& game,
                                                      double grid_step,
                                                      double tol);

struct SurfaceRow {
  double p = 0.0;
  double q = 0.0;
  ExtendedReal u_b0;
  ExtendedReal u_b1;
  // A's utility at its best response, 0 for the privacy-aware game.
  double u_a_best = 0.0;
};

// (resolution + 1)^2 rows over the B grid, with A best-responding. Throws
// kUnsupported for the continuous-valuation game.
std::vector<SurfaceRow> UtilitySurface(const GameSpec& game, int resolution);

// Grid maximizer of the privacy-aware utility over (p, q).
struct GridArgmax {
  BStrategy b;
  ExtendedReal utility;
};
GridArgmax PrivacyAwareGridArgmax(const PrivacyAwareParams& params,
                                  double grid_step);

// Worker count for grid scans: COUPON_BNE_THREADS when set and positive,
// else the hardware concurrency.
int WorkerCount();

}  // namespace coupon_bne

#endif  // COUPON_BNE_ORACLE_H_
