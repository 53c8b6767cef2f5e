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

#ifndef COUPON_BNE_CASE_SAMPLING_H_
#define COUPON_BNE_CASE_SAMPLING_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "coupon_bne/config.h"
#include "coupon_bne/optout_game.h"

namespace coupon_bne {

// One opt-out parameter draw, in the caller's labels.
struct CaseDraw {
  Prior prior{0.5};
  PaymentMatrix matrix;
  CouponValues coupons;
};

// "uniform" draws every parameter independently and rejects draws failing
// the strawman check; "case6" builds coupons from an interior accusation
// pair (x0, y1); "boundary" does the same with x0 = 0.
class CaseSampler {
 public:
  CaseSampler(std::string sampler, std::uint64_t seed);
  CaseDraw Next();
  std::int64_t strawman_rejections() const { return rejections_; }

 private:
  double Uniform(double lo, double hi);

  std::string sampler_;
  std::mt19937_64 rng_;
  std::int64_t rejections_ = 0;
};

struct CaseTally {
  std::int64_t samples = 0;
  std::int64_t strawman_rejections = 0;
  // Keyed by case label; draws within the margin of a row inequality count
  // as "Boundary".
  std::map<std::string, std::int64_t> counts;
  // Non-degenerate draws matching two or more rows.
  std::int64_t exclusivity_failures = 0;
  // Draws matching no row.
  std::int64_t covering_failures = 0;

  std::int64_t inconsistencies() const {
    return exclusivity_failures + covering_failures;
  }
};

CaseTally TallyCases(const CasesSpec& spec, std::uint64_t seed,
                     double margin = 1e-6);

}  // namespace coupon_bne

#endif  // COUPON_BNE_CASE_SAMPLING_H_
