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

#include "coupon_bne/case_sampling.h"

#include <utility>

#include "coupon_bne/errors.h"

namespace coupon_bne {

CaseSampler::CaseSampler(std::string sampler, std::uint64_t seed)
    : sampler_(std::move(sampler)), rng_(seed) {
  if (sampler_ != "uniform" && sampler_ != "case6" && sampler_ != "boundary") {
    throw Error(ErrorCode::kConfigError, "unknown sampler '" + sampler_ + "'");
  }
}

double CaseSampler::Uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

CaseDraw CaseSampler::Next() {
  for (;;) {
    const bool constructed = sampler_ != "uniform";
    const double d0 = constructed ? Uniform(0.5, 0.95) : Uniform(0.05, 0.95);
    const Prior prior(d0);
    const PaymentMatrix m(Uniform(0.1, 3.0), Uniform(0.1, 3.0),
                          Uniform(0.1, 3.0), Uniform(0.1, 3.0));
    // The check reads the matrix in the D0 >= D1 labels.
    const PaymentMatrix canonical = prior.relabeled() ? Relabel(m) : m;
    if (!CheckStrawman(prior, canonical)) {
      ++rejections_;
      continue;
    }
    if (!constructed) {
      return CaseDraw{prior, m,
                      CouponValues(Uniform(0.05, 6.0), Uniform(0.05, 6.0))};
    }
    const double x0 = sampler_ == "boundary" ? 0.0 : Uniform(0.01, 0.99);
    const double y1 = Uniform(0.01, 0.99);
    return CaseDraw{
        prior, m,
        CouponValues(m.m00 * x0 + m.m10 * y1, m.m01 * x0 + m.m11 * y1)};
  }
}

CaseTally TallyCases(const CasesSpec& spec, std::uint64_t seed, double margin) {
  CaseSampler sampler(spec.sampler, seed);
  CaseTally tally;
  for (int i = 0; i < spec.samples; ++i) {
    const CaseDraw draw = sampler.Next();
    const OptOutGame game = std::get<OptOutGame>(
        Canonical(OptOutGame{draw.prior, draw.coupons, draw.matrix}));
    ++tally.samples;
    try {
      const CaseClassification c =
          ClassifyCase(game.prior, game.matrix, game.coupons, margin);
      if (c.degenerate) {
        ++tally.counts["Boundary"];
      } else if (c.strict.size() == 1) {
        ++tally.counts[OptOutCaseName(c.strict.front())];
      } else {
        ++tally.exclusivity_failures;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInternalInconsistency) throw;
      ++tally.covering_failures;
    }
  }
  tally.strawman_rejections = sampler.strawman_rejections();
  return tally;
}

}  // namespace coupon_bne
