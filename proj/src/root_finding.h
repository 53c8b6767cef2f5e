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

#ifndef COUPON_BNE_SRC_ROOT_FINDING_H_
#define COUPON_BNE_SRC_ROOT_FINDING_H_

#include <boost/math/tools/roots.hpp>
#include <cstdint>
#include <limits>
#include <utility>

namespace coupon_bne {
namespace internal {

// Bisection to full double precision. `f(lo)` and `f(hi)` must have opposite
// signs (or one of them be zero); returns the midpoint of the final bracket.
template <typename F>
double Bisect(F f, double lo, double hi) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t max_iter = 2000;
  const auto bracket =
      boost::math::tools::bisect(f, lo, hi,
                                 boost::math::tools::eps_tolerance<double>(
                                     std::numeric_limits<double>::digits),
                                 max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

// inf { x in [lo, hi] : pred(x) } for a monotone predicate that is false at
// lo and true at hi.
template <typename Pred>
double FirstTrue(Pred pred, double lo, double hi) {
  return Bisect([&](double x) { return pred(x) ? 1.0 : -1.0; }, lo, hi);
}

}  // namespace internal
}  // namespace coupon_bne

#endif  // COUPON_BNE_SRC_ROOT_FINDING_H_
