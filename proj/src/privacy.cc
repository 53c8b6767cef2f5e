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

#include "coupon_bne/privacy.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "coupon_bne/errors.h"
#include "root_finding.h"

namespace coupon_bne {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Ratio(double num, double den) {
  if (num == 0.0 && den == 0.0) return 1.0;
  if (den == 0.0) return kInf;
  return num / den;
}

bool Near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

ExtendedReal XGame(const BStrategy& b) {
  const double p = b.p, q = b.q;
  const std::array<double, 4> ratios = {Ratio(p, 1.0 - q), Ratio(1.0 - q, p),
                                        Ratio(q, 1.0 - p), Ratio(1.0 - p, q)};
  return ExtendedReal(*std::max_element(ratios.begin(), ratios.end()));
}

ExtendedReal DpEpsilon(const BStrategy& b) {
  const ExtendedReal x = XGame(b);
  if (x.is_positive_infinity()) return x;
  return ExtendedReal(std::max(0.0, std::log(x.value())));
}

bool IsRandomizedResponse(const BStrategy& b, double tol) {
  return std::abs(b.p - b.q) <= tol && b.p >= 0.5 && b.p < 1.0;
}

PrivacyAwareParams::PrivacyAwareParams(const Prior& prior,
                                       const CouponValues& coupons, double v)
    : prior(prior), coupons(coupons), v(v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kDomainError, "privacy valuation v must be > 0");
  }
}

double PrivacyAwareParams::Y() const {
  return prior.d0() * coupons.rho0 + prior.d1() * coupons.rho1;
}

ExtendedReal PrivacyAwareUtility(const PrivacyAwareParams& params,
                                 const BStrategy& b) {
  const ExtendedReal eps = DpEpsilon(b);
  if (eps.is_positive_infinity()) return ExtendedReal::NegativeInfinity();
  return ExtendedReal(params.prior.d0() * params.coupons.rho0 * b.p +
                      params.prior.d1() * params.coupons.rho1 * b.q -
                      params.v * eps.value());
}

std::optional<double> PrivacyAwareInteriorPoint(
    const PrivacyAwareParams& params) {
  const double y = params.Y();
  if (!(y > 4.0 * params.v)) return std::nullopt;
  return 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * params.v / y));
}

PrivacyAwareSolution SolvePrivacyAware(const PrivacyAwareParams& params) {
  std::vector<BStrategy> candidates = {BStrategy(1.0, 0.0),
                                       BStrategy(0.0, 1.0)};
  if (auto p_star = PrivacyAwareInteriorPoint(params)) {
    candidates.emplace_back(*p_star, *p_star);
  }
  PrivacyAwareSolution best{candidates.front(),
                            PrivacyAwareUtility(params, candidates.front()),
                            false,
                            {}};
  for (size_t i = 1; i < candidates.size(); ++i) {
    const ExtendedReal u = PrivacyAwareUtility(params, candidates[i]);
    if (u > best.utility) {
      best.b = candidates[i];
      best.utility = u;
    }
  }
  for (const BStrategy& c : candidates) {
    if (c.p == best.b.p && c.q == best.b.q) continue;
    const ExtendedReal u = PrivacyAwareUtility(params, c);
    if (u.is_finite() && best.utility.is_finite() &&
        Near(u.value(), best.utility.value(),
             1e-12 * std::max(1.0, std::abs(u.value())))) {
      best.degenerate = true;
      best.note = "indifferent between (" + FormatDouble(best.b.p) + ", " +
                  FormatDouble(best.b.q) + ") and (" + FormatDouble(c.p) +
                  ", " + FormatDouble(c.q) + ")";
    }
  }
  return best;
}

double TwoPlayerZStar(double rho, double v, ZStarReading reading) {
  if (!(v > 0.0) || !(rho > 2.0 * v) || !std::isfinite(rho)) {
    throw Error(ErrorCode::kInvalidRange,
                "the bracket (1 - v/rho, 1) needs rho > 2v > 0");
  }
  auto h = [&](double z) {
    const double logit = std::log(z) - std::log1p(-z);
    if (reading == ZStarReading::kStated) return rho * z - v * logit - v;
    return rho * (2.0 * z - 1.0) - v * logit;
  };
  const double lo = 1.0 - v / rho;
  const double hi = std::nextafter(1.0, 0.0);
  const double hlo = h(lo), hhi = h(hi);
  if (!(hlo > 0.0 && hhi < 0.0)) {
    throw Error(ErrorCode::kNoRoot, "no sign change on (1 - v/rho, 1)");
  }
  return internal::Bisect(h, lo, hi);
}

std::string CategoryName(const TwoPlayerNeCategory& category) {
  struct Visitor {
    std::string operator()(const PoolOnZero&) const { return "PoolOnZero"; }
    std::string operator()(const PoolOnOne&) const { return "PoolOnOne"; }
    std::string operator()(const RandomizedResponseCategory&) const {
      return "RandomizedResponse";
    }
    std::string operator()(const NotEquilibrium&) const {
      return "NotEquilibrium";
    }
  };
  return std::visit(Visitor{}, category);
}

TwoPlayerNeCategory ClassifyTwoPlayerNe(const BStrategy& b, double rho,
                                        double v) {
  constexpr double kTol = 1e-9;
  const double zi = TwoPlayerZStar(rho, v, ZStarReading::kIndifference);
  const double p = b.p, q = b.q;
  if (Near(p, 1.0 - q, kTol)) {
    // Both players send the same signal distribution.
    if (q <= 1.0 - zi + kTol) return PoolOnZero{q};
    if (p <= 1.0 - zi + kTol) return PoolOnOne{q};
  }
  if (Near(p, q, kTol)) {
    const double z = 0.5 * (p + q);
    if (z >= 1.0 - v / rho - kTol && z <= zi + kTol) {
      return RandomizedResponseCategory{z};
    }
  }
  return NotEquilibrium{};
}

ExtendedReal TwoPlayerUtility(const BStrategy& b, int player, double rho,
                              double v) {
  const ExtendedReal eps = DpEpsilon(b);
  if (eps.is_positive_infinity()) return ExtendedReal::NegativeInfinity();
  const double own = player == 0 ? b.p : b.q;
  return ExtendedReal(rho * own - v * eps.value());
}

}  // namespace coupon_bne
