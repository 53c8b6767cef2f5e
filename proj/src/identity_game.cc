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

#include "coupon_bne/identity_game.h"

#include <algorithm>
#include <cmath>

#include "coupon_bne/errors.h"
#include "coupon_bne/privacy.h"
#include "root_finding.h"

namespace coupon_bne {
namespace {

constexpr double kLineTol = 1e-10;
constexpr double kEqualTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Utilities IdentityUtilities(const Prior& prior, const CouponValues& coupons,
                            const BStrategy& b, const GuessPolicy& a) {
  const double d0 = prior.d0(), d1 = prior.d1();
  const double p = b.p, q = b.q, x = a.x, y = a.y;
  Utilities u;
  u.u_a = d0 * p * x + d0 * (1.0 - p) * (1.0 - y) + d1 * q * y +
          d1 * (1.0 - q) * (1.0 - x);
  u.u_b0 = p * (coupons.rho0 - x) + (1.0 - p) * (y - 1.0);
  u.u_b1 = q * (coupons.rho1 - y) + (1.0 - q) * (x - 1.0);
  return u;
}

std::string IdentityCaseName(IdentityCase c) {
  switch (c) {
    case IdentityCase::kRho0Greater:
      return "Rho0Greater";
    case IdentityCase::kRhoEqual:
      return "RhoEqual";
    case IdentityCase::kRho1Greater:
      return "Rho1Greater";
    case IdentityCase::kDegenerateEqualPrior:
      return "DegenerateEqualPrior";
    case IdentityCase::kSeparating:
      return "Separating";
  }
  return "Unknown";
}

IdentityBne SolveIdentityBne(const Prior& prior, const CouponValues& coupons) {
  const double d0 = prior.d0(), d1 = prior.d1();
  const double rho0 = coupons.rho0, rho1 = coupons.rho1;
  IdentityBne out;

  if (std::min(rho0, rho1) > 1.0) {
    out.identity_case = IdentityCase::kSeparating;
    out.b = BStrategy(1.0, 1.0);
    out.a = GuessPolicy(1.0, 1.0);
    out.notes.push_back(
        "both coupons exceed the maximal payment, so both types are truthful");
  } else if (prior.equal_masses()) {
    out.identity_case = IdentityCase::kDegenerateEqualPrior;
    out.unique = false;
    // Pooling on the signal of the type with the larger coupon; A needs
    // min(rho) <= x + y - 1 <= max(rho).
    const Interval ys{std::min(rho0, rho1),
                      std::min(std::max(rho0, rho1), 1.0)};
    out.y_interval = ys;
    out.a = GuessPolicy(1.0, ys.midpoint());
    const BStrategy pool0(1.0, 0.0), pool1(0.0, 1.0);
    out.b = rho0 >= rho1 ? pool0 : pool1;
    if (std::abs(rho0 - rho1) <= kEqualTol) {
      out.alternatives.emplace_back(pool1, out.a);
    }
    out.notes.push_back(
        "equal prior: A may play any (x, y) with x + y - 1 in [" +
        FormatDouble(ys.lo) + ", " + FormatDouble(ys.hi) + "]");
  } else if (std::abs(rho0 - rho1) <= kEqualTol) {
    out.identity_case = IdentityCase::kRhoEqual;
    out.unique = false;
    const double rho = std::min(rho0, 1.0);
    out.a = GuessPolicy(1.0, rho);
    if (rho0 < 1.0) {
      out.b_segment = {BStrategy(1.0, 0.0), BStrategy((d0 - d1) / d0, 1.0)};
      out.rr_point = BStrategy(d0, d0);
      out.b = *out.rr_point;
      out.notes.push_back(
          "any b on the l2 line is an equilibrium; the "
          "randomized-response point is reported");
    } else {
      out.b = BStrategy(1.0, 1.0);
      out.notes.push_back("any b on or above the l2 line is an equilibrium");
    }
  } else if (rho0 > rho1) {
    out.identity_case = IdentityCase::kRho0Greater;
    out.b = BStrategy(1.0, 0.0);
    out.y_interval = Interval{std::min(rho1, 1.0), std::min(rho0, 1.0)};
    out.a = GuessPolicy(1.0, out.y_interval->midpoint());
  } else {
    out.identity_case = IdentityCase::kRho1Greater;
    out.b = BStrategy((d0 - d1) / d0, 1.0);
    out.a = GuessPolicy(1.0, rho0);
  }
  out.dp_epsilon = DpEpsilon(out.b);
  return out;
}

std::string LinePositionName(LinePosition pos) {
  switch (pos) {
    case LinePosition::kAboveL2:
      return "AboveL2";
    case LinePosition::kOnL2:
      return "OnL2";
    case LinePosition::kBelowL2:
      return "BelowL2";
    case LinePosition::kOnL1:
      return "OnL1";
    case LinePosition::kBelowL1:
      return "BelowL1";
  }
  return "Unknown";
}

LinePosition LinesMembership(const Prior& prior, const BStrategy& b) {
  const double d0 = prior.d0(), d1 = prior.d1();
  const double l2 = d0 * (1.0 - b.p) - d1 * b.q;
  const double l1 = d0 * b.p - d1 * (1.0 - b.q);
  if (std::abs(l2) <= kLineTol) return LinePosition::kOnL2;
  if (l2 < 0.0) return LinePosition::kAboveL2;
  if (std::abs(l1) <= kLineTol) return LinePosition::kOnL1;
  if (l1 > 0.0) return LinePosition::kBelowL2;
  return LinePosition::kBelowL1;
}

void ValidateDistribution(const ValuationDistribution& dist) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kInvalidDistribution, why);
  };
  std::visit(Overloaded{
                 [&](const UniformValuation& u) {
                   if (!std::isfinite(u.lo) || !std::isfinite(u.hi) ||
                       u.lo < 0.0 || !(u.hi > u.lo)) {
                     fail("uniform needs 0 <= lo < hi");
                   }
                 },
                 [&](const ExponentialValuation& e) {
                   if (!(e.rate > 0.0) || !std::isfinite(e.rate)) {
                     fail("exponential needs rate > 0");
                   }
                 },
                 [&](const PiecewiseLinearValuation& pw) {
                   const auto& k = pw.knots;
                   if (k.size() < 2) fail("piecewise needs at least two knots");
                   if (k.front().second != 0.0)
                     fail("piecewise CDF must start at 0");
                   if (k.back().second != 1.0)
                     fail("piecewise CDF must end at 1");
                   for (size_t i = 0; i < k.size(); ++i) {
                     if (!std::isfinite(k[i].first) || k[i].first < 0.0) {
                       fail("piecewise values must be finite and >= 0");
                     }
                     if (k[i].second < 0.0 || k[i].second > 1.0) {
                       fail("piecewise CDF values must lie in [0, 1]");
                     }
                     if (i > 0 && !(k[i].first > k[i - 1].first)) {
                       fail("piecewise values must be strictly increasing");
                     }
                     if (i > 0 && k[i].second < k[i - 1].second) {
                       fail("piecewise CDF must be nondecreasing");
                     }
                   }
                 },
             },
             dist);
}

double Cdf(const ValuationDistribution& dist, double x) {
  return std::visit(
      Overloaded{
          [&](const UniformValuation& u) {
            return std::clamp((x - u.lo) / (u.hi - u.lo), 0.0, 1.0);
          },
          [&](const ExponentialValuation& e) {
            return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x);
          },
          [&](const PiecewiseLinearValuation& pw) {
            const auto& k = pw.knots;
            if (x <= k.front().first) return 0.0;
            if (x >= k.back().first) return 1.0;
            auto it = std::upper_bound(
                k.begin(), k.end(), x,
                [](double v, const auto& knot) { return v < knot.first; });
            const auto& [x1, c1] = *it;
            const auto& [x0, c0] = *(it - 1);
            return c0 + (c1 - c0) * (x - x0) / (x1 - x0);
          },
      },
      dist);
}

double PartialMean(const ValuationDistribution& dist, double t) {
  return std::visit(Overloaded{
                        [&](const UniformValuation& u) {
                          const double a = std::clamp(t, u.lo, u.hi);
                          return (u.hi * u.hi - a * a) / (2.0 * (u.hi - u.lo));
                        },
                        [&](const ExponentialValuation& e) {
                          const double a = std::max(t, 0.0);
                          return (a + 1.0 / e.rate) * std::exp(-e.rate * a);
                        },
                        [&](const PiecewiseLinearValuation& pw) {
                          double total = 0.0;
                          const auto& k = pw.knots;
                          for (size_t i = 1; i < k.size(); ++i) {
                            const double lo = std::max(t, k[i - 1].first);
                            const double hi = k[i].first;
                            if (hi <= lo) continue;
                            const double density =
                                (k[i].second - k[i - 1].second) /
                                (k[i].first - k[i - 1].first);
                            total += density * 0.5 * (hi * hi - lo * lo);
                          }
                          return total;
                        },
                    },
                    dist);
}

bool SameDistribution(const ValuationDistribution& a,
                      const ValuationDistribution& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      Overloaded{
          [&](const UniformValuation& u) {
            const auto& v = std::get<UniformValuation>(b);
            return u.lo == v.lo && u.hi == v.hi;
          },
          [&](const ExponentialValuation& e) {
            return e.rate == std::get<ExponentialValuation>(b).rate;
          },
          [&](const PiecewiseLinearValuation& pw) {
            return pw.knots == std::get<PiecewiseLinearValuation>(b).knots;
          },
      },
      a);
}

std::string DistributionName(const ValuationDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const UniformValuation&) { return std::string("uniform"); },
          [](const ExponentialValuation&) {
            return std::string("exponential");
          },
          [](const PiecewiseLinearValuation&) {
            return std::string("piecewise");
          },
      },
      dist);
}

double ValuationModel::CdfB(const Prior& prior, double x) const {
  if (shared()) return Cdf(type0, x);
  return prior.d0() * Cdf(type0, x) + prior.d1() * Cdf(type1, x);
}

ContinuousThresholdBne SolveContinuousThreshold(const Prior& prior,
                                                const ValuationModel& model) {
  ValidateDistribution(model.type0);
  ValidateDistribution(model.type1);
  const double d1 = prior.d1();
  auto cdf_b = [&](double y) { return model.CdfB(prior, y); };

  ContinuousThresholdBne out;
  if (cdf_b(1.0) >= d1) {
    out.root_branch = true;
    out.y_star =
        internal::FirstTrue([&](double y) { return cdf_b(y) >= d1; }, 0.0, 1.0);
    out.y_star_max =
        cdf_b(1.0) <= d1
            ? 1.0
            : internal::FirstTrue([&](double y) { return cdf_b(y) > d1; }, 0.0,
                                  1.0);
    if (out.y_star_max - out.y_star > 1e-12) {
      out.unique = false;
      out.notes.push_back("CDF_B equals D1 on [" + FormatDouble(out.y_star) +
                          ", " + FormatDouble(out.y_star_max) +
                          "]; the smallest solution is reported");
    }
  }
  out.a = GuessPolicy(1.0, out.y_star);
  out.threshold.t = out.y_star;
  out.induced_b = BStrategy(1.0 - Cdf(model.type0, out.y_star),
                            1.0 - Cdf(model.type1, out.y_star));
  if (model.shared()) out.dp_epsilon = DpEpsilon(out.induced_b);
  if (prior.equal_masses()) {
    out.unique = false;
    out.notes.push_back(
        "equal prior: A may also play any (x, y) with the same x + y");
  }
  return out;
}

}  // namespace coupon_bne
