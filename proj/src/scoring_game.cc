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

#include "coupon_bne/scoring_game.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coupon_bne/errors.h"
#include "coupon_bne/extended_real.h"
#include "root_finding.h"

namespace coupon_bne {
namespace {

constexpr double kRegimeTol = 1e-9;

// weight * value, with a zero weight cancelling an infinite value.
double Weighted(double weight, double value) {
  return weight == 0.0 ? 0.0 : weight * value;
}

void RequirePositiveRho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorCode::kInvalidRange, "rho must be finite and > 0");
  }
}

PureChoice Compare(double rho, double spread) {
  if (rho > spread + kRegimeTol) return PureChoice::kOne;
  if (rho < spread - kRegimeTol) return PureChoice::kZero;
  return PureChoice::kFree;
}

// Off-path reports x1 that keep both types on signal 0 against x0 = D1.
Interval PoolingReportInterval(const Prior& prior, double rho,
                               const ScoringRule& rule) {
  const double d1 = prior.d1();
  const double target1 = rule.f1(d1) + rho;
  const double lo =
      rule.f1(1.0) < target1
          ? 1.0
          : internal::FirstTrue([&](double x) { return rule.f1(x) >= target1; },
                                d1, 1.0);
  const double target0 = rule.f0(d1) - rho;
  const double hi =
      rule.f0(1.0) >= target0
          ? 1.0
          : internal::FirstTrue([&](double x) { return rule.f0(x) < target0; },
                                d1, 1.0);
  if (lo > hi + 1e-12) {
    throw Error(ErrorCode::kInternalInconsistency,
                "empty off-path report set in the pooling regime");
  }
  return Interval{lo, std::max(lo, hi)};
}

double LogOdds(double y) { return std::log(y) - std::log1p(-y); }

}  // namespace

std::string RegimeName(ScoringRegime regime) {
  switch (regime) {
    case ScoringRegime::kPooling10:
      return "Pooling10";
    case ScoringRegime::kSeparating11:
      return "Separating11";
    case ScoringRegime::kInterior:
      return "Interior";
  }
  return "Unknown";
}

Utilities ScoringUtilities(const Prior& prior, const CouponValues& coupons,
                           const ScoringRule& rule, const BStrategy& b,
                           const ScoringReportPair& a) {
  const double d0 = prior.d0(), d1 = prior.d1();
  const double p = b.p, q = b.q;
  Utilities u;
  u.u_a = d0 * (Weighted(p, rule.f0(a.x0)) + Weighted(1.0 - p, rule.f0(a.x1))) +
          d1 * (Weighted(1.0 - q, rule.f1(a.x0)) + Weighted(q, rule.f1(a.x1)));
  u.u_b0 = Weighted(p, coupons.rho0 - rule.f0(a.x0)) -
           Weighted(1.0 - p, rule.f0(a.x1));
  u.u_b1 = Weighted(q, coupons.rho1 - rule.f1(a.x1)) -
           Weighted(1.0 - q, rule.f1(a.x0));
  return u;
}

double BenchmarkProfit(const Prior& prior, const ScoringRule& rule) {
  return rule.g(prior.d1());
}

BResponse BBestResponse(const ScoringRule& rule, const ScoringReportPair& a,
                        const CouponValues& coupons) {
  const bool same = a.x0 == a.x1;
  const double spread0 = same ? 0.0 : rule.f0(a.x0) - rule.f0(a.x1);
  const double spread1 = same ? 0.0 : rule.f1(a.x1) - rule.f1(a.x0);
  return BResponse{Compare(coupons.rho0, spread0),
                   Compare(coupons.rho1, spread1)};
}

ScoringBne SolveScoringBne(const Prior& prior, double rho,
                           const ScoringRule& rule) {
  RequirePositiveRho(rho);
  if (!rule.symmetric()) {
    throw Error(ErrorCode::kNonSymmetricRule,
                "rule '" + rule.name() + "' is not symmetric");
  }
  const double d0 = prior.d0(), d1 = prior.d1();
  const CouponValues coupons(rho, rho);
  const double separating = rule.f1(1.0) - rule.f1(0.0);
  const double pooling = rule.f1(d0) - rule.f1(d1);

  ScoringBne out;
  out.benchmark_profit = BenchmarkProfit(prior, rule);

  if (rho >= separating - kRegimeTol) {
    out.regime = ScoringRegime::kSeparating11;
    out.b = BStrategy(1.0, 1.0);
    out.a = ScoringReportPair(0.0, 1.0);
    out.y0 = 0.0;
    out.y1 = 1.0;
    out.posterior_epsilon = std::numeric_limits<double>::infinity();
    out.unique = rho > separating + kRegimeTol;
    if (!out.unique) {
      out.notes.push_back("rho equals the separating threshold " +
                          FormatDouble(separating) +
                          "; the interior family meets y1 = 1 here");
    }
  } else if (rho <= pooling + kRegimeTol) {
    out.regime = ScoringRegime::kPooling10;
    out.b = BStrategy(1.0, 0.0);
    out.x1_interval = PoolingReportInterval(prior, rho, rule);
    out.a = ScoringReportPair(d1, out.x1_interval->midpoint());
    out.y0 = d1;
    out.posterior_epsilon = 0.0;
    out.unique = rho < pooling - kRegimeTol;
    out.notes.push_back(
        "signal 1 is never sent; any x1 in the reported "
        "interval is a best response");
    if (!out.unique) {
      out.notes.push_back("rho equals the pooling threshold " +
                          FormatDouble(pooling) +
                          "; the interior family meets (1, 0) here");
    }
  } else {
    out.regime = ScoringRegime::kInterior;
    const double y1 =
        internal::Bisect([&](double y) { return rule.dg(y) - rho; }, 0.5, 1.0);
    const double r = y1 / (1.0 - y1);
    const double denom = r * r - 1.0;
    out.b =
        BStrategy((r * r - r * d1 / d0) / denom, (r * r - r * d0 / d1) / denom);
    out.a = ScoringReportPair(1.0 - y1, y1);
    out.y0 = 1.0 - y1;
    out.y1 = y1;
    out.posterior_epsilon = LogOdds(y1);
  }
  out.a_profit = out.regime == ScoringRegime::kInterior
                     ? rule.g(*out.y1)
                     : ScoringUtilities(prior, coupons, rule, out.b, out.a).u_a;
  return out;
}

double PosteriorSymmetryResidual(const Prior& prior, const BStrategy& b) {
  const double d0 = prior.d0(), d1 = prior.d1();
  return d0 * d0 * b.p * (1.0 - b.p) - d1 * d1 * b.q * (1.0 - b.q);
}

double AProfitAdvantage(const Prior& prior, double rho,
                        const ScoringRule& rule) {
  RequirePositiveRho(rho);
  if (!rule.symmetric()) {
    throw Error(ErrorCode::kNonSymmetricRule,
                "rule '" + rule.name() + "' is not symmetric");
  }
  if (!(rho < rule.dg(1.0))) {
    throw Error(ErrorCode::kInvalidRange,
                "g'(y1) = rho has no root below 1 (separating regime)");
  }
  // Outside the interior regime this is the value A would get from the
  // interior posteriors; it is <= 0 there.
  const double y1 =
      internal::Bisect([&](double y) { return rule.dg(y) - rho; }, 0.5, 1.0);
  return rule.g(y1) - BenchmarkProfit(prior, rule);
}

std::pair<double, double> AsymmetricSystemResiduals(const CouponValues& coupons,
                                                    const ScoringRule& rule,
                                                    double y0, double y1) {
  const double mu = coupons.rho0 / (coupons.rho0 + coupons.rho1);
  return {rule.ExpectedPayment(mu, y0) - rule.ExpectedPayment(mu, y1),
          rule.ExpectedPayment(0.5, y0) - rule.ExpectedPayment(0.5, y1) -
              0.5 * (coupons.rho0 - coupons.rho1)};
}

ScoringBne SolveScoringBneAsymmetric(const Prior& prior,
                                     const CouponValues& coupons,
                                     const ScoringRule& rule) {
  RequirePositiveRho(coupons.rho0);
  RequirePositiveRho(coupons.rho1);
  const double rho0 = coupons.rho0, rho1 = coupons.rho1;
  const double f1_top = rule.f1(1.0);

  // Type 1 indifference pins y1 as a function of y0.
  auto upper = [&](double y0) {
    const double target = rule.f1(y0) + rho1;
    if (rule.f1(1.0) <= target) return 1.0;
    return internal::Bisect([&](double y) { return rule.f1(y) - target; }, y0,
                            1.0);
  };
  // Type 0 indifference residual; increasing in y0.
  auto phi = [&](double y0) { return rule.f0(y0) - rule.f0(upper(y0)) - rho0; };

  const double lo =
      std::isfinite(rule.f1(0.0)) ? 0.0 : std::numeric_limits<double>::min();
  const double hi =
      std::isfinite(f1_top)
          ? (rule.f1(lo) + rho1 >= f1_top
                 ? lo
                 : internal::FirstTrue(
                       [&](double y) { return rule.f1(y) + rho1 >= f1_top; },
                       lo, 1.0))
          : 1.0 - 1e-12;
  const double phi_lo = phi(lo), phi_hi = phi(hi);
  if (!(hi > lo) || !(phi_lo < 0.0) || !(phi_hi > 0.0)) {
    throw Error(ErrorCode::kNoInteriorSolution,
                "the indifference system has no root with 0 < y0 < y1 < 1");
  }
  const double y0 = internal::Bisect(phi, lo, hi);
  const double y1 = upper(y0);
  if (!(y0 > 0.0 && y1 < 1.0 && y0 < y1)) {
    throw Error(ErrorCode::kNoInteriorSolution,
                "the root lies on the boundary of the report square");
  }

  // D0 p = a D1 (1-q) and D1 q = c D0 (1-p).
  const double d0 = prior.d0(), d1 = prior.d1();
  const double a = (1.0 - y0) / y0;
  const double c = y1 / (1.0 - y1);
  const double det = 1.0 - a * c;
  const double p = a * (d1 - c * d0) / (d0 * det);
  const double q = c * (d0 - a * d1) / (d1 * det);
  constexpr double kSlack = 1e-9;
  if (!(p >= -kSlack && p <= 1.0 + kSlack && q >= -kSlack &&
        q <= 1.0 + kSlack)) {
    throw Error(ErrorCode::kNoInteriorSolution,
                "posteriors (" + FormatDouble(y0) + ", " + FormatDouble(y1) +
                    ") are not reachable from this prior");
  }

  ScoringBne out;
  out.regime = ScoringRegime::kInterior;
  out.b = BStrategy(std::clamp(p, 0.0, 1.0), std::clamp(q, 0.0, 1.0));
  out.a = ScoringReportPair(y0, y1);
  out.y0 = y0;
  out.y1 = y1;
  out.posterior_epsilon = std::log(y1) - std::log(y0);
  out.a_profit = ScoringUtilities(prior, coupons, rule, out.b, out.a).u_a;
  out.benchmark_profit = BenchmarkProfit(prior, rule);
  out.unique = false;
  out.notes.push_back(
      "interior solution only; equilibria with one type pure, (1, q) or "
      "(p, 1), are not searched");
  return out;
}

}  // namespace coupon_bne
