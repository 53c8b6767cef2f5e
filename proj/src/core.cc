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

#include "coupon_bne/core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "coupon_bne/errors.h"

namespace coupon_bne {

double CheckedProbability(double value, const char* what) {
  if (!(value >= -kProbabilityTolerance &&
        value <= 1.0 + kProbabilityTolerance)) {
    throw Error(ErrorCode::kDomainError, std::string(what) +
                                             " must lie in [0, 1], got " +
                                             std::to_string(value));
  }
  return std::clamp(value, 0.0, 1.0);
}

namespace {

double CheckedNonNegative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kDomainError, std::string(what) +
                                             " must be finite and >= 0, got " +
                                             std::to_string(value));
  }
  return value;
}

}  // namespace

Prior::Prior(double d0) : Prior(d0, 1.0 - d0) {}

Prior::Prior(double d0, double d1) {
  if (std::abs(d0 + d1 - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorCode::kDomainError, "prior masses must sum to 1");
  }
  d0 = CheckedProbability(d0, "d0");
  d1 = CheckedProbability(d1, "d1");
  relabeled_ = d0 < d1;
  d0_ = relabeled_ ? d1 : d0;
  d1_ = relabeled_ ? d0 : d1;
  if (!(d1_ > 0.0)) {
    throw Error(ErrorCode::kDomainError, "both types need positive mass");
  }
}

BStrategy::BStrategy(double p, double q)
    : p(CheckedProbability(p, "p")), q(CheckedProbability(q, "q")) {}

CouponValues::CouponValues(double rho0, double rho1) : rho0(rho0), rho1(rho1) {
  if (!(rho0 > 0.0) || !(rho1 > 0.0) || !std::isfinite(rho0) ||
      !std::isfinite(rho1)) {
    throw Error(ErrorCode::kDomainError,
                "coupon values must be finite and > 0");
  }
}

PaymentMatrix::PaymentMatrix(double m00, double m01, double m10, double m11)
    : m00(CheckedNonNegative(m00, "m00")),
      m01(CheckedNonNegative(m01, "m01")),
      m10(CheckedNonNegative(m10, "m10")),
      m11(CheckedNonNegative(m11, "m11")) {}

ScoringReportPair::ScoringReportPair(double x0, double x1)
    : x0(CheckedProbability(x0, "x0")), x1(CheckedProbability(x1, "x1")) {}

GuessPolicy::GuessPolicy(double x, double y)
    : x(CheckedProbability(x, "x")), y(CheckedProbability(y, "y")) {}

OptOutPolicy::OptOutPolicy(double x0, double x1, double y0, double y1)
    : x0(CheckedProbability(x0, "x0")),
      x1(CheckedProbability(x1, "x1")),
      y0(CheckedProbability(y0, "y0")),
      y1(CheckedProbability(y1, "y1")) {
  if (x0 + x1 > 1.0 + kProbabilityTolerance ||
      y0 + y1 > 1.0 + kProbabilityTolerance) {
    throw Error(ErrorCode::kDomainError,
                "guess probabilities per signal must sum to at most 1");
  }
}

double SignalMass0(const Prior& prior, const BStrategy& b) {
  return prior.d0() * b.p + prior.d1() * (1.0 - b.q);
}

double SignalMass1(const Prior& prior, const BStrategy& b) {
  return prior.d0() * (1.0 - b.p) + prior.d1() * b.q;
}

Posteriors TryBayesPosteriors(const Prior& prior, const BStrategy& b) {
  Posteriors out;
  const double m0 = SignalMass0(prior, b);
  const double m1 = SignalMass1(prior, b);
  if (m0 > 0.0) out.y0 = std::clamp(prior.d1() * (1.0 - b.q) / m0, 0.0, 1.0);
  if (m1 > 0.0) out.y1 = std::clamp(prior.d1() * b.q / m1, 0.0, 1.0);
  return out;
}

std::pair<double, double> BayesPosteriors(const Prior& prior,
                                          const BStrategy& b) {
  const Posteriors post = TryBayesPosteriors(prior, b);
  if (!post.y0)
    throw Error(ErrorCode::kZeroSignalMass, "signal 0 is never sent");
  if (!post.y1)
    throw Error(ErrorCode::kZeroSignalMass, "signal 1 is never sent");
  return {*post.y0, *post.y1};
}

BStrategy Relabel(const BStrategy& b) { return BStrategy(b.q, b.p); }

CouponValues Relabel(const CouponValues& c) {
  return CouponValues(c.rho1, c.rho0);
}

PaymentMatrix Relabel(const PaymentMatrix& m) {
  return PaymentMatrix(m.m11, m.m10, m.m01, m.m00);
}

ScoringReportPair Relabel(const ScoringReportPair& r) {
  return ScoringReportPair(1.0 - r.x1, 1.0 - r.x0);
}

GuessPolicy Relabel(const GuessPolicy& a) { return GuessPolicy(a.y, a.x); }

OptOutPolicy Relabel(const OptOutPolicy& a) {
  return OptOutPolicy(a.y1, a.y0, a.x1, a.x0);
}

}  // namespace coupon_bne
