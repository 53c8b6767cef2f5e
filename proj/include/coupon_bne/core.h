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

#ifndef COUPON_BNE_CORE_H_
#define COUPON_BNE_CORE_H_

#include <optional>
#include <string>
#include <utility>

namespace coupon_bne {

// Absolute tolerance for probability validation.
inline constexpr double kProbabilityTolerance = 1e-12;

// Validates that `value` lies in [-1e-12, 1 + 1e-12] and clamps it to [0, 1].
// Throws Error(kDomainError) naming `what` otherwise.
double CheckedProbability(double value, const char* what);

// The type distribution (D0, D1). Always stored with d0 >= d1; when the
// caller supplies d0 < d1 the labels are swapped and relabeled() is set.
class Prior {
 public:
  // d1 = 1 - d0.
  explicit Prior(double d0);
  // Requires |d0 + d1 - 1| <= 1e-12.
  Prior(double d0, double d1);

  double d0() const { return d0_; }
  double d1() const { return d1_; }
  bool relabeled() const { return relabeled_; }
  // The prior as the caller wrote it.
  double original_d0() const { return relabeled_ ? d1_ : d0_; }
  bool equal_masses() const { return d0_ - d1_ <= kProbabilityTolerance; }

 private:
  double d0_;
  double d1_;
  bool relabeled_;
};

// B's mixed signaling strategy. p = Pr[signal 0 | type 0],
// q = Pr[signal 1 | type 1].
struct BStrategy {
  BStrategy() = default;
  BStrategy(double p, double q);

  double p = 1.0;
  double q = 1.0;
};

struct CouponValues {
  CouponValues() = default;
  CouponValues(double rho0, double rho1);

  double rho0 = 1.0;
  double rho1 = 1.0;
};

// Entries m_{guess,type}: A receives m00 / m11 on a correct accusation and
// pays m01 / m10 on a wrong one.
struct PaymentMatrix {
  PaymentMatrix() = default;
  PaymentMatrix(double m00, double m01, double m10, double m11);

  double m00 = 1.0;
  double m01 = 1.0;
  double m10 = 1.0;
  double m11 = 1.0;
};

// A's probability reports after signal 0 and signal 1 in the scoring game.
struct ScoringReportPair {
  ScoringReportPair() = default;
  ScoringReportPair(double x0, double x1);

  double x0 = 0.0;
  double x1 = 1.0;
};

// x = Pr[guess 0 | signal 0], y = Pr[guess 1 | signal 1].
struct GuessPolicy {
  GuessPolicy() = default;
  GuessPolicy(double x, double y);

  double x = 1.0;
  double y = 1.0;
};

// Guess probabilities per signal; the residual mass is the opt-out action.
struct OptOutPolicy {
  OptOutPolicy() = default;
  OptOutPolicy(double x0, double x1, double y0, double y1);

  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double v, double tol = 0.0) const {
    return v >= lo - tol && v <= hi + tol;
  }
};

// Pr[type 1 | signal]. nullopt means the signal is never sent, so A's belief
// after it is unconstrained.
struct Posteriors {
  std::optional<double> y0;
  std::optional<double> y1;
};

Posteriors TryBayesPosteriors(const Prior& prior, const BStrategy& b);

// Throws Error(kZeroSignalMass) when either signal has probability zero.
std::pair<double, double> BayesPosteriors(const Prior& prior,
                                          const BStrategy& b);

// Probability that each signal is sent.
double SignalMass0(const Prior& prior, const BStrategy& b);
double SignalMass1(const Prior& prior, const BStrategy& b);

// Label swap helpers. Swapping the type labels maps (p, q) to (q, p) and
// exchanges the roles of the two signals.
BStrategy Relabel(const BStrategy& b);
CouponValues Relabel(const CouponValues& c);
PaymentMatrix Relabel(const PaymentMatrix& m);
ScoringReportPair Relabel(const ScoringReportPair& r);
GuessPolicy Relabel(const GuessPolicy& a);
OptOutPolicy Relabel(const OptOutPolicy& a);

}  // namespace coupon_bne

#endif  // COUPON_BNE_CORE_H_
