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

#ifndef COUPON_BNE_SCORING_H_
#define COUPON_BNE_SCORING_H_

#include <functional>
#include <string>

namespace coupon_bne {

// A proper scoring rule generated by a convex g on [0, 1]. A report x is the
// announced probability of type 1; the payment is f1(x) when the type is 1
// and f0(x) when it is 0.
class ScoringRule {
 public:
  using Fn = std::function<double(double)>;

  // Validates convexity (g'' > 0) on the open 1e-3 grid and detects symmetry
  // g(x) = g(1 - x) within 1e-10. Throws kDomainError if g'' <= 0 anywhere
  // on the grid.
  static ScoringRule Custom(std::string name, Fn g, Fn dg, Fn d2g);

  const std::string& name() const { return name_; }
  bool symmetric() const { return symmetric_; }

  // Throw kDomainError outside [0, 1] (1e-12 slack). May return +/-inf at
  // the endpoints, never NaN.
  double g(double x) const;
  double dg(double x) const;
  double d2g(double x) const;
  double f0(double x) const;
  double f1(double x) const;

  // F_mu(x) = g(x) - (x - mu) g'(x), the expected payment for reporting x
  // when the true probability of type 1 is mu.
  double ExpectedPayment(double mu, double x) const;

 private:
  ScoringRule(std::string name, Fn g, Fn dg, Fn d2g, bool symmetric);

  std::string name_;
  Fn g_;
  Fn dg_;
  Fn d2g_;
  bool symmetric_;
};

// g(x) = 2 - 2x + 2x^2.
ScoringRule MakeQuadratic();
// g(x) = sqrt(x^2 + (1-x)^2).
ScoringRule MakeSpherical();
// g(x) = x ln x + (1-x) ln(1-x).
ScoringRule MakeLogarithmic();

// "quadratic" | "spherical" | "logarithmic"; throws kConfigError otherwise.
ScoringRule MakeRule(const std::string& name);

}  // namespace coupon_bne

#endif  // COUPON_BNE_SCORING_H_
