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

#include "coupon_bne/scoring.h"

#include <cmath>
#include <limits>
#include <utility>

#include "coupon_bne/core.h"
#include "coupon_bne/errors.h"

namespace coupon_bne {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kValidationGrid = 1000;

double XLogX(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

ScoringRule::ScoringRule(std::string name, Fn g, Fn dg, Fn d2g, bool symmetric)
    : name_(std::move(name)),
      g_(std::move(g)),
      dg_(std::move(dg)),
      d2g_(std::move(d2g)),
      symmetric_(symmetric) {}

ScoringRule ScoringRule::Custom(std::string name, Fn g, Fn dg, Fn d2g) {
  bool symmetric = true;
  for (int i = 0; i <= kValidationGrid; ++i) {
    const double x = static_cast<double>(i) / kValidationGrid;
    if (i > 0 && i < kValidationGrid && !(d2g(x) > 0.0)) {
      throw Error(ErrorCode::kDomainError, "generator of rule '" + name +
                                               "' is not strictly convex at " +
                                               std::to_string(x));
    }
    if (std::abs(g(x) - g(1.0 - x)) > 1e-10) symmetric = false;
  }
  return ScoringRule(std::move(name), std::move(g), std::move(dg),
                     std::move(d2g), symmetric);
}

double ScoringRule::g(double x) const { return g_(CheckedProbability(x, "x")); }
double ScoringRule::dg(double x) const {
  return dg_(CheckedProbability(x, "x"));
}
double ScoringRule::d2g(double x) const {
  return d2g_(CheckedProbability(x, "x"));
}

// x g'(x) and (1-x) g'(x) vanish at the endpoint where their weight is zero,
// even when g' is infinite there.
double ScoringRule::f0(double x) const {
  x = CheckedProbability(x, "x");
  if (x == 0.0) return g_(x);
  return g_(x) - x * dg_(x);
}

double ScoringRule::f1(double x) const {
  x = CheckedProbability(x, "x");
  if (x == 1.0) return g_(x);
  return g_(x) + (1.0 - x) * dg_(x);
}

double ScoringRule::ExpectedPayment(double mu, double x) const {
  mu = CheckedProbability(mu, "mu");
  x = CheckedProbability(x, "x");
  if (x == mu) return g_(x);
  return g_(x) - (x - mu) * dg_(x);
}

ScoringRule MakeQuadratic() {
  return ScoringRule::Custom(
      "quadratic", [](double x) { return 2.0 - 2.0 * x + 2.0 * x * x; },
      [](double x) { return -2.0 + 4.0 * x; }, [](double) { return 4.0; });
}

ScoringRule MakeSpherical() {
  auto norm = [](double x) { return std::hypot(x, 1.0 - x); };
  return ScoringRule::Custom(
      "spherical", norm, [norm](double x) { return (2.0 * x - 1.0) / norm(x); },
      [norm](double x) {
        const double n = norm(x);
        return 1.0 / (n * n * n);
      });
}

ScoringRule MakeLogarithmic() {
  return ScoringRule::Custom(
      "logarithmic", [](double x) { return XLogX(x) + XLogX(1.0 - x); },
      [](double x) {
        if (x == 0.0) return -kInf;
        if (x == 1.0) return kInf;
        return std::log(x) - std::log1p(-x);
      },
      [](double x) {
        if (x == 0.0 || x == 1.0) return kInf;
        return 1.0 / x + 1.0 / (1.0 - x);
      });
}

ScoringRule MakeRule(const std::string& name) {
  if (name == "quadratic") return MakeQuadratic();
  if (name == "spherical") return MakeSpherical();
  if (name == "logarithmic") return MakeLogarithmic();
  throw Error(ErrorCode::kConfigError, "unknown scoring rule '" + name + "'");
}

}  // namespace coupon_bne
