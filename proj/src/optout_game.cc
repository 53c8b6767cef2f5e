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

#include "coupon_bne/optout_game.h"

#include <algorithm>
#include <cmath>

#include "coupon_bne/errors.h"
#include "coupon_bne/privacy.h"

namespace coupon_bne {
namespace {

double Scale(double a, double b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

bool WeakLe(double a, double b, double tol) {
  return a <= b + tol * Scale(a, b);
}
bool StrictLt(double a, double b, double tol) {
  return a < b - tol * Scale(a, b);
}

struct RowTest {
  bool weak = true;
  bool strict = true;
  bool near = false;

  void Le(double a, double b, double tol) {
    const bool w = WeakLe(a, b, tol), st = StrictLt(a, b, tol);
    weak = weak && w;
    strict = strict && st;
    near = near || (w && !st);
  }
};

double Unit(double v) { return std::clamp(v, 0.0, 1.0); }

void RequireNonzeroOffDiagonal(const PaymentMatrix& m) {
  if (m.m01 == 0.0 || m.m10 == 0.0) {
    throw Error(ErrorCode::kDivisionByZero,
                "the strawman check divides by m01 and m10, which must be > 0");
  }
}

}  // namespace

bool CheckStrawman(const Prior& prior, const PaymentMatrix& m) {
  RequireNonzeroOffDiagonal(m);
  return m.m00 * prior.d0() < m.m01 * prior.d1() &&
         m.m11 * prior.d1() < m.m10 * prior.d0();
}

std::string StrawmanViolation(const Prior& prior, const PaymentMatrix& m) {
  RequireNonzeroOffDiagonal(m);
  std::string out;
  if (!(m.m00 * prior.d0() < m.m01 * prior.d1())) {
    out += "m00/m01 < d1/d0 fails (" + FormatDouble(m.m00 / m.m01) +
           " >= " + FormatDouble(prior.d1() / prior.d0()) + ")";
  }
  if (!(m.m11 * prior.d1() < m.m10 * prior.d0())) {
    if (!out.empty()) out += "; ";
    out += "m11/m10 < d0/d1 fails (" + FormatDouble(m.m11 / m.m10) +
           " >= " + FormatDouble(prior.d0() / prior.d1()) + ")";
  }
  return out;
}

std::string OptOutCaseName(OptOutCase c) {
  switch (c) {
    case OptOutCase::kCase1:
      return "Case1";
    case OptOutCase::kCase2:
      return "Case2";
    case OptOutCase::kCase3:
      return "Case3";
    case OptOutCase::kCase4:
      return "Case4";
    case OptOutCase::kCase5:
      return "Case5";
    case OptOutCase::kCase6:
      return "Case6";
    case OptOutCase::kBoundary:
      return "Boundary";
    case OptOutCase::kInfeasible:
      return "Infeasible";
  }
  return "Unknown";
}

CaseClassification ClassifyCase(const Prior& prior, const PaymentMatrix& m,
                                const CouponValues& coupons, double tol) {
  if (!CheckStrawman(prior, m)) {
    throw Error(ErrorCode::kInfeasible,
                "strawman assumptions fail: " + StrawmanViolation(prior, m));
  }
  const double r0 = coupons.rho0, r1 = coupons.rho1;
  const double delta = m.m01 * m.m10 - m.m00 * m.m11;
  const double s1 = r1 * m.m10 - r0 * m.m11;
  const double s0 = r0 * m.m01 - r1 * m.m00;

  RowTest rows[6];
  rows[0].Le(m.m00 + m.m10, r0, tol);
  rows[0].Le(m.m01 + m.m11, r1, tol);

  rows[1].Le(r0, m.m00, tol);
  rows[1].Le(r0 * m.m01, r1 * m.m00, tol);

  rows[2].Le(m.m00, r0, tol);
  rows[2].Le(r0, m.m00 + m.m10, tol);
  rows[2].Le(delta, s1, tol);

  rows[3].Le(r1, m.m11, tol);
  rows[3].Le(r1 * m.m10, r0 * m.m11, tol);

  rows[4].Le(m.m11, r1, tol);
  rows[4].Le(r1, m.m11 + m.m01, tol);
  rows[4].Le(delta, s0, tol);

  rows[5].Le(0.0, s1, tol);
  rows[5].Le(s1, delta, tol);
  rows[5].Le(0.0, s0, tol);
  rows[5].Le(s0, delta, tol);

  CaseClassification out;
  int strict_count = 0;
  OptOutCase strict_row = OptOutCase::kInfeasible;
  for (int i = 0; i < 6; ++i) {
    const auto row = static_cast<OptOutCase>(i);
    if (rows[i].weak) out.matching.push_back(row);
    out.degenerate = out.degenerate || rows[i].near;
    if (rows[i].strict) {
      out.strict.push_back(row);
      ++strict_count;
      strict_row = row;
    }
  }
  if (out.matching.empty()) {
    throw Error(ErrorCode::kInternalInconsistency,
                "no case condition holds for these parameters");
  }
  if (strict_count == 1 && out.matching.size() == 1) {
    out.label = strict_row;
  } else {
    out.label = OptOutCase::kBoundary;
  }
  return out;
}

OptOutProfile CaseStrategies(const Prior& prior, const PaymentMatrix& m,
                             const CouponValues& coupons, OptOutCase row) {
  const double d0 = prior.d0(), d1 = prior.d1();
  const double r0 = coupons.rho0, r1 = coupons.rho1;
  const double delta = m.m01 * m.m10 - m.m00 * m.m11;
  OptOutProfile out;
  out.row = row;
  auto policy = [](double x0, double y1) {
    return OptOutPolicy(Unit(x0), 0.0, 0.0, Unit(y1));
  };
  switch (row) {
    case OptOutCase::kCase1:
      out.b = BStrategy(1.0, 1.0);
      out.a = policy(1.0, 1.0);
      break;
    case OptOutCase::kCase2:
      out.b = BStrategy(0.0, 1.0);
      out.a = policy(m.m00 > 0.0 ? r0 / m.m00 : 1.0, 0.0);
      break;
    case OptOutCase::kCase3:
      out.b = BStrategy(Unit(1.0 - d1 * m.m11 / (d0 * m.m10)), 1.0);
      out.a = policy(1.0, (r0 - m.m00) / m.m10);
      break;
    case OptOutCase::kCase4:
      out.b = BStrategy(1.0, 0.0);
      out.a = policy(0.0, m.m11 > 0.0 ? r1 / m.m11 : 1.0);
      break;
    case OptOutCase::kCase5:
      out.b = BStrategy(1.0, Unit(1.0 - d0 * m.m00 / (d1 * m.m01)));
      out.a = policy((r1 - m.m11) / m.m01, 1.0);
      break;
    case OptOutCase::kCase6: {
      const double denom = d0 * d1 * delta;
      out.b = BStrategy(Unit(d1 * m.m01 * (d0 * m.m10 - d1 * m.m11) / denom),
                        Unit(d0 * m.m10 * (d1 * m.m01 - d0 * m.m00) / denom));
      out.a = policy((m.m10 * r1 - m.m11 * r0) / delta,
                     (m.m01 * r0 - m.m00 * r1) / delta);
      break;
    }
    default:
      throw Error(ErrorCode::kInvalidRange,
                  OptOutCaseName(row) + " is not a row of the case table");
  }
  return out;
}

bool RrCondition(const Prior& prior, const PaymentMatrix& m, double tol) {
  const double lhs = prior.d0() * prior.d0() * m.m00 * m.m10;
  const double rhs = prior.d1() * prior.d1() * m.m01 * m.m11;
  if (!(lhs > 0.0 && rhs > 0.0)) return false;
  return std::abs(lhs - rhs) <= tol * std::max(lhs, rhs);
}

OptOutBne SolveOptOutBne(const Prior& prior, const PaymentMatrix& m,
                         const CouponValues& coupons) {
  OptOutBne out;
  out.classification = ClassifyCase(prior, m, coupons);
  if (out.classification.label == OptOutCase::kBoundary) {
    out.unique = false;
    for (OptOutCase row : out.classification.matching) {
      out.candidates.push_back(CaseStrategies(prior, m, coupons, row));
    }
    std::string rows;
    for (OptOutCase row : out.classification.matching) {
      rows += (rows.empty() ? "" : ", ") + OptOutCaseName(row);
    }
    out.notes.push_back("parameters lie on a case boundary; candidate rows: " +
                        rows);
  } else {
    out.candidates.push_back(
        CaseStrategies(prior, m, coupons, out.classification.label));
  }
  out.b = out.candidates.front().b;
  out.a = out.candidates.front().a;
  const OptOutCase label = out.classification.label;
  if (label == OptOutCase::kCase2 || label == OptOutCase::kCase4) {
    out.notes.push_back(
        "the off-path signal leaves A's accusation there only bounded; the "
        "canonical point is reported");
  }
  out.dp_epsilon = DpEpsilon(out.b);
  if (label == OptOutCase::kCase6 && RrCondition(prior, m)) {
    out.rr = true;
    out.rr_epsilon = std::log(prior.d1() * m.m01 / (prior.d0() * m.m00));
  }
  return out;
}

Utilities OptOutUtilities(const Prior& prior, const PaymentMatrix& m,
                          const CouponValues& coupons, const BStrategy& b,
                          const OptOutPolicy& a) {
  const AccusationValues s0 = OptOutAccusationValues(prior, m, b, 0);
  const AccusationValues s1 = OptOutAccusationValues(prior, m, b, 1);
  const double p = b.p, q = b.q;
  Utilities u;
  u.u_a =
      a.x0 * s0.guess0 + a.x1 * s0.guess1 + a.y0 * s1.guess0 + a.y1 * s1.guess1;
  u.u_b0 = p * (coupons.rho0 - a.x0 * m.m00 + a.x1 * m.m10) +
           (1.0 - p) * (-a.y0 * m.m00 + a.y1 * m.m10);
  u.u_b1 = q * (coupons.rho1 - a.y1 * m.m11 + a.y0 * m.m01) +
           (1.0 - q) * (-a.x1 * m.m11 + a.x0 * m.m01);
  return u;
}

AccusationValues OptOutAccusationValues(const Prior& prior,
                                        const PaymentMatrix& m,
                                        const BStrategy& b, int signal) {
  const double d0 = prior.d0(), d1 = prior.d1();
  // Joint probabilities of (type, signal).
  const double t0 = signal == 0 ? d0 * b.p : d0 * (1.0 - b.p);
  const double t1 = signal == 0 ? d1 * (1.0 - b.q) : d1 * b.q;
  return AccusationValues{m.m00 * t0 - m.m01 * t1, m.m11 * t1 - m.m10 * t0};
}

}  // namespace coupon_bne
