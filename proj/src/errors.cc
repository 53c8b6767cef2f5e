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

#include "coupon_bne/errors.h"

namespace coupon_bne {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomainError:
      return "DomainError";
    case ErrorCode::kZeroSignalMass:
      return "ZeroSignalMass";
    case ErrorCode::kNoRoot:
      return "NoRoot";
    case ErrorCode::kInvalidRange:
      return "InvalidRange";
    case ErrorCode::kNonSymmetricRule:
      return "NonSymmetricRule";
    case ErrorCode::kNoInteriorSolution:
      return "NoInteriorSolution";
    case ErrorCode::kInvalidDistribution:
      return "InvalidDistribution";
    case ErrorCode::kDivisionByZero:
      return "DivisionByZero";
    case ErrorCode::kInfeasible:
      return "Infeasible";
    case ErrorCode::kInternalInconsistency:
      return "InternalInconsistency";
    case ErrorCode::kBudgetExceeded:
      return "BudgetExceeded";
    case ErrorCode::kUnsupported:
      return "Unsupported";
    case ErrorCode::kConfigError:
      return "ConfigError";
  }
  return "Unknown";
}

bool IsInfeasibility(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoRoot:
    case ErrorCode::kNoInteriorSolution:
    case ErrorCode::kInfeasible:
    case ErrorCode::kDivisionByZero:
      return true;
    default:
      return false;
  }
}

}  // namespace coupon_bne
