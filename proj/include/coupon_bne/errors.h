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

#ifndef COUPON_BNE_ERRORS_H_
#define COUPON_BNE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace coupon_bne {

enum class ErrorCode {
  kDomainError,
  kZeroSignalMass,
  kNoRoot,
  kInvalidRange,
  kNonSymmetricRule,
  kNoInteriorSolution,
  kInvalidDistribution,
  kDivisionByZero,
  kInfeasible,
  kInternalInconsistency,
  kBudgetExceeded,
  kUnsupported,
  kConfigError,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// True for errors that mean "this game has no supported equilibrium"
// rather than "the input is malformed".
bool IsInfeasibility(ErrorCode code);

}  // namespace coupon_bne

#endif  // COUPON_BNE_ERRORS_H_
