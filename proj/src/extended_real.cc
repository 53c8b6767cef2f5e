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

#include "coupon_bne/extended_real.h"

#include <charconv>
#include <cmath>

#include "coupon_bne/errors.h"

namespace coupon_bne {

ExtendedReal::ExtendedReal(double value) : value_(value) {
  if (std::isnan(value)) {
    throw Error(ErrorCode::kDomainError, "NaN is not an extended real");
  }
}

std::string ExtendedReal::ToString() const { return FormatDouble(value_); }

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace coupon_bne
