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

#ifndef COUPON_BNE_EXTENDED_REAL_H_
#define COUPON_BNE_EXTENDED_REAL_H_

#include <compare>
#include <limits>
#include <string>

namespace coupon_bne {

// A real number that may also be +inf or -inf, but never NaN. Ordering is
// total.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  // Throws Error(kDomainError) on NaN.
  ExtendedReal(double value);  // NOLINT(runtime/explicit)

  static constexpr ExtendedReal PositiveInfinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity(), Raw{});
  }
  static constexpr ExtendedReal NegativeInfinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity(), Raw{});
  }

  constexpr double value() const { return value_; }
  constexpr bool is_finite() const {
    return value_ != std::numeric_limits<double>::infinity() &&
           value_ != -std::numeric_limits<double>::infinity();
  }
  constexpr bool is_positive_infinity() const {
    return value_ == std::numeric_limits<double>::infinity();
  }
  constexpr bool is_negative_infinity() const {
    return value_ == -std::numeric_limits<double>::infinity();
  }

  // "inf", "-inf" or the shortest round-trip decimal.
  std::string ToString() const;

  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    return a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(ExtendedReal a,
                                                    ExtendedReal b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  struct Raw {};
  constexpr ExtendedReal(double value, Raw) : value_(value) {}

  double value_ = 0.0;
};

// Shortest round-trip formatting shared by the CSV and text writers.
std::string FormatDouble(double value);

}  // namespace coupon_bne

#endif  // COUPON_BNE_EXTENDED_REAL_H_
