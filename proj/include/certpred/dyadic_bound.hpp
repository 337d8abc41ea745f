// Copyright 2026 The Certpred Authors.
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

#ifndef CERTPRED_DYADIC_BOUND_HPP
#define CERTPRED_DYADIC_BOUND_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "certpred/big_int.hpp"

namespace certpred {

/// Non-negative dyadic rational mantissa * 2^exponent, kept in canonical form
/// (mantissa odd, or zero with exponent zero) so that equality is a plain
/// field comparison. Addition and multiplication are exact; there is no
/// rounding anywhere in this type.
class DyadicBound {
 public:
  DyadicBound() = default;

  DyadicBound(BigInt mantissa, int64_t exponent)
      : mantissa_(std::move(mantissa)), exponent_(exponent) {
    if (mantissa_.sign() < 0) throw std::invalid_argument("DyadicBound: negative mantissa");
    normalize();
  }

  explicit DyadicBound(std::uint64_t value) : DyadicBound(BigInt(value), 0) {}

  /// Unit roundoff 2^-(mantissa_bits + 1) of round-to-nearest arithmetic.
  static DyadicBound unit_roundoff(int mantissa_bits) {
    return DyadicBound(BigInt(1), -static_cast<int64_t>(mantissa_bits) - 1);
  }

  const BigInt& mantissa() const { return mantissa_; }
  int64_t exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_.is_zero(); }

  friend DyadicBound operator+(const DyadicBound& a, const DyadicBound& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int64_t e = std::min(a.exponent_, b.exponent_);
    BigInt m = (a.mantissa_ << static_cast<unsigned>(a.exponent_ - e)) +
               (b.mantissa_ << static_cast<unsigned>(b.exponent_ - e));
    return DyadicBound(std::move(m), e);
  }

  friend DyadicBound operator*(const DyadicBound& a, const DyadicBound& b) {
    if (a.is_zero() || b.is_zero()) return DyadicBound();
    return DyadicBound(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }

  friend bool operator==(const DyadicBound& a, const DyadicBound& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend bool operator!=(const DyadicBound& a, const DyadicBound& b) { return !(a == b); }

  friend bool operator<(const DyadicBound& a, const DyadicBound& b) { return a.compare(b) < 0; }
  friend bool operator<=(const DyadicBound& a, const DyadicBound& b) { return a.compare(b) <= 0; }
  friend bool operator>(const DyadicBound& a, const DyadicBound& b) { return a.compare(b) > 0; }
  friend bool operator>=(const DyadicBound& a, const DyadicBound& b) { return a.compare(b) >= 0; }

  int compare(const DyadicBound& other) const {
    if (is_zero() || other.is_zero()) {
      return (is_zero() ? 0 : 1) - (other.is_zero() ? 0 : 1);
    }
    const int64_t e = std::min(exponent_, other.exponent_);
    const BigInt lhs = mantissa_ << static_cast<unsigned>(exponent_ - e);
    const BigInt rhs = other.mantissa_ << static_cast<unsigned>(other.exponent_ - e);
    return lhs.compare(rhs);
  }

  /// Smallest binary64 value >= this bound. Converting a certified error
  /// bound must never round down, or the filter comparison would lie.
  double to_double_round_up() const {
    if (is_zero()) return 0.0;
    const int64_t bits = bit_length(mantissa_);
    if (bits <= 53) {
      return std::ldexp(static_cast<double>(mantissa_.convert_to<std::uint64_t>()),
                        static_cast<int>(exponent_));
    }
    const int64_t shift = bits - 53;
    BigInt top = mantissa_ >> static_cast<unsigned>(shift);
    if ((top << static_cast<unsigned>(shift)) != mantissa_) ++top;  // round up
    return std::ldexp(static_cast<double>(top.convert_to<std::uint64_t>()),
                      static_cast<int>(exponent_ + shift));
  }

  /// "72" for integers, "3*2^-54" otherwise ("2^-51" when the mantissa is 1).
  std::string to_string() const {
    if (is_zero()) return "0";
    if (exponent_ >= 0) {
      BigInt v = mantissa_ << static_cast<unsigned>(exponent_);
      return v.str();
    }
    std::string exp_part = "2^" + std::to_string(exponent_);
    if (mantissa_ == 1) return exp_part;
    return mantissa_.str() + "*" + exp_part;
  }

 private:
  void normalize() {
    if (mantissa_.is_zero()) {
      exponent_ = 0;
      return;
    }
    const int64_t tz = trailing_zero_bits(mantissa_);
    if (tz > 0) {
      mantissa_ >>= static_cast<unsigned>(tz);
      exponent_ += tz;
    }
  }

  BigInt mantissa_{0};
  int64_t exponent_ = 0;
};

}  // namespace certpred

#endif  // CERTPRED_DYADIC_BOUND_HPP
