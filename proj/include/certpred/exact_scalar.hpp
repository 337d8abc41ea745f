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

#ifndef CERTPRED_EXACT_SCALAR_HPP
#define CERTPRED_EXACT_SCALAR_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "certpred/big_int.hpp"

namespace certpred {

/// Exact dyadic scalar mantissa * 2^exponent with a homogeneity weight.
///
/// Values enter through from_double, which is exact for every finite binary64
/// in [-1, 1] (including subnormals), and flow through add/sub/mul which never
/// round. The weight counts the degree in input coordinates: from_double
/// yields weight 1, multiplication adds weights, and addition/subtraction
/// insist on equal weights so a malformed mixed-degree sum is caught at the
/// point of construction rather than as a silently wrong determinant.
///
/// For grid inputs (multiples of 2^-scale_bits) a value of weight w is an
/// integer multiple of 2^(-scale_bits*w); mantissa_at_scale exposes that
/// integer view.
class ExactScalar {
 public:
  static constexpr int kScaleBits = 53;  // binary64 inputs in [-1,1]

  ExactScalar() = default;

  /// Assemble a value mantissa * 2^exponent with the given weight tag.
  /// Kernel-internal entry point (determinant reassembly, tests).
  static ExactScalar from_parts(BigInt mantissa, int64_t exponent, int weight) {
    ExactScalar r;
    r.mantissa_ = std::move(mantissa);
    r.exponent_ = r.mantissa_.is_zero() ? 0 : exponent;
    r.weight_ = weight;
    return r;
  }

  /// Exact conversion, weight 1. Rejects non-finite x and |x| > 1.
  static ExactScalar from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("ExactScalar: non-finite input");
    if (std::fabs(x) > 1.0) throw std::domain_error("ExactScalar: input outside [-1,1]");
    ExactScalar r;
    r.weight_ = 1;
    if (x == 0.0) return r;
    int e = 0;
    const double f = std::frexp(x, &e);           // x = f * 2^e, 0.5 <= |f| < 1
    const auto m = static_cast<std::int64_t>(std::ldexp(f, 53));  // exact, |m| < 2^53
    r.mantissa_ = m;
    r.exponent_ = e - 53;
    return r;
  }

  const BigInt& mantissa() const { return mantissa_; }
  int64_t exponent() const { return exponent_; }
  int weight() const { return weight_; }
  bool is_zero() const { return mantissa_.is_zero(); }

  int sign() const { return mantissa_.sign(); }

  /// Integer m with value == m * 2^(-scale_bits * weight). Throws if the
  /// value does not lie on that grid (possible only for inputs finer than
  /// 2^-scale_bits, e.g. subnormals).
  BigInt mantissa_at_scale(int scale_bits = kScaleBits) const {
    const int64_t shift = exponent_ + static_cast<int64_t>(scale_bits) * weight_;
    if (is_zero()) return BigInt(0);
    if (shift < 0) {
      if (trailing_zero_bits(mantissa_) + shift < 0)
        throw std::logic_error("ExactScalar: value below 2^-scale grid");
      return mantissa_ >> static_cast<unsigned>(-shift);
    }
    return mantissa_ << static_cast<unsigned>(shift);
  }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    return combine(a, b, /*subtract=*/false);
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    return combine(a, b, /*subtract=*/true);
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar r;
    r.mantissa_ = a.mantissa_ * b.mantissa_;
    r.exponent_ = r.mantissa_.is_zero() ? 0 : a.exponent_ + b.exponent_;
    r.weight_ = a.weight_ + b.weight_;
    return r;
  }
  ExactScalar operator-() const {
    ExactScalar r = *this;
    r.mantissa_ = -r.mantissa_;
    return r;
  }

  /// Value equality; the weight is bookkeeping, not part of the value.
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.compare(b) == 0;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  int compare(const ExactScalar& other) const {
    if (is_zero() || other.is_zero()) return sign() - other.sign();
    if (sign() != other.sign()) return sign() < other.sign() ? -1 : 1;
    const int64_t e = std::min(exponent_, other.exponent_);
    const BigInt lhs = mantissa_ << static_cast<unsigned>(exponent_ - e);
    const BigInt rhs = other.mantissa_ << static_cast<unsigned>(other.exponent_ - e);
    return lhs.compare(rhs);
  }

  /// |value| <= |threshold|, decided exactly.
  bool abs_leq(double threshold) const {
    if (!std::isfinite(threshold)) throw std::domain_error("abs_leq: non-finite threshold");
    if (is_zero()) return true;
    const double t = std::fabs(threshold);
    if (t == 0.0) return false;
    int e = 0;
    const double f = std::frexp(t, &e);
    const auto tm = static_cast<std::int64_t>(std::ldexp(f, 53));
    const int64_t te = e - 53;
    const int64_t common = std::min(exponent_, te);
    const BigInt lhs = boost::multiprecision::abs(mantissa_)
                       << static_cast<unsigned>(exponent_ - common);
    const BigInt rhs = BigInt(tm) << static_cast<unsigned>(te - common);
    return lhs <= rhs;
  }

  /// Nearest binary64 (ties to even). Exact when the value fits.
  double to_double() const {
    if (is_zero()) return 0.0;
    const bool neg = sign() < 0;
    BigInt a = boost::multiprecision::abs(mantissa_);
    int64_t e = exponent_;
    const int64_t bits = bit_length(a);
    if (bits > 53) {
      const int64_t shift = bits - 53;
      const BigInt low = a & ((BigInt(1) << static_cast<unsigned>(shift)) - 1);
      a >>= static_cast<unsigned>(shift);
      e += shift;
      const BigInt half = BigInt(1) << static_cast<unsigned>(shift - 1);
      if (low > half || (low == half && boost::multiprecision::bit_test(a, 0))) ++a;
    }
    const double d = std::ldexp(static_cast<double>(a.convert_to<std::uint64_t>()),
                                static_cast<int>(e));
    return neg ? -d : d;
  }

  std::string to_string() const {
    return mantissa_.str() + "*2^" + std::to_string(exponent_);
  }

 private:
  static ExactScalar combine(const ExactScalar& a, const ExactScalar& b, bool subtract) {
    if (a.weight_ != b.weight_)
      throw std::logic_error("ExactScalar: weight mismatch in add/sub (" +
                             std::to_string(a.weight_) + " vs " + std::to_string(b.weight_) + ")");
    ExactScalar r;
    r.weight_ = a.weight_;
    const int64_t e = std::min(a.exponent_, b.exponent_);
    const BigInt lhs = a.mantissa_ << static_cast<unsigned>(a.exponent_ - e);
    const BigInt rhs = b.mantissa_ << static_cast<unsigned>(b.exponent_ - e);
    r.mantissa_ = subtract ? BigInt(lhs - rhs) : BigInt(lhs + rhs);
    r.exponent_ = r.mantissa_.is_zero() ? 0 : e;
    return r;
  }

  BigInt mantissa_{0};
  int64_t exponent_ = 0;
  int weight_ = 0;
};

inline int sign_of(const ExactScalar& v) { return v.sign(); }

}  // namespace certpred

#endif  // CERTPRED_EXACT_SCALAR_HPP
