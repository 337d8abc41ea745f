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

#ifndef CERTPRED_BIG_INT_HPP
#define CERTPRED_BIG_INT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace certpred {

// Arbitrary-precision signed integer. The 512-bit internal buffer keeps every
// determinant intermediate that occurs for dimensions 1..6 off the heap;
// larger values grow transparently.
using BigInt = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<512, 0,
                                           boost::multiprecision::signed_magnitude,
                                           boost::multiprecision::unchecked>>;

inline int sign_of(const BigInt& v) { return v.sign(); }

// Number of significant bits of |v|; 0 for v == 0.
inline int64_t bit_length(const BigInt& v) {
  if (v.is_zero()) return 0;
  return static_cast<int64_t>(boost::multiprecision::msb(boost::multiprecision::abs(v))) + 1;
}

// Largest k such that 2^k divides v (v != 0).
inline int64_t trailing_zero_bits(const BigInt& v) {
  return static_cast<int64_t>(boost::multiprecision::lsb(boost::multiprecision::abs(v)));
}

}  // namespace certpred

#endif  // CERTPRED_BIG_INT_HPP
