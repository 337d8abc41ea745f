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

#ifndef CERTPRED_RNG_HPP
#define CERTPRED_RNG_HPP

#include <array>
#include <cstdint>

namespace certpred {

// Philox4x32-10 counter-based generator.
//   Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
// Counter-based means a block of output is a pure function of (key, counter):
// any trial index can be mapped to its own independent stream, so results do
// not depend on how trials are partitioned across workers.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block block(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * counter[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * counter[2];
      counter = {static_cast<std::uint32_t>(p1 >> 32) ^ counter[1] ^ key[0],
                 static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ counter[3] ^ key[1],
                 static_cast<std::uint32_t>(p0)};
    }
    return counter;
  }
};

/// One stream of a keyed Philox generator: stream ids map trials to
/// independent substreams, the draw counter walks within a stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream_id) {}

  std::uint64_t next_u64() {
    if (have_ == 0) {
      const Philox4x32::Block out = Philox4x32::block(
          {static_cast<std::uint32_t>(draws_), static_cast<std::uint32_t>(draws_ >> 32),
           static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
          key_);
      ++draws_;
      buf_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
      buf_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
      have_ = 2;
    }
    return buf_[--have_];
  }

  /// Uniform on the 2^54-point grid {-1, -1 + 2^-53, ..., 1 - 2^-53}.
  /// Every value is an exact multiple of 2^-53, so conversion into the exact
  /// kernel is lossless and the grid matches 53-bit input snapping.
  double uniform_pm1() {
    const std::uint64_t k = next_u64() >> 10;  // 54 bits
    return static_cast<double>(static_cast<std::int64_t>(k) - (std::int64_t{1} << 53)) *
           0x1p-53;
  }

 private:
  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t draws_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int have_ = 0;
};

}  // namespace certpred

#endif  // CERTPRED_RNG_HPP
