// Copyright 2026 The gpqubo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GPQUBO_RNG_HPP_
#define GPQUBO_RNG_HPP_

#include <cstdint>

namespace gpqubo {

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(RngSeed, RngSeed) = default;
};

// SplitMix64 as a counter-based generator: the k-th draw (k = 1, 2, ...) is
// mix(seed + k * 0x9E3779B97F4A7C15). Output depends only on (seed, k), so
// streams are bit-identical on every platform and compiler. No OS entropy.
class SplitMix64 {
 public:
  explicit SplitMix64(RngSeed seed) noexcept : state_(seed.value) {}

  static std::uint64_t mix(std::uint64_t z) noexcept;

  std::uint64_t next() noexcept;

  // Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
  // rejection, so there is no modulo bias.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() noexcept;

 private:
  std::uint64_t state_;
};

// Independent seed for sub-stream `stream` of `base`.
RngSeed derive_seed(RngSeed base, std::uint64_t stream) noexcept;

}  // namespace gpqubo

#endif  // GPQUBO_RNG_HPP_
