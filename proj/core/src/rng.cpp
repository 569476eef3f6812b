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

#include "gpqubo/rng.hpp"

namespace gpqubo {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix(state_);
}

std::uint64_t SplitMix64::uniform_below(std::uint64_t bound) noexcept {
  u128 m = static_cast<u128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double SplitMix64::uniform01() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

RngSeed derive_seed(RngSeed base, std::uint64_t stream) noexcept {
  return RngSeed{SplitMix64::mix(base.value ^ SplitMix64::mix(stream + kGolden))};
}

}  // namespace gpqubo
