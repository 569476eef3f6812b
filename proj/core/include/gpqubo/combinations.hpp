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

#ifndef GPQUBO_COMBINATIONS_HPP_
#define GPQUBO_COMBINATIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gpqubo {

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k) noexcept;

// Revolving-door enumeration of every k-subset of {0, ..., n-1}: each call
// to next() exchanges exactly one element, so objectives can be updated
// incrementally. Implements Algorithm R of Knuth, TAOCP Vol. 4A, 7.2.1.3.
// The first subset is {0, ..., k-1}.
class RevolvingDoor {
 public:
  RevolvingDoor(std::size_t n, std::size_t k);

  // Current subset, ascending.
  std::span<const std::size_t> current() const noexcept {
    return {c_.data() + 1, k_};
  }

  // Moves to the next subset; false once every subset has been visited.
  bool next() noexcept;

  // Element that left / joined on the last successful next().
  std::size_t removed() const noexcept { return removed_; }
  std::size_t added() const noexcept { return added_; }

 private:
  bool exchange(std::size_t out, std::size_t in) noexcept {
    removed_ = out;
    added_ = in;
    return true;
  }

  std::size_t n_;
  std::size_t k_;
  std::vector<std::size_t> c_;  // 1-based, c_[k+1] = n sentinel
  std::size_t removed_ = 0;
  std::size_t added_ = 0;
};

}  // namespace gpqubo

#endif  // GPQUBO_COMBINATIONS_HPP_
