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

#include "gpqubo/combinations.hpp"

#include <limits>

#include "gpqubo/errors.hpp"

namespace gpqubo {

std::uint64_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  __extension__ using u128 = unsigned __int128;
  u128 result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

RevolvingDoor::RevolvingDoor(std::size_t n, std::size_t k)
    : n_(n), k_(k), c_(k + 2) {
  if (k > n) throw InvalidInput("RevolvingDoor: k exceeds n");
  for (std::size_t j = 1; j <= k; ++j) c_[j] = j - 1;
  c_[k + 1] = n;
}

bool RevolvingDoor::next() noexcept {
  if (k_ == 0 || k_ == n_) return false;
  auto& c = c_;

  // R3: easy case on c_1.
  std::size_t j = 2;
  bool try_decrease;
  if (k_ % 2 == 1) {
    if (c[1] + 1 < c[2]) {
      ++c[1];
      return exchange(c[1] - 1, c[1]);
    }
    try_decrease = true;
  } else {
    if (c[1] > 0) {
      --c[1];
      return exchange(c[1] + 1, c[1]);
    }
    try_decrease = false;
  }

  while (j <= k_) {
    if (try_decrease) {
      // R4: here c_j = c_{j-1} + 1.
      if (c[j] >= j) {
        const std::size_t out = c[j];
        c[j] = c[j - 1];
        c[j - 1] = j - 2;
        return exchange(out, j - 2);
      }
      ++j;
      try_decrease = false;
    } else {
      // R5: here c_{j-1} = j - 2.
      if (c[j] + 1 < c[j + 1]) {
        const std::size_t out = c[j - 1];
        c[j - 1] = c[j];
        ++c[j];
        return exchange(out, c[j]);
      }
      ++j;
      try_decrease = true;
    }
  }
  return false;
}

}  // namespace gpqubo
