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

#include <set>
#include <vector>

#include "doctest.h"
#include "gpqubo/combinations.hpp"
#include "gpqubo/errors.hpp"

using namespace gpqubo;

TEST_CASE("binomial") {
  CHECK(binomial(25, 7) == 480700);
  CHECK(binomial(36, 7) == 8347680);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);
}

TEST_CASE("revolving door visits every k-subset once, one exchange at a time") {
  for (std::size_t n = 1; n <= 11; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      RevolvingDoor door(n, k);
      std::set<std::vector<std::size_t>> seen;
      std::vector<std::size_t> prev(door.current().begin(), door.current().end());
      seen.insert(prev);
      while (door.next()) {
        std::vector<std::size_t> cur(door.current().begin(), door.current().end());
        REQUIRE(cur.size() == k);
        for (std::size_t i = 1; i < cur.size(); ++i) REQUIRE(cur[i - 1] < cur[i]);
        REQUIRE(cur.back() < n);
        // exactly one element swapped, and removed()/added() name it
        std::vector<std::size_t> expected = prev;
        std::erase(expected, door.removed());
        expected.push_back(door.added());
        std::sort(expected.begin(), expected.end());
        REQUIRE(expected == cur);
        REQUIRE(std::find(prev.begin(), prev.end(), door.removed()) != prev.end());
        REQUIRE(std::find(prev.begin(), prev.end(), door.added()) == prev.end());
        REQUIRE(seen.insert(cur).second);
        prev = std::move(cur);
      }
      CHECK(seen.size() == binomial(n, k));
    }
  }
  CHECK_THROWS_AS(RevolvingDoor(3, 4), InvalidInput);
}
