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

#include <array>
#include <cmath>

#include "doctest.h"
#include "gpqubo/rng.hpp"

using namespace gpqubo;

TEST_CASE("splitmix64 reference outputs") {
  // Reference stream for seed 0 from the public-domain splitmix64.c.
  SplitMix64 rng(RngSeed{0});
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("determinism and stream separation") {
  SplitMix64 a(RngSeed{5});
  SplitMix64 b(RngSeed{5});
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(RngSeed{1}, 0) != derive_seed(RngSeed{1}, 1));
  CHECK(derive_seed(RngSeed{1}, 3) == derive_seed(RngSeed{1}, 3));
}

TEST_CASE("uniform_below stays in range and is roughly flat") {
  SplitMix64 rng(RngSeed{77});
  std::array<int, 7> counts{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto v = rng.uniform_below(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  for (int c : counts) CHECK(std::abs(c - draws / 7) < 500);
  CHECK(rng.uniform_below(1) == 0);
}

TEST_CASE("uniform01 in [0, 1)") {
  SplitMix64 rng(RngSeed{3});
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.005);
}
