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

#include "gpqubo/baselines.hpp"

#include <limits>
#include <numeric>
#include <utility>

#include "gpqubo/errors.hpp"
#include "gpqubo/gp.hpp"

namespace gpqubo {

namespace {
void check_k(std::size_t K, std::size_t n) {
  if (K < 1 || K > n) throw InvalidInput("K must satisfy 1 <= K <= |X|");
}
}  // namespace

GreedyResult greedy_select(const Domain& domain, const Hyperparams& h,
                           std::size_t K) {
  const std::size_t n = domain.size();
  check_k(K, n);
  // Candidates within this band of the incumbent count as ties, which keeps
  // symmetric grid positions on the lowest index despite rounding noise.
  const double tolerance = 1e-12 * total_variance(Selection{}, domain, h);
  GreedyResult result;
  for (std::size_t step = 0; step < K; ++step) {
    double best_value = std::numeric_limits<double>::infinity();
    std::size_t best_index = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (result.selection.contains(i)) continue;
      const double value = total_variance(result.selection.with(i), domain, h);
      if (value < best_value - tolerance) {
        best_value = value;
        best_index = i;
      }
    }
    result.selection = result.selection.with(best_index);
    result.trajectory.push_back(best_value);
  }
  return result;
}

Selection random_select(const Domain& domain, std::size_t K, RngSeed seed) {
  const std::size_t n = domain.size();
  check_k(K, n);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < K; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(K);
  return Selection(std::move(pool));
}

}  // namespace gpqubo
