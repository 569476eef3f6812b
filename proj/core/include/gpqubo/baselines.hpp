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

#ifndef GPQUBO_BASELINES_HPP_
#define GPQUBO_BASELINES_HPP_

#include <cstddef>
#include <vector>

#include "gpqubo/rng.hpp"
#include "gpqubo/types.hpp"

namespace gpqubo {

struct GreedyResult {
  Selection selection;
  // trajectory[s] = J after step s + 1.
  std::vector<double> trajectory;
};

// Forward selection: K times, add the point whose inclusion gives the
// smallest J (ties to the lowest index). 1 <= K <= |X|.
GreedyResult greedy_select(const Domain& domain, const Hyperparams& h,
                           std::size_t K);

// Uniform K-subset without replacement (partial Fisher-Yates on SplitMix64),
// returned sorted. 1 <= K <= |X|.
Selection random_select(const Domain& domain, std::size_t K, RngSeed seed);

}  // namespace gpqubo

#endif  // GPQUBO_BASELINES_HPP_
