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

#ifndef GPQUBO_SOLVE_HPP_
#define GPQUBO_SOLVE_HPP_

// Minimizers for QuboInstance objectives, plus the exhaustive ground-truth
// minimizer of J itself.
//
// Exact solvers break ties toward the lexicographically smallest index set.
// Objective values within tie_tolerance() of each other count as ties, so
// symmetric grid positions resolve the same way regardless of the order in
// which rounding errors accumulate.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gpqubo/qubo.hpp"
#include "gpqubo/rng.hpp"
#include "gpqubo/types.hpp"

namespace gpqubo {

enum class SolveMethod { kGrayExact, kConstrainedExact, kAnnealing };

std::string_view to_string(SolveMethod m) noexcept;
// Accepts the report names (gray_exact, ...) and the CLI short forms
// (gray, constrained, anneal).
SolveMethod parse_solve_method(std::string_view name);

struct SolveReport {
  Selection best_selection;
  double best_value = 0.0;
  SolveMethod method = SolveMethod::kGrayExact;
  std::uint64_t evaluations = 0;
  std::optional<std::uint64_t> seed;
  std::chrono::duration<double, std::milli> wall_time{0};
  // Annealing only: best value seen after each sweep, restarts concatenated.
  std::vector<double> trajectory;
};

struct AnnealSchedule {
  double t_initial = 1.0;
  double t_final = 1e-3;
  double cooling = 0.995;    // temperature multiplier per sweep
  std::size_t sweeps = 0;    // 0: enough sweeps to cool from t_initial to t_final
  std::size_t restarts = 10;

  // t_initial = max |coefficient|, t_final = 1e-3 * median |coefficient|.
  static AnnealSchedule defaults_for(const QuboInstance& q);

  // Sweeps actually run.
  std::size_t effective_sweeps() const;
};

inline constexpr std::size_t kDefaultGrayCap = 26;
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Absolute slack under which two objective values are treated as equal.
double tie_tolerance(const QuboInstance& q);

// All 2^n assignments in Gray-code order, O(n) update per flip.
// Throws CapacityExceeded when n > cap.
SolveReport solve_exact_gray(const QuboInstance& q,
                             std::size_t cap = kDefaultGrayCap);

// Only the cardinality-K assignments, in revolving-door order with O(K)
// updates per exchange. Throws CapacityExceeded when C(n, K) > budget.
SolveReport solve_exact_constrained(const QuboInstance& q,
                                    std::uint64_t budget = kDefaultBudget);

// Single-flip Metropolis annealing with geometric cooling. Restart r uses
// seed + r; random initial assignment. Deterministic for a given seed.
SolveReport solve_anneal(const QuboInstance& q, const AnnealSchedule& schedule,
                         std::uint64_t seed);

// Exhaustive minimizer of J over all K-subsets of the domain.
// Throws CapacityExceeded when C(|X|, K) > budget.
Selection oracle_best_subset(const Domain& domain, const Hyperparams& h,
                             std::size_t K,
                             std::uint64_t budget = kDefaultBudget);

}  // namespace gpqubo

#endif  // GPQUBO_SOLVE_HPP_
