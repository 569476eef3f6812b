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

#ifndef GPQUBO_HARNESS_HPP_
#define GPQUBO_HARNESS_HPP_

// Grid experiments comparing the QUBO surrogate (swept over w) against
// greedy forward selection, uniform random selection and, where the search
// space is within budget, the exhaustive optimum of J.
//
// Records are sorted by their key fields before they are returned, so the
// CSV output does not depend on the thread count.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpqubo/solve.hpp"
#include "gpqubo/types.hpp"

namespace gpqubo {

// Row-major rows x cols lattice, point (r, c) = (r * spacing, c * spacing).
Domain make_grid(std::size_t rows, std::size_t cols, double spacing);
inline Domain make_grid(const GridShape& g) { return make_grid(g.rows, g.cols, g.spacing); }

// "5x5@1" <-> GridShape{5, 5, 1.0}.
std::string grid_label(const GridShape& g);
GridShape parse_grid_label(std::string_view label);

struct HyperparamGrid {
  std::vector<double> length_scales;
  std::vector<double> sigma_fs;
  std::vector<double> sigma_ns;

  // Cartesian product, length scale outermost.
  std::vector<Hyperparams> combinations() const;
};

struct SolverConfig {
  SolveMethod method = SolveMethod::kConstrainedExact;
  std::uint64_t budget = kDefaultBudget;    // constrained solver
  std::size_t gray_cap = kDefaultGrayCap;   // gray solver
  std::optional<AnnealSchedule> schedule;   // annealing; per-instance defaults if unset
  std::uint64_t seed = 0;                   // annealing
};

struct ExperimentConfig {
  GridShape grid{5, 5, 1.0};
  HyperparamGrid hyperparams_grid;
  std::size_t k_min = 2;
  std::size_t k_max = 7;
  std::vector<double> w_values;
  std::size_t random_trials = 100;
  std::uint64_t random_seed = 0;   // trial t uses seed random_seed + t
  SolverConfig solver;
  std::uint64_t oracle_budget = kDefaultBudget;  // oracle rows only when C(n,K) fits
  bool record_timing = false;      // false leaves wall_time_ms empty
  std::string output = "results";

  // 8 combinations {0.8, 1.6} x {1, 2} x {0.1, 0.5}, K = 2..7, the 19-value
  // w sweep, 100 random trials, constrained exact solver.
  static ExperimentConfig protocol_default(GridShape grid = {5, 5, 1.0});

  // Throws InvalidInput.
  void validate() const;
};

// 0.10, 0.15, ..., 1.00 (19 values).
std::vector<double> default_w_sweep();

nlohmann::json to_json(const ExperimentConfig& c);
// Missing fields take their protocol_default() values.
ExperimentConfig config_from_json(const nlohmann::json& j);

enum class RecordMethod { kQubo, kGreedy, kRandom, kOracle };
std::string_view to_string(RecordMethod m) noexcept;
RecordMethod parse_record_method(std::string_view name);

struct RunRecord {
  std::string grid;
  std::size_t n_points = 0;
  double length_scale = 0.0;
  double sigma_f = 0.0;
  double sigma_n = 0.0;
  std::size_t K = 0;
  RecordMethod method = RecordMethod::kGreedy;
  std::optional<double> w;
  std::optional<std::uint64_t> seed;
  double remaining_variance = 0.0;
  Selection selection;
  std::optional<double> wall_time_ms;

  Hyperparams hyperparams() const { return {length_scale, sigma_f, sigma_n}; }
  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

// Canonical ordering used for emitted records.
bool record_key_less(const RunRecord& a, const RunRecord& b);

struct SkippedCell {
  Hyperparams hyperparams;
  std::size_t K;
  RecordMethod method;
  std::optional<double> w;
  std::string reason;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<SkippedCell> skipped;
};

// threads == 0 uses std::thread::hardware_concurrency().
ExperimentResult run_experiment(const ExperimentConfig& config,
                                std::size_t threads = 1);

// Records a complete run emits: per (combo, K), 1 greedy + random_trials +
// |w_values| QUBO + 1 oracle when C(|X|, K) <= oracle_budget.
std::size_t protocol_record_count(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "grid,n_points,length_scale,sigma_f,sigma_n,K,method,w,seed,"
    "remaining_variance,selection,wall_time_ms";

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

void write_csv(std::ostream& out, std::span<const RunRecord> records);
std::vector<RunRecord> read_csv(std::istream& in);

// One row per (grid, curve, w, K). Curves: greedy, oracle, random, qubo_w
// (one per w), qubo_best (per-combo minimum over w). Random is averaged over
// seeds within each combo first, then every curve over combos.
struct SummaryRow {
  std::string grid;
  std::string curve;
  std::optional<double> w;
  std::size_t K = 0;
  double mean_remaining_variance = 0.0;
  double ln_mean_remaining_variance = 0.0;
  std::size_t combos = 0;
};

// Throws InvalidInput on empty input.
std::vector<SummaryRow> aggregate(std::span<const RunRecord> records);
void write_summary_tsv(std::ostream& out, std::span<const SummaryRow> rows);

// Per (grid, combo, K) view used for the QUBO vs. baseline comparison.
struct CellComparison {
  std::string grid;
  double length_scale = 0.0;
  double sigma_f = 0.0;
  double sigma_n = 0.0;
  std::size_t K = 0;
  std::optional<double> greedy;
  std::optional<double> qubo_best;
  std::optional<double> best_w;
  std::optional<double> qubo_standard;  // w = 1
  std::optional<double> random_mean;
  std::optional<double> oracle;
};
std::vector<CellComparison> compare_cells(std::span<const RunRecord> records);

struct VerifyReport {
  std::size_t rows_checked = 0;
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

// Recomputes J from each record's selection (tolerance 1e-9, relative above
// 1) and checks |selection| = K.
VerifyReport verify_records(std::span<const RunRecord> records);

}  // namespace gpqubo

#endif  // GPQUBO_HARNESS_HPP_
