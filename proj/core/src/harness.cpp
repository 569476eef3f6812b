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

#include "gpqubo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "gpqubo/baselines.hpp"
#include "gpqubo/combinations.hpp"
#include "gpqubo/errors.hpp"
#include "gpqubo/gp.hpp"
#include "gpqubo/io.hpp"
#include "gpqubo/qubo.hpp"

namespace gpqubo {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs body(0..count-1) on up to `threads` workers. Exceptions are collected
// per index and the first one (by index) is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(threads, count);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> number_list(const json& j, const char* key,
                                 const std::vector<double>& fallback) {
  return j.contains(key) ? j.at(key).get<std::vector<double>>() : fallback;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_number(std::string_view field, const char* what) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidInput(std::string("cannot parse ") + what + " from '" +
                       std::string(field) + "'");
  }
  return value;
}

// Everything known about one (grid, combo, K) cell.
struct Cell {
  std::optional<double> greedy;
  std::optional<double> oracle;
  std::vector<double> random;
  std::map<double, double> qubo;  // w -> J
};

using CellKey = std::tuple<std::string, double, double, double, std::size_t>;

std::map<CellKey, Cell> group_cells(std::span<const RunRecord> records) {
  std::map<CellKey, Cell> cells;
  for (const auto& r : records) {
    auto& cell = cells[{r.grid, r.length_scale, r.sigma_f, r.sigma_n, r.K}];
    switch (r.method) {
      case RecordMethod::kGreedy: cell.greedy = r.remaining_variance; break;
      case RecordMethod::kOracle: cell.oracle = r.remaining_variance; break;
      case RecordMethod::kRandom: cell.random.push_back(r.remaining_variance); break;
      case RecordMethod::kQubo:
        if (!r.w) throw InvalidInput("qubo_w record without w");
        cell.qubo[*r.w] = r.remaining_variance;
        break;
    }
  }
  return cells;
}

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

std::optional<double> min_value(const std::map<double, double>& m) {
  if (m.empty()) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [w, j] : m) best = std::min(best, j);
  return best;
}

}  // namespace

Domain make_grid(std::size_t rows, std::size_t cols, double spacing) {
  if (rows == 0 || cols == 0) throw InvalidInput("grid dimensions must be >= 1");
  if (!std::isfinite(spacing) || spacing <= 0.0) {
    throw InvalidInput("grid spacing must be finite and > 0");
  }
  std::vector<Point> points;
  points.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      points.push_back({static_cast<double>(r) * spacing, static_cast<double>(c) * spacing});
    }
  }
  return Domain(std::move(points));
}

std::string grid_label(const GridShape& g) {
  return std::to_string(g.rows) + "x" + std::to_string(g.cols) + "@" +
         format_double(g.spacing);
}

GridShape parse_grid_label(std::string_view label) {
  const auto x = label.find('x');
  const auto at = label.find('@');
  if (x == std::string_view::npos || at == std::string_view::npos || at < x) {
    throw InvalidInput("grid label must look like RxC@S, got '" + std::string(label) + "'");
  }
  return GridShape{parse_number<std::size_t>(label.substr(0, x), "grid rows"),
                   parse_number<std::size_t>(label.substr(x + 1, at - x - 1), "grid cols"),
                   parse_number<double>(label.substr(at + 1), "grid spacing")};
}

std::vector<Hyperparams> HyperparamGrid::combinations() const {
  std::vector<Hyperparams> out;
  for (double l : length_scales) {
    for (double sf : sigma_fs) {
      for (double sn : sigma_ns) out.emplace_back(l, sf, sn);
    }
  }
  return out;
}

std::vector<double> default_w_sweep() {
  std::vector<double> w;
  // Integer numerators keep every value the nearest double to its decimal.
  for (int hundredths = 10; hundredths <= 100; hundredths += 5) {
    w.push_back(hundredths / 100.0);
  }
  return w;
}

ExperimentConfig ExperimentConfig::protocol_default(GridShape grid) {
  ExperimentConfig c;
  c.grid = grid;
  c.hyperparams_grid = {{0.8, 1.6}, {1.0, 2.0}, {0.1, 0.5}};
  c.w_values = default_w_sweep();
  return c;
}

void ExperimentConfig::validate() const {
  if (grid.rows == 0 || grid.cols == 0) throw InvalidInput("grid dimensions must be >= 1");
  if (!(grid.spacing > 0.0)) throw InvalidInput("grid spacing must be > 0");
  if (hyperparams_grid.length_scales.empty() || hyperparams_grid.sigma_fs.empty() ||
      hyperparams_grid.sigma_ns.empty()) {
    throw InvalidInput("every hyperparameter list needs at least one value");
  }
  (void)hyperparams_grid.combinations();
  const std::size_t n = grid.rows * grid.cols;
  if (k_min < 2 || k_min > k_max || k_max + 1 > n) {
    throw InvalidInput("K range must satisfy 2 <= min <= max <= |X| - 1");
  }
  if (w_values.empty()) throw InvalidInput("w_values must not be empty");
  for (double w : w_values) {
    if (!(w > 0.0 && w <= 1.0)) throw InvalidInput("w values must lie in (0, 1]");
  }
}

json to_json(const ExperimentConfig& c) {
  json solver = {{"method", to_string(c.solver.method)},
                 {"budget", c.solver.budget},
                 {"gray_cap", c.solver.gray_cap},
                 {"seed", c.solver.seed},
                 {"schedule", nullptr}};
  if (c.solver.schedule) {
    const auto& s = *c.solver.schedule;
    solver["schedule"] = {{"t_initial", s.t_initial}, {"t_final", s.t_final},
                          {"cooling", s.cooling},     {"sweeps", s.sweeps},
                          {"restarts", s.restarts}};
  }
  return {{"grid", to_json(c.grid)},
          {"hyperparams_grid",
           {{"length_scales", c.hyperparams_grid.length_scales},
            {"sigma_fs", c.hyperparams_grid.sigma_fs},
            {"sigma_ns", c.hyperparams_grid.sigma_ns}}},
          {"K_range", {{"min", c.k_min}, {"max", c.k_max}}},
          {"w_values", c.w_values},
          {"random_trials", c.random_trials},
          {"random_seed", c.random_seed},
          {"solver", solver},
          {"oracle_budget", c.oracle_budget},
          {"record_timing", c.record_timing},
          {"output", c.output}};
}

ExperimentConfig config_from_json(const json& j) {
  try {
    ExperimentConfig c = ExperimentConfig::protocol_default(
        j.contains("grid") ? grid_from_json(j.at("grid")) : GridShape{5, 5, 1.0});
    if (j.contains("hyperparams_grid")) {
      const auto& hg = j.at("hyperparams_grid");
      c.hyperparams_grid.length_scales =
          number_list(hg, "length_scales", c.hyperparams_grid.length_scales);
      c.hyperparams_grid.sigma_fs = number_list(hg, "sigma_fs", c.hyperparams_grid.sigma_fs);
      c.hyperparams_grid.sigma_ns = number_list(hg, "sigma_ns", c.hyperparams_grid.sigma_ns);
    }
    if (j.contains("K_range")) {
      c.k_min = j.at("K_range").value("min", c.k_min);
      c.k_max = j.at("K_range").value("max", c.k_max);
    }
    c.w_values = number_list(j, "w_values", c.w_values);
    c.random_trials = j.value("random_trials", c.random_trials);
    c.random_seed = j.value("random_seed", c.random_seed);
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      if (s.contains("method")) c.solver.method = parse_solve_method(s.at("method").get<std::string>());
      c.solver.budget = s.value("budget", c.solver.budget);
      c.solver.gray_cap = s.value("gray_cap", c.solver.gray_cap);
      c.solver.seed = s.value("seed", c.solver.seed);
      if (s.contains("schedule") && !s.at("schedule").is_null()) {
        const auto& js = s.at("schedule");
        AnnealSchedule sched;
        sched.t_initial = js.at("t_initial").get<double>();
        sched.t_final = js.at("t_final").get<double>();
        sched.cooling = js.value("cooling", sched.cooling);
        sched.sweeps = js.value("sweeps", sched.sweeps);
        sched.restarts = js.value("restarts", sched.restarts);
        c.solver.schedule = sched;
      }
    }
    c.oracle_budget = j.value("oracle_budget", c.oracle_budget);
    c.record_timing = j.value("record_timing", c.record_timing);
    c.output = j.value("output", c.output);
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("experiment config: ") + e.what());
  }
}

std::string_view to_string(RecordMethod m) noexcept {
  switch (m) {
    case RecordMethod::kQubo: return "qubo_w";
    case RecordMethod::kGreedy: return "greedy";
    case RecordMethod::kRandom: return "random";
    case RecordMethod::kOracle: return "oracle";
  }
  return "unknown";
}

RecordMethod parse_record_method(std::string_view name) {
  if (name == "qubo_w") return RecordMethod::kQubo;
  if (name == "greedy") return RecordMethod::kGreedy;
  if (name == "random") return RecordMethod::kRandom;
  if (name == "oracle") return RecordMethod::kOracle;
  throw InvalidInput("unknown record method '" + std::string(name) + "'");
}

bool record_key_less(const RunRecord& a, const RunRecord& b) {
  auto key = [](const RunRecord& r) {
    return std::tuple(std::string_view(r.grid), r.length_scale, r.sigma_f, r.sigma_n, r.K,
                      to_string(r.method), r.w, r.seed);
  };
  const auto ka = key(a);
  const auto kb = key(b);
  if (ka != kb) return ka < kb;
  return a.selection < b.selection;
}

std::size_t protocol_record_count(const ExperimentConfig& config) {
  const std::size_t n = config.grid.rows * config.grid.cols;
  const std::size_t combos = config.hyperparams_grid.length_scales.size() *
                             config.hyperparams_grid.sigma_fs.size() *
                             config.hyperparams_grid.sigma_ns.size();
  std::size_t per_combo = 0;
  for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
    per_combo += 1 + config.random_trials + config.w_values.size();
    if (binomial(n, k) <= config.oracle_budget) per_combo += 1;
  }
  return combos * per_combo;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t threads) {
  config.validate();
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  const Domain domain = make_grid(config.grid);
  const std::string label = grid_label(config.grid);
  const auto combos = config.hyperparams_grid.combinations();
  const std::size_t n = domain.size();

  // Shared, read-only alpha/beta tables, one per hyperparameter combination.
  std::vector<std::optional<VarianceTable>> tables(combos.size());
  parallel_for(combos.size(), threads, [&](std::size_t c) {
    tables[c] = VarianceTable::compute(domain, combos[c]);
  });

  struct Task {
    std::size_t combo;
    std::size_t K;
    RecordMethod method;
    std::size_t w_index = 0;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < combos.size(); ++c) {
    for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
      tasks.push_back({c, k, RecordMethod::kGreedy});
      tasks.push_back({c, k, RecordMethod::kRandom});
      if (binomial(n, k) <= config.oracle_budget) tasks.push_back({c, k, RecordMethod::kOracle});
      for (std::size_t w = 0; w < config.w_values.size(); ++w) {
        tasks.push_back({c, k, RecordMethod::kQubo, w});
      }
    }
  }

  struct TaskOutput {
    std::vector<RunRecord> records;
    std::optional<SkippedCell> skipped;
  };
  std::vector<TaskOutput> outputs(tasks.size());

  parallel_for(tasks.size(), threads, [&](std::size_t t) {
    const Task& task = tasks[t];
    const Hyperparams& h = combos[task.combo];
    auto record = [&](Selection selection, Clock::time_point start) {
      RunRecord r;
      r.grid = label;
      r.n_points = n;
      r.length_scale = h.length_scale();
      r.sigma_f = h.sigma_f();
      r.sigma_n = h.sigma_n();
      r.K = task.K;
      r.method = task.method;
      r.remaining_variance = total_variance(selection, domain, h);
      r.selection = std::move(selection);
      if (config.record_timing) r.wall_time_ms = elapsed_ms(start);
      return r;
    };
    auto& out = outputs[t];
    const auto start = Clock::now();
    try {
      switch (task.method) {
        case RecordMethod::kGreedy:
          out.records.push_back(record(greedy_select(domain, h, task.K).selection, start));
          break;
        case RecordMethod::kOracle:
          out.records.push_back(
              record(oracle_best_subset(domain, h, task.K, config.oracle_budget), start));
          break;
        case RecordMethod::kRandom:
          for (std::size_t trial = 0; trial < config.random_trials; ++trial) {
            const auto trial_start = Clock::now();
            const std::uint64_t seed = config.random_seed + trial;
            auto r = record(random_select(domain, task.K, RngSeed{seed}), trial_start);
            r.seed = seed;
            out.records.push_back(std::move(r));
          }
          break;
        case RecordMethod::kQubo: {
          const double w = config.w_values[task.w_index];
          const auto q = tables[task.combo]->compile(task.K, w, config.grid);
          SolveReport report;
          switch (config.solver.method) {
            case SolveMethod::kGrayExact:
              report = solve_exact_gray(q, config.solver.gray_cap);
              break;
            case SolveMethod::kConstrainedExact:
              report = solve_exact_constrained(q, config.solver.budget);
              break;
            case SolveMethod::kAnnealing:
              report = solve_anneal(
                  q, config.solver.schedule.value_or(AnnealSchedule::defaults_for(q)),
                  config.solver.seed);
              break;
          }
          auto r = record(std::move(report.best_selection), start);
          r.w = w;
          r.seed = report.seed;
          out.records.push_back(std::move(r));
          break;
        }
      }
    } catch (const CapacityExceeded& e) {
      std::optional<double> w;
      if (task.method == RecordMethod::kQubo) w = config.w_values[task.w_index];
      out.skipped = SkippedCell{h, task.K, task.method, w, e.what()};
    }
  });

  ExperimentResult result;
  for (auto& out : outputs) {
    for (auto& r : out.records) result.records.push_back(std::move(r));
    if (out.skipped) result.skipped.push_back(std::move(*out.skipped));
  }
  std::sort(result.records.begin(), result.records.end(), record_key_less);
  return result;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw InvalidInput("cannot format double");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.grid << ',' << r.n_points << ',' << format_double(r.length_scale) << ','
        << format_double(r.sigma_f) << ',' << format_double(r.sigma_n) << ',' << r.K << ','
        << to_string(r.method) << ',';
    if (r.w) out << format_double(*r.w);
    out << ',';
    if (r.seed) out << *r.seed;
    out << ',' << format_double(r.remaining_variance) << ',';
    bool first = true;
    for (std::size_t i : r.selection) {
      if (!first) out << ';';
      out << i;
      first = false;
    }
    out << ',';
    if (r.wall_time_ms) out << format_double(*r.wall_time_ms);
    out << '\n';
  }
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw InvalidInput("CSV header does not match the record schema");
  }
  std::vector<RunRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 12) {
      throw InvalidInput("CSV line " + std::to_string(line_no) + ": expected 12 fields");
    }
    RunRecord r;
    r.grid = std::string(f[0]);
    r.n_points = parse_number<std::size_t>(f[1], "n_points");
    r.length_scale = parse_number<double>(f[2], "length_scale");
    r.sigma_f = parse_number<double>(f[3], "sigma_f");
    r.sigma_n = parse_number<double>(f[4], "sigma_n");
    r.K = parse_number<std::size_t>(f[5], "K");
    r.method = parse_record_method(f[6]);
    if (!f[7].empty()) r.w = parse_number<double>(f[7], "w");
    if (!f[8].empty()) r.seed = parse_number<std::uint64_t>(f[8], "seed");
    r.remaining_variance = parse_number<double>(f[9], "remaining_variance");
    std::vector<std::size_t> indices;
    if (!f[10].empty()) {
      for (auto part : split(f[10], ';')) indices.push_back(parse_number<std::size_t>(part, "selection"));
    }
    r.selection = Selection(std::move(indices));
    if (!f[11].empty()) r.wall_time_ms = parse_number<double>(f[11], "wall_time_ms");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<SummaryRow> aggregate(std::span<const RunRecord> records) {
  if (records.empty()) throw InvalidInput("aggregate: no records");
  using CurveKey = std::tuple<std::string, std::string, std::optional<double>, std::size_t>;
  std::map<CurveKey, std::pair<double, std::size_t>> sums;
  auto add = [&](const CellKey& cell, std::string curve, std::optional<double> w, double v) {
    auto& [sum, count] = sums[{std::get<0>(cell), std::move(curve), w, std::get<4>(cell)}];
    sum += v;
    ++count;
  };
  for (const auto& [key, cell] : group_cells(records)) {
    if (cell.greedy) add(key, "greedy", std::nullopt, *cell.greedy);
    if (cell.oracle) add(key, "oracle", std::nullopt, *cell.oracle);
    if (!cell.random.empty()) add(key, "random", std::nullopt, mean(cell.random));
    for (const auto& [w, j] : cell.qubo) add(key, "qubo_w", w, j);
    if (auto best = min_value(cell.qubo)) add(key, "qubo_best", std::nullopt, *best);
  }
  std::vector<SummaryRow> rows;
  rows.reserve(sums.size());
  for (const auto& [key, acc] : sums) {
    SummaryRow row;
    std::tie(row.grid, row.curve, row.w, row.K) = key;
    row.mean_remaining_variance = acc.first / static_cast<double>(acc.second);
    row.ln_mean_remaining_variance = std::log(row.mean_remaining_variance);
    row.combos = acc.second;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary_tsv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "grid\tcurve\tw\tK\tmean_remaining_variance\tln_mean_remaining_variance\tcombos\n";
  for (const auto& r : rows) {
    out << r.grid << '\t' << r.curve << '\t';
    if (r.w) out << format_double(*r.w);
    out << '\t' << r.K << '\t' << format_double(r.mean_remaining_variance) << '\t'
        << format_double(r.ln_mean_remaining_variance) << '\t' << r.combos << '\n';
  }
}

std::vector<CellComparison> compare_cells(std::span<const RunRecord> records) {
  std::vector<CellComparison> out;
  for (const auto& [key, cell] : group_cells(records)) {
    CellComparison c;
    std::tie(c.grid, c.length_scale, c.sigma_f, c.sigma_n, c.K) = key;
    c.greedy = cell.greedy;
    c.oracle = cell.oracle;
    if (!cell.random.empty()) c.random_mean = mean(cell.random);
    if (!cell.qubo.empty()) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [w, j] : cell.qubo) {
        if (j < best) {
          best = j;
          c.best_w = w;
        }
      }
      c.qubo_best = best;
      if (auto it = cell.qubo.find(1.0); it != cell.qubo.end()) c.qubo_standard = it->second;
    }
    out.push_back(std::move(c));
  }
  return out;
}

VerifyReport verify_records(std::span<const RunRecord> records) {
  VerifyReport report;
  std::map<std::string, Domain> domains;
  std::size_t row = 0;
  for (const auto& r : records) {
    ++row;
    auto fail = [&](const std::string& why) {
      report.failures.push_back("row " + std::to_string(row) + ": " + why);
    };
    try {
      auto it = domains.find(r.grid);
      if (it == domains.end()) {
        it = domains.emplace(r.grid, make_grid(parse_grid_label(r.grid))).first;
      }
      const Domain& domain = it->second;
      if (domain.size() != r.n_points) {
        fail("n_points does not match grid " + r.grid);
        continue;
      }
      if (r.selection.size() != r.K) fail("selection size differs from K");
      const double j = total_variance(r.selection, domain, r.hyperparams());
      if (std::abs(j - r.remaining_variance) > 1e-9 * std::max(1.0, std::abs(j))) {
        std::ostringstream msg;
        msg << "remaining_variance " << format_double(r.remaining_variance)
            << " but recomputed J = " << format_double(j);
        fail(msg.str());
      }
    } catch (const Error& e) {
      fail(e.what());
    }
    ++report.rows_checked;
  }
  return report;
}

}  // namespace gpqubo
