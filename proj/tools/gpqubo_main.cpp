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

// gpqubo command line: grid, build-qubo, solve, greedy, random, oracle,
// experiment, verify. Results go to stdout (or -o) as JSON; failures print
// {"error": kind, "message": ...} on stderr and exit nonzero.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gpqubo/baselines.hpp"
#include "gpqubo/errors.hpp"
#include "gpqubo/gp.hpp"
#include "gpqubo/harness.hpp"
#include "gpqubo/io.hpp"
#include "gpqubo/qubo.hpp"
#include "gpqubo/solve.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Domain from --domain FILE or from --grid RxC@S.
struct DomainArgs {
  std::string domain_file;
  std::string grid = "5x5@1";

  void add(CLI::App* app) {
    app->add_option("--domain", domain_file, "domain JSON (as written by `grid`)");
    app->add_option("--grid", grid, "grid label RxC@S, used when --domain is absent")
        ->capture_default_str();
  }
  std::pair<gpqubo::Domain, std::optional<gpqubo::GridShape>> load() const {
    if (!domain_file.empty()) {
      const auto j = gpqubo::read_json_file(domain_file);
      std::optional<gpqubo::GridShape> shape;
      if (j.contains("grid")) shape = gpqubo::grid_from_json(j.at("grid"));
      return {gpqubo::domain_from_json(j), shape};
    }
    const auto shape = gpqubo::parse_grid_label(grid);
    return {gpqubo::make_grid(shape), shape};
  }
};

struct HyperArgs {
  double l = 1.0;
  double sf = 1.0;
  double sn = 0.1;

  void add(CLI::App* app) {
    app->add_option("-l,--length-scale", l)->capture_default_str();
    app->add_option("--sigma-f", sf)->capture_default_str();
    app->add_option("--sigma-n", sn)->capture_default_str();
  }
  gpqubo::Hyperparams get() const { return {l, sf, sn}; }
};

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    gpqubo::write_json_file(out, j);
  }
}

json selection_result(const gpqubo::Selection& s, const gpqubo::Domain& d,
                      const gpqubo::Hyperparams& h) {
  return {{"selection", gpqubo::to_json(s)},
          {"remaining_variance", gpqubo::total_variance(s, d, h)}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw gpqubo::InvalidInput("cannot write " + path.string());
  f << text;
}

void fail(std::string_view kind, std::string_view message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor placement for Gaussian processes as a QUBO"};
  app.require_subcommand(1);
  std::string out;

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "emit a rectangular lattice domain");
  std::size_t rows = 5, cols = 5;
  double spacing = 1.0;
  grid_cmd->add_option("--rows", rows)->capture_default_str();
  grid_cmd->add_option("--cols", cols)->capture_default_str();
  grid_cmd->add_option("--spacing", spacing)->capture_default_str();
  grid_cmd->add_option("-o,--out", out, "output file (default stdout)");

  // build-qubo
  auto* build_cmd = app.add_subcommand("build-qubo", "compile a domain into a QUBO instance");
  DomainArgs build_domain;
  HyperArgs build_h;
  std::size_t K = 3;
  double w = 1.0;
  build_domain.add(build_cmd);
  build_h.add(build_cmd);
  build_cmd->add_option("-K,--K", K, "number of sensors")->capture_default_str();
  build_cmd->add_option("-w,--w", w, "weight of the pairwise terms, in (0, 1]")
      ->capture_default_str();
  build_cmd->add_option("-o,--out", out);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve a QUBO instance");
  std::string instance_file;
  std::string method = "constrained";
  std::uint64_t seed = 0;
  std::uint64_t budget = gpqubo::kDefaultBudget;
  std::size_t cap = gpqubo::kDefaultGrayCap;
  std::size_t restarts = 20;
  solve_cmd->add_option("instance", instance_file, "instance JSON")->required();
  solve_cmd->add_option("--method", method, "gray | constrained | anneal")
      ->capture_default_str();
  solve_cmd->add_option("--seed", seed, "annealing seed")->capture_default_str();
  solve_cmd->add_option("--budget", budget, "constrained enumeration budget")
      ->capture_default_str();
  solve_cmd->add_option("--cap", cap, "largest n for gray enumeration")->capture_default_str();
  solve_cmd->add_option("--restarts", restarts, "annealing restarts")->capture_default_str();
  solve_cmd->add_option("-o,--out", out);

  // greedy / random / oracle
  DomainArgs base_domain;
  HyperArgs base_h;
  std::size_t base_k = 3;
  auto* greedy_cmd = app.add_subcommand("greedy", "greedy forward selection");
  auto* random_cmd = app.add_subcommand("random", "uniform random K-subset");
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive minimum of the remaining variance");
  for (auto* cmd : {greedy_cmd, random_cmd, oracle_cmd}) {
    base_domain.add(cmd);
    base_h.add(cmd);
    cmd->add_option("-K,--K", base_k)->capture_default_str();
    cmd->add_option("-o,--out", out);
  }
  random_cmd->add_option("--seed", seed)->capture_default_str();
  oracle_cmd->add_option("--budget", budget)->capture_default_str();

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run the sensor placement protocol");
  std::string config_file;
  std::string exp_grid;
  std::string out_dir;
  std::size_t threads = 0;
  bool timing = false;
  exp_cmd->add_option("--config", config_file, "config JSON (default protocol when absent)");
  exp_cmd->add_option("--grid", exp_grid, "override the grid, e.g. 6x6@1");
  exp_cmd->add_option("--out", out_dir, "output directory (overrides config.output)");
  exp_cmd->add_option("--threads", threads, "worker threads, 0 = hardware concurrency")
      ->capture_default_str();
  exp_cmd->add_flag("--timing", timing, "fill wall_time_ms (output no longer reproducible)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "recompute remaining_variance for a CSV");
  std::string csv_file;
  verify_cmd->add_option("csv", csv_file, "records CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("invalid_input", e.what());
    return 2;
  }

  try {
    if (*grid_cmd) {
      const gpqubo::GridShape shape{rows, cols, spacing};
      emit(gpqubo::domain_to_json(gpqubo::make_grid(shape), shape), out);
    } else if (*build_cmd) {
      const auto [domain, shape] = build_domain.load();
      const auto table = gpqubo::VarianceTable::compute(domain, build_h.get());
      emit(gpqubo::to_json(table.compile(K, w, shape)), out);
    } else if (*solve_cmd) {
      const auto q = gpqubo::instance_from_json(gpqubo::read_json_file(instance_file));
      gpqubo::SolveReport report;
      switch (gpqubo::parse_solve_method(method)) {
        case gpqubo::SolveMethod::kGrayExact:
          report = gpqubo::solve_exact_gray(q, cap);
          break;
        case gpqubo::SolveMethod::kConstrainedExact:
          report = gpqubo::solve_exact_constrained(q, budget);
          break;
        case gpqubo::SolveMethod::kAnnealing: {
          auto schedule = gpqubo::AnnealSchedule::defaults_for(q);
          schedule.restarts = restarts;
          report = gpqubo::solve_anneal(q, schedule, seed);
          break;
        }
      }
      emit(gpqubo::to_json(report), out);
    } else if (*greedy_cmd) {
      const auto [domain, shape] = base_domain.load();
      const auto h = base_h.get();
      const auto r = gpqubo::greedy_select(domain, h, base_k);
      auto j = selection_result(r.selection, domain, h);
      j["trajectory"] = r.trajectory;
      emit(j, out);
    } else if (*random_cmd) {
      const auto [domain, shape] = base_domain.load();
      const auto h = base_h.get();
      auto j = selection_result(gpqubo::random_select(domain, base_k, gpqubo::RngSeed{seed}),
                                domain, h);
      j["seed"] = seed;
      emit(j, out);
    } else if (*oracle_cmd) {
      const auto [domain, shape] = base_domain.load();
      const auto h = base_h.get();
      emit(selection_result(gpqubo::oracle_best_subset(domain, h, base_k, budget), domain, h),
           out);
    } else if (*exp_cmd) {
      auto config = config_file.empty()
                        ? gpqubo::ExperimentConfig::protocol_default()
                        : gpqubo::config_from_json(gpqubo::read_json_file(config_file));
      if (!exp_grid.empty()) {
        const auto shape = gpqubo::parse_grid_label(exp_grid);
        if (config_file.empty()) {
          config = gpqubo::ExperimentConfig::protocol_default(shape);
        } else {
          config.grid = shape;
        }
      }
      if (!out_dir.empty()) config.output = out_dir;
      if (timing) config.record_timing = true;
      config.validate();

      const auto start = std::chrono::steady_clock::now();
      const auto result = gpqubo::run_experiment(config, threads);
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

      const fs::path dir = config.output;
      fs::create_directories(dir);
      std::ostringstream csv;
      gpqubo::write_csv(csv, result.records);
      write_text(dir / "records.csv", csv.str());
      std::ostringstream tsv;
      const auto summary = gpqubo::aggregate(result.records);
      gpqubo::write_summary_tsv(tsv, summary);
      write_text(dir / "summary.tsv", tsv.str());
      gpqubo::write_json_file(dir / "config.json", gpqubo::to_json(config));

      json skipped = json::array();
      for (const auto& s : result.skipped) {
        skipped.push_back({{"hyperparams", gpqubo::to_json(s.hyperparams)},
                           {"K", s.K},
                           {"method", gpqubo::to_string(s.method)},
                           {"w", s.w ? json(*s.w) : json(nullptr)},
                           {"reason", s.reason}});
      }
      std::cout << json{{"records", result.records.size()},
                        {"expected_records", gpqubo::protocol_record_count(config)},
                        {"skipped", skipped},
                        {"output", dir.string()},
                        {"seconds", elapsed.count()}}
                       .dump(2)
                << '\n';
    } else if (*verify_cmd) {
      std::ifstream in(csv_file, std::ios::binary);
      if (!in) throw gpqubo::InvalidInput("cannot open " + csv_file);
      const auto records = gpqubo::read_csv(in);
      const auto report = gpqubo::verify_records(records);
      std::cout << json{{"rows_checked", report.rows_checked},
                        {"ok", report.ok()},
                        {"failures", report.failures}}
                       .dump(2)
                << '\n';
      if (!report.ok()) return 1;
    }
  } catch (const gpqubo::Error& e) {
    fail(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    fail("internal", e.what());
    return 1;
  }
  return 0;
}
