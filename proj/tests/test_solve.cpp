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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpqubo/baselines.hpp"
#include "gpqubo/combinations.hpp"
#include "gpqubo/errors.hpp"
#include "gpqubo/gp.hpp"
#include "gpqubo/harness.hpp"
#include "gpqubo/solve.hpp"
#include "oracles.hpp"

using namespace gpqubo;
using gpqubo::testing::brute_force_qubo;

namespace {

// Arbitrary QUBO with uniform coefficients in [-1, 1] (not a GP instance).
QuboInstance random_qubo(SplitMix64& rng, std::size_t n, std::size_t K) {
  std::vector<double> linear(n);
  for (auto& a : linear) a = 2.0 * rng.uniform01() - 1.0;
  UpperTriangle quad(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) quad.at(i, j) = 2.0 * rng.uniform01() - 1.0;
  }
  QuboMeta meta;
  meta.K = K;
  return QuboInstance(std::move(linear), std::move(quad), std::move(meta));
}

QuboInstance random_compiled(SplitMix64& rng, std::size_t min_n, std::size_t max_n) {
  auto s = gpqubo::testing::random_setup(rng, 4, min_n, max_n);
  const std::size_t n = s.domain.size();
  const std::size_t K = 2 + rng.uniform_below(n - 3);
  return build(s.domain, s.h, K, s.w);
}

}  // namespace

TEST_CASE("gray exact: small cases") {
  SUBCASE("two variables, one must win") {
    UpperTriangle quad(2);
    quad.at(0, 1) = 3.0;
    QuboMeta meta;
    meta.K = 1;
    const QuboInstance q({-1.0, -1.0}, quad, meta);
    const auto r = solve_exact_gray(q);
    CHECK(r.best_value == -1.0);
    CHECK(r.best_selection == Selection{0});
    CHECK(r.evaluations == 4);
    CHECK(r.method == SolveMethod::kGrayExact);
  }
  SUBCASE("constraint-only instance picks a K-set at base energy") {
    const double B = 2.5;
    const auto q = constraint_only_instance(8, 3, B);
    const auto r = solve_exact_gray(q);
    CHECK(r.best_selection.size() == 3);
    CHECK(r.best_value == doctest::Approx(-B * 9.0 / 2.0).epsilon(1e-12));
    CHECK(r.best_selection == Selection{0, 1, 2});
    const auto c = solve_exact_constrained(q);
    CHECK(c.best_selection == Selection{0, 1, 2});
    CHECK(c.best_value == doctest::Approx(-B * 9.0 / 2.0).epsilon(1e-12));
  }
  SUBCASE("capacity") {
    SplitMix64 rng(RngSeed{1});
    const auto q = random_qubo(rng, 12, 3);
    CHECK_THROWS_AS(solve_exact_gray(q, 10), CapacityExceeded);
    CHECK_THROWS_AS(solve_exact_constrained(q, 219), CapacityExceeded);
    CHECK_NOTHROW(solve_exact_constrained(q, 220));
  }
}

TEST_CASE("gray exact matches full re-evaluation on random 12-variable instances") {
  SplitMix64 rng(RngSeed{12});
  for (int t = 0; t < 20; ++t) {
    const auto q = random_qubo(rng, 12, 4);
    const auto r = solve_exact_gray(q);
    const auto oracle = brute_force_qubo(q, tie_tolerance(q));
    CHECK(r.best_value == doctest::Approx(oracle.value).epsilon(1e-9));
    CHECK(std::vector<std::size_t>(r.best_selection.begin(), r.best_selection.end()) ==
          oracle.indices);
    CHECK(r.best_value == evaluate(q, r.best_selection));
  }
}

TEST_CASE("incremental updates stay consistent with evaluate") {
  // Drive random flip sequences through the same field-update rule the
  // annealer and Gray solver use and compare with from-scratch evaluation.
  SplitMix64 rng(RngSeed{99});
  const auto q = random_compiled(rng, 9, 16);
  const std::size_t n = q.size();
  std::vector<bool> on(n, false);
  std::vector<double> field(q.linear().begin(), q.linear().end());
  double value = 0.0;
  for (int step = 0; step < 5000; ++step) {
    const std::size_t i = rng.uniform_below(n);
    value += on[i] ? -field[i] : field[i];
    const double sign = on[i] ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) field[j] += sign * q.quadratic(i, j);
    }
    on[i] = !on[i];
    if (step % 97 == 0) {
      std::vector<std::size_t> idx;
      for (std::size_t j = 0; j < n; ++j) {
        if (on[j]) idx.push_back(j);
      }
      const double exact = evaluate(q, Selection(idx));
      CHECK(std::abs(value - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("cross-solver agreement on compiled instances (n <= 16)") {
  SplitMix64 rng(RngSeed{4242});
  for (int t = 0; t < 25; ++t) {
    const auto q = random_compiled(rng, 5, 16);
    const auto gray = solve_exact_gray(q);
    const auto constrained = solve_exact_constrained(q);
    const auto oracle = brute_force_qubo(q, tie_tolerance(q));
    CHECK(gray.best_selection.size() == q.meta().K);
    CHECK(gray.best_value == doctest::Approx(oracle.value).epsilon(1e-9));
    CHECK(constrained.best_value == doctest::Approx(oracle.value).epsilon(1e-9));
    CHECK(std::vector<std::size_t>(gray.best_selection.begin(), gray.best_selection.end()) ==
          oracle.indices);
    CHECK(constrained.best_selection == gray.best_selection);
    CHECK(constrained.evaluations == binomial(q.size(), q.meta().K));
  }
}

TEST_CASE("constrained enumeration counts") {
  const Hyperparams h(1.0, 1.0, 0.1);
  const auto q25 = build(make_grid(5, 5, 1.0), h, 7, 1.0);
  const auto r25 = solve_exact_constrained(q25);
  CHECK(r25.evaluations == 480700);
  CHECK(r25.best_selection.size() == 7);
  CHECK(binomial(36, 7) == 8347680);
}

TEST_CASE("anneal") {
  SplitMix64 rng(RngSeed{31});
  const auto q = random_compiled(rng, 9, 16);
  const auto schedule = AnnealSchedule::defaults_for(q);
  CHECK(schedule.t_initial > schedule.t_final);
  CHECK(schedule.effective_sweeps() > 1);

  const auto a = solve_anneal(q, schedule, 17);
  const auto b = solve_anneal(q, schedule, 17);
  CHECK(a.best_selection == b.best_selection);
  CHECK(a.best_value == b.best_value);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.trajectory == b.trajectory);
  CHECK(a.seed == 17);
  CHECK(a.best_value == evaluate(q, a.best_selection));

  const auto exact = solve_exact_gray(q);
  CHECK(a.best_value >= exact.best_value - tie_tolerance(q));
  CHECK(std::is_sorted(a.trajectory.rbegin(), a.trajectory.rend()));
  CHECK(a.trajectory.size() == schedule.effective_sweeps() * schedule.restarts);

  SUBCASE("single restarts mostly reach the optimum") {
    SplitMix64 pick(RngSeed{32});
    int hits = 0;
    int runs = 0;
    for (int t = 0; t < 10; ++t) {
      const auto inst = random_compiled(pick, 9, 16);
      AnnealSchedule one = AnnealSchedule::defaults_for(inst);
      one.restarts = 1;
      const auto opt = solve_exact_gray(inst).best_value;
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = solve_anneal(inst, one, seed);
        CHECK(r.best_value >= opt - tie_tolerance(inst));
        if (r.best_value <= opt + tie_tolerance(inst)) ++hits;
        ++runs;
      }
    }
    CHECK(hits >= 0.95 * runs);
  }
}

TEST_CASE("oracle_best_subset") {
  const Hyperparams h(1.0, 1.0, 0.1);
  SUBCASE("3x3, K = 2 matches a naive double loop") {
    const Domain grid = make_grid(3, 3, 1.0);
    double best = 1e300;
    Selection best_sel;
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = i + 1; j < 9; ++j) {
        const double v = gpqubo::testing::naive_total_variance({i, j}, grid, h);
        if (v < best - 1e-12) {
          best = v;
          best_sel = Selection{i, j};
        }
      }
    }
    CHECK(oracle_best_subset(grid, h, 2) == best_sel);
  }
  SUBCASE("K = 1 coincides with the first greedy pick") {
    for (const auto& g : {make_grid(3, 3, 1.0), make_grid(4, 5, 1.0), make_grid(2, 6, 0.7)}) {
      CHECK(oracle_best_subset(g, h, 1) == greedy_select(g, h, 1).selection);
    }
  }
  SUBCASE("never worse than greedy, matches naive enumeration") {
    SplitMix64 rng(RngSeed{6});
    for (int t = 0; t < 15; ++t) {
      auto s = gpqubo::testing::random_setup(rng, 4, 4, 12);
      const std::size_t K = 1 + rng.uniform_below(3);
      const Selection o = oracle_best_subset(s.domain, s.h, K);
      CHECK(o.size() == K);
      const double jo = total_variance(o, s.domain, s.h);
      CHECK(jo <= total_variance(greedy_select(s.domain, s.h, K).selection, s.domain, s.h) + 1e-9);
      gpqubo::testing::MinimumCollector c;
      gpqubo::testing::for_each_subset(s.domain.size(), K, [&](const std::vector<std::size_t>& sub) {
        c.add(gpqubo::testing::naive_total_variance(sub, s.domain, s.h), sub);
      });
      const double j0 = total_variance(Selection{}, s.domain, s.h);
      const auto naive = c.result(1e-12 * j0);
      CHECK(jo == doctest::Approx(naive.value).epsilon(1e-9));
      CHECK(std::vector<std::size_t>(o.begin(), o.end()) == naive.indices);
    }
  }
  CHECK_THROWS_AS(oracle_best_subset(make_grid(6, 6, 1.0), h, 7, 1000), CapacityExceeded);
  CHECK_THROWS_AS(oracle_best_subset(make_grid(2, 2, 1.0), h, 0), InvalidInput);
}

TEST_CASE("solve method names") {
  CHECK(parse_solve_method("gray") == SolveMethod::kGrayExact);
  CHECK(parse_solve_method("constrained") == SolveMethod::kConstrainedExact);
  CHECK(parse_solve_method("anneal") == SolveMethod::kAnnealing);
  CHECK(parse_solve_method(to_string(SolveMethod::kConstrainedExact)) ==
        SolveMethod::kConstrainedExact);
  CHECK_THROWS_AS(parse_solve_method("cplex"), InvalidInput);
}

TEST_CASE("full 2^25 enumeration on the 5x5 grid keeps K = 3") {
  const auto q = build(make_grid(5, 5, 1.0), Hyperparams(1.0, 1.0, 0.1), 3, 1.0);
  const auto gray = solve_exact_gray(q);
  CHECK(gray.evaluations == (std::uint64_t{1} << 25));
  CHECK(gray.best_selection.size() == 3);
  CHECK(gray.best_selection == solve_exact_constrained(q).best_selection);
}
