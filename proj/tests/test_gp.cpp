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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpqubo/errors.hpp"
#include "gpqubo/baselines.hpp"
#include "gpqubo/gp.hpp"
#include "gpqubo/harness.hpp"
#include "oracles.hpp"

using namespace gpqubo;
using gpqubo::testing::naive_posterior_mean;
using gpqubo::testing::naive_posterior_variance;

namespace {
const Hyperparams kUnit(1.0, 1.0, 0.1);

std::vector<Selection> all_subsets(std::size_t n) {
  std::vector<Selection> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    out.emplace_back(gpqubo::testing::mask_to_indices(mask, n));
  }
  return out;
}

bool is_subset(const Selection& a, const Selection& b) {
  for (auto i : a) {
    if (!b.contains(i)) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("hyperparams and domain validation") {
  CHECK_THROWS_AS(Hyperparams(0.0, 1.0, 0.1), InvalidInput);
  CHECK_THROWS_AS(Hyperparams(1.0, 0.0, 0.1), InvalidInput);
  CHECK_THROWS_AS(Hyperparams(1.0, 1.0, -0.1), InvalidInput);
  CHECK_NOTHROW(Hyperparams(1.0, 1.0, 0.0));
  CHECK_THROWS_AS(Domain({{0.0, 0.0}, {0.0, 0.0}}), InvalidInput);
  CHECK_THROWS_AS(Domain({{0.0, 0.0}, {1.0}}), InvalidInput);
  CHECK_THROWS_AS(Domain(std::vector<Point>{}), InvalidInput);
  CHECK_THROWS_AS(Selection({1, 1}), InvalidInput);
  CHECK_THROWS_AS(Selection({3}).check_within(3), InvalidInput);
}

TEST_CASE("kernel_eval") {
  const std::vector<double> a{0.3, -1.2};
  SUBCASE("identical points give sigma_f^2") {
    CHECK(kernel_eval(a, a, Hyperparams(0.7, 1.3, 0.0)) == doctest::Approx(1.69).epsilon(1e-15));
  }
  SUBCASE("distance sqrt(2)") {
    const std::vector<double> b{1.3, -0.2};
    CHECK(kernel_eval(a, b, Hyperparams(1.0, 1.0, 0.0)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(kernel_eval(a, b, Hyperparams(1.0, 1.0, 0.0)) == doctest::Approx(0.367879).epsilon(1e-6));
  }
  SUBCASE("decays with distance") {
    const std::vector<double> far{20.0, 20.0};
    CHECK(kernel_eval(a, far, Hyperparams(0.5, 1.0, 0.0)) < 1e-12);
  }
  SUBCASE("symmetry and range") {
    SplitMix64 rng(RngSeed{11});
    for (int t = 0; t < 200; ++t) {
      const std::vector<double> p{rng.uniform01() * 5, rng.uniform01() * 5, rng.uniform01()};
      const std::vector<double> q{rng.uniform01() * 5, rng.uniform01() * 5, rng.uniform01()};
      const Hyperparams h(0.2 + rng.uniform01() * 3, 0.1 + rng.uniform01() * 2, 0.0);
      const double v = kernel_eval(p, q, h);
      CHECK(v == kernel_eval(q, p, h));
      CHECK(v >= 0.0);
      CHECK(v <= h.signal_variance());
    }
  }
  SUBCASE("dimension mismatch") {
    const std::vector<double> b{1.0};
    CHECK_THROWS_AS(kernel_eval(a, b, kUnit), InvalidInput);
  }
}

TEST_CASE("posterior_variance") {
  const Domain grid = make_grid(5, 5, 1.0);
  SUBCASE("no samples gives the prior") {
    CHECK(posterior_variance(grid[7], Selection{}, grid, Hyperparams(1.0, 1.7, 0.1)) ==
          doctest::Approx(1.7 * 1.7).epsilon(1e-15));
  }
  SUBCASE("single sample at x*") {
    const Domain single({{0.5, 0.5}});
    const double expected = 1.0 - 1.0 / (1.0 + 0.01);
    CHECK(posterior_variance(single[0], Selection{0}, single, kUnit) ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(expected == doctest::Approx(0.00990099).epsilon(1e-6));
  }
  SUBCASE("two samples against a hand 2x2 inverse") {
    // Samples (1,1) and (3,2); test point (2,2).
    const Selection s{6, 17};
    const double k11 = 1.0 + 0.01;
    const double k12 = std::exp(-5.0 / 2.0);
    const double det = k11 * k11 - k12 * k12;
    const double ka = std::exp(-2.0 / 2.0);
    const double kb = std::exp(-1.0 / 2.0);
    const double quad = (k11 * ka * ka - 2.0 * k12 * ka * kb + k11 * kb * kb) / det;
    const double v = posterior_variance(grid[12], s, grid, kUnit);
    CHECK(std::abs(v - (1.0 - quad)) < 1e-10);
    // Frozen with an independent numpy dense-inverse computation.
    CHECK(std::abs(v - 0.534603064642049) < 1e-10);
    CHECK(std::abs(posterior_variance(grid[4], s, grid, kUnit) - 0.9999541389928848) < 1e-10);
  }
  SUBCASE("explicit-inverse oracle on random instances") {
    SplitMix64 rng(RngSeed{2024});
    for (int t = 0; t < 200; ++t) {
      auto setup = gpqubo::testing::random_setup(rng, 6, 2, 36);
      const std::size_t m = 1 + rng.uniform_below(std::min<std::size_t>(8, setup.domain.size()));
      const Selection s = random_select(setup.domain, m, RngSeed{rng.next()});
      const std::vector<std::size_t> idx(s.begin(), s.end());
      const std::size_t x = rng.uniform_below(setup.domain.size());
      const double fast = posterior_variance(setup.domain[x], s, setup.domain, setup.h);
      const double slow = naive_posterior_variance(setup.domain[x], idx, setup.domain, setup.h);
      CHECK(std::abs(fast - std::max(0.0, slow)) < 1e-10);
      CHECK(fast >= 0.0);
      CHECK(fast <= setup.h.signal_variance() + 1e-9);
    }
  }
  SUBCASE("sigma_n = 0 at a sampled point") {
    const Hyperparams noiseless(1.0, 1.0, 0.0);
    const double v = posterior_variance(grid[3], Selection{3, 8}, grid, noiseless);
    CHECK(v >= 0.0);
    CHECK(v < 1e-9);
  }
  SUBCASE("jitter rescues an ill-conditioned noiseless gram") {
    const Domain close({{0.0}, {1e-9}, {1.0}});
    const double v = posterior_variance(close[2], Selection{0, 1}, close, Hyperparams(1.0, 1.0, 0.0));
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  SUBCASE("bad input") {
    CHECK_THROWS_AS(posterior_variance(std::vector<double>{1.0}, Selection{}, grid, kUnit),
                    InvalidInput);
    CHECK_THROWS_AS(posterior_variance(grid[0], Selection{25}, grid, kUnit), InvalidInput);
  }
}

TEST_CASE("posterior_mean") {
  const Domain grid = make_grid(5, 5, 1.0);
  CHECK(posterior_mean(grid[3], Selection{}, std::vector<double>{}, grid, kUnit) == 0.0);

  const Hyperparams noiseless(1.0, 1.0, 0.0);
  CHECK(posterior_mean(grid[9], Selection{9}, std::vector<double>{2.5}, grid, noiseless) ==
        doctest::Approx(2.5).epsilon(1e-14));

  const std::vector<double> y{0.7, -1.3};
  const double m = posterior_mean(grid[12], Selection{6, 17}, y, grid, kUnit);
  CHECK(std::abs(m - naive_posterior_mean(grid[12], {6, 17}, y, grid, kUnit)) < 1e-10);
  CHECK(std::abs(m - (-0.5248650658744262)) < 1e-10);

  SplitMix64 rng(RngSeed{5});
  for (int t = 0; t < 50; ++t) {
    auto setup = gpqubo::testing::random_setup(rng, 5, 2, 25);
    const Selection s = random_select(setup.domain, 2, RngSeed{rng.next()});
    const std::vector<double> obs{rng.uniform01() * 4 - 2, rng.uniform01() * 4 - 2};
    const std::size_t x = rng.uniform_below(setup.domain.size());
    const std::vector<std::size_t> idx(s.begin(), s.end());
    CHECK(std::abs(posterior_mean(setup.domain[x], s, obs, setup.domain, setup.h) -
                   naive_posterior_mean(setup.domain[x], idx, obs, setup.domain, setup.h)) <
          1e-10);
  }

  CHECK_THROWS_AS(posterior_mean(grid[0], Selection{1, 2}, std::vector<double>{1.0}, grid, kUnit),
                  InvalidInput);
}

TEST_CASE("total_variance") {
  CHECK(total_variance(Selection{}, make_grid(5, 5, 1.0), kUnit) == 25.0);
  CHECK(total_variance(Selection{}, make_grid(6, 6, 1.0), Hyperparams(1.0, 2.0, 0.1)) == 144.0);

  SUBCASE("equals the sum of per-point posterior variances") {
    const Domain grid = make_grid(4, 5, 1.0);
    const Hyperparams h(1.3, 1.4, 0.3);
    const Selection s{0, 7, 13};
    double sum = 0.0;
    for (std::size_t x = 0; x < grid.size(); ++x) sum += posterior_variance(grid[x], s, grid, h);
    CHECK(std::abs(total_variance(s, grid, h) - sum) < 1e-12);
    CHECK(std::abs(total_variance(s, grid, h) -
                   gpqubo::testing::naive_total_variance({0, 7, 13}, grid, h)) < 1e-10);
  }

  SUBCASE("order independence") {
    const Domain grid = make_grid(4, 4, 1.0);
    CHECK(total_variance(Selection(std::vector<std::size_t>{9, 2, 14}), grid, kUnit) ==
          total_variance(Selection(std::vector<std::size_t>{14, 9, 2}), grid, kUnit));
  }

  SUBCASE("monotone under inclusion on a 3x3 grid (exhaustive)") {
    const Domain grid = make_grid(3, 3, 1.0);
    for (const Hyperparams& h : {kUnit, Hyperparams(0.6, 2.0, 0.5), Hyperparams(2.5, 1.0, 0.05)}) {
      const auto subsets = all_subsets(grid.size());
      std::vector<double> j;
      for (const auto& s : subsets) j.push_back(total_variance(s, grid, h));
      std::size_t pairs = 0;
      for (std::size_t a = 0; a < subsets.size(); ++a) {
        for (std::size_t b = 0; b < subsets.size(); ++b) {
          if (!is_subset(subsets[a], subsets[b])) continue;
          ++pairs;
          CHECK(j[b] <= j[a] + 1e-9);
        }
      }
      CHECK(pairs == 19683);  // 3^9 nested pairs
    }
  }
}

TEST_CASE("variance_reduction") {
  const Domain single({{1.0, 2.0}});
  CHECK(variance_reduction(single[0], Selection{}, single, kUnit) == 0.0);
  CHECK(variance_reduction(single[0], Selection{0}, single, kUnit) ==
        doctest::Approx(1.0 / 1.01).epsilon(1e-13));
  CHECK(1.0 / 1.01 == doctest::Approx(0.990099).epsilon(1e-6));

  SUBCASE("diminishing returns fails for the squared-exponential kernel") {
    // Observing (0,1) first makes (0,2) far more informative about (0,0):
    // F_x({v}) = 0.0181... but F_x({b,v}) - F_x({b}) = 0.0811... (mpmath,
    // 40 digits), so per-point variance reduction is not submodular here.
    const Domain grid = make_grid(3, 3, 1.0);
    const Hyperparams h(1.0, 1.0, 0.1);
    const Point& x = grid[0];
    const double gain_alone = variance_reduction(x, Selection{2}, grid, h);
    const double gain_after =
        variance_reduction(x, Selection{1, 2}, grid, h) - variance_reduction(x, Selection{1}, grid, h);
    CHECK(gain_alone == doctest::Approx(0.01813429592943978247).epsilon(1e-10));
    CHECK(gain_after == doctest::Approx(0.08113817904511109244).epsilon(1e-10));
    CHECK(gain_after > gain_alone);
  }
}
