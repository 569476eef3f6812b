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

#include "gpqubo/solve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "gpqubo/combinations.hpp"
#include "gpqubo/errors.hpp"
#include "gpqubo/gp.hpp"

namespace gpqubo {

namespace {

using Clock = std::chrono::steady_clock;

// Symmetric n x n copy of the quadratic terms with a zero diagonal.
std::vector<double> dense_quadratic(const QuboInstance& q) {
  const std::size_t n = q.size();
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = q.quadratic(i, j);
      dense[i * n + j] = v;
      dense[j * n + i] = v;
    }
  }
  return dense;
}

std::vector<std::size_t> mask_indices(std::uint64_t mask) {
  std::vector<std::size_t> out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

// Running minimum with lexicographic tie-break inside a tolerance band.
class BestTracker {
 public:
  explicit BestTracker(double tolerance) : tolerance_(tolerance) {}

  template <typename MakeIndices>
  void offer(double value, MakeIndices&& make_indices) {
    if (!found_ || value < value_ - tolerance_) {
      value_ = value;
      indices_ = make_indices();
      found_ = true;
    } else if (value <= value_ + tolerance_) {
      auto candidate = make_indices();
      if (candidate < indices_) {
        value_ = value;
        indices_ = std::move(candidate);
      }
    }
  }

  std::vector<std::size_t> take() { return std::move(indices_); }

 private:
  double tolerance_;
  bool found_ = false;
  double value_ = 0.0;
  std::vector<std::size_t> indices_;
};

SolveReport finish(const QuboInstance& q, std::vector<std::size_t> indices,
                   SolveMethod method, std::uint64_t evaluations,
                   Clock::time_point start) {
  SolveReport report;
  report.best_selection = Selection(std::move(indices));
  report.best_value = evaluate(q, report.best_selection);
  report.method = method;
  report.evaluations = evaluations;
  report.wall_time = Clock::now() - start;
  return report;
}

// Cholesky of an m x m row-major SPD matrix, in place (lower triangle).
bool cholesky_in_place(std::vector<double>& a, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    double diag = a[j * m + j];
    for (std::size_t p = 0; p < j; ++p) diag -= a[j * m + p] * a[j * m + p];
    if (!(diag > 0.0)) return false;
    const double l = std::sqrt(diag);
    a[j * m + j] = l;
    for (std::size_t i = j + 1; i < m; ++i) {
      double v = a[i * m + j];
      for (std::size_t p = 0; p < j; ++p) v -= a[i * m + p] * a[j * m + p];
      a[i * m + j] = v / l;
    }
  }
  return true;
}

// In place X <- L^-1 X for m x m row-major X, L from cholesky_in_place.
void forward_solve(const std::vector<double>& l, std::vector<double>& x,
                   std::size_t m) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < i; ++p) {
      const double lip = l[i * m + p];
      for (std::size_t c = 0; c < m; ++c) x[i * m + c] -= lip * x[p * m + c];
    }
    const double inv = 1.0 / l[i * m + i];
    for (std::size_t c = 0; c < m; ++c) x[i * m + c] *= inv;
  }
}

}  // namespace

std::string_view to_string(SolveMethod m) noexcept {
  switch (m) {
    case SolveMethod::kGrayExact: return "gray_exact";
    case SolveMethod::kConstrainedExact: return "constrained_exact";
    case SolveMethod::kAnnealing: return "annealing";
  }
  return "unknown";
}

SolveMethod parse_solve_method(std::string_view name) {
  if (name == "gray" || name == "gray_exact") return SolveMethod::kGrayExact;
  if (name == "constrained" || name == "constrained_exact") {
    return SolveMethod::kConstrainedExact;
  }
  if (name == "anneal" || name == "annealing") return SolveMethod::kAnnealing;
  throw InvalidInput("unknown solver method '" + std::string(name) + "'");
}

AnnealSchedule AnnealSchedule::defaults_for(const QuboInstance& q) {
  std::vector<double> magnitudes;
  magnitudes.reserve(q.size() + q.quadratic().size());
  for (double a : q.linear()) magnitudes.push_back(std::abs(a));
  for (double b : q.quadratic().values()) magnitudes.push_back(std::abs(b));

  AnnealSchedule s;
  const double max_mag = *std::max_element(magnitudes.begin(), magnitudes.end());
  const auto mid = magnitudes.begin() + static_cast<std::ptrdiff_t>((magnitudes.size() - 1) / 2);
  std::nth_element(magnitudes.begin(), mid, magnitudes.end());
  s.t_initial = max_mag > 0.0 ? max_mag : 1.0;
  s.t_final = 1e-3 * (*mid > 0.0 ? *mid : s.t_initial);
  return s;
}

std::size_t AnnealSchedule::effective_sweeps() const {
  if (sweeps > 0) return sweeps;
  if (!(t_initial > t_final) || !(cooling > 0.0 && cooling < 1.0)) return 1;
  return static_cast<std::size_t>(
             std::ceil(std::log(t_final / t_initial) / std::log(cooling))) + 1;
}

double tie_tolerance(const QuboInstance& q) {
  double scale = 0.0;
  for (double a : q.linear()) scale += std::abs(a);
  for (double b : q.quadratic().values()) scale += std::abs(b);
  return 1e-12 * scale;
}

SolveReport solve_exact_gray(const QuboInstance& q, std::size_t cap) {
  const std::size_t n = q.size();
  if (n > cap || n > 63) {
    throw CapacityExceeded("gray enumeration over " + std::to_string(n) +
                           " variables exceeds cap " + std::to_string(cap) +
                           "; use the constrained or annealing solver");
  }
  const auto start = Clock::now();
  const auto dense = dense_quadratic(q);
  // field[i] = a_i + sum_{j selected} b_ij: the change from switching i on.
  std::vector<double> field(q.linear().begin(), q.linear().end());

  BestTracker best(tie_tolerance(q));
  std::uint64_t mask = 0;
  double value = 0.0;
  best.offer(value, [] { return std::vector<std::size_t>{}; });

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(step));
    const double* row = &dense[bit * n];
    if ((mask >> bit) & 1U) {
      value -= field[bit];
      for (std::size_t j = 0; j < n; ++j) field[j] -= row[j];
    } else {
      value += field[bit];
      for (std::size_t j = 0; j < n; ++j) field[j] += row[j];
    }
    mask ^= std::uint64_t{1} << bit;
    best.offer(value, [mask] { return mask_indices(mask); });
  }
  return finish(q, best.take(), SolveMethod::kGrayExact, total, start);
}

SolveReport solve_exact_constrained(const QuboInstance& q, std::uint64_t budget) {
  const std::size_t n = q.size();
  const std::size_t k = q.meta().K;
  if (k == 0 || k > n) {
    throw InvalidInput("constrained solve needs 1 <= K <= n");
  }
  const std::uint64_t count = binomial(n, k);
  if (count > budget) {
    throw CapacityExceeded("C(" + std::to_string(n) + ", " + std::to_string(k) +
                           ") = " + std::to_string(count) +
                           " exceeds budget " + std::to_string(budget));
  }
  const auto start = Clock::now();
  const auto dense = dense_quadratic(q);
  const auto linear = q.linear();

  RevolvingDoor door(n, k);
  auto current = door.current();
  double value = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    value += linear[current[a]];
    for (std::size_t b = a + 1; b < k; ++b) {
      value += dense[current[a] * n + current[b]];
    }
  }

  BestTracker best(tie_tolerance(q));
  auto snapshot = [&door] {
    const auto c = door.current();
    return std::vector<std::size_t>(c.begin(), c.end());
  };
  best.offer(value, snapshot);

  while (door.next()) {
    // S' = S - {out} + {in}:
    // delta = a_in - a_out + b_out,in + sum_{j in S'} (b_in,j - b_out,j).
    const std::size_t out = door.removed();
    const std::size_t in = door.added();
    const double* row_in = &dense[in * n];
    const double* row_out = &dense[out * n];
    double delta = linear[in] - linear[out] + row_out[in];
    for (std::size_t j : door.current()) delta += row_in[j] - row_out[j];
    value += delta;
    best.offer(value, snapshot);
  }
  return finish(q, best.take(), SolveMethod::kConstrainedExact, count, start);
}

SolveReport solve_anneal(const QuboInstance& q, const AnnealSchedule& schedule,
                         std::uint64_t seed) {
  const auto start = Clock::now();
  const std::size_t n = q.size();
  const auto dense = dense_quadratic(q);
  const auto linear = q.linear();
  const std::size_t sweeps = schedule.effective_sweeps();
  const std::size_t restarts = std::max<std::size_t>(1, schedule.restarts);

  BestTracker best(tie_tolerance(q));
  double global_best = std::numeric_limits<double>::infinity();
  std::vector<double> trajectory;
  trajectory.reserve(sweeps * restarts);
  std::uint64_t evaluations = 0;

  std::vector<char> state(n);
  std::vector<char> best_state(n);
  std::vector<double> field(n);
  for (std::size_t r = 0; r < restarts; ++r) {
    SplitMix64 rng(RngSeed{seed + r});
    for (std::size_t i = 0; i < n; ++i) state[i] = static_cast<char>(rng.next() & 1U);

    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      field[i] = linear[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (state[j]) field[i] += dense[i * n + j];
      }
      if (state[i]) value += linear[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (state[i] && state[j]) value += dense[i * n + j];
      }
    }
    double run_best = value;
    best_state = state;

    double temperature = schedule.t_initial;
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
      for (std::size_t flip = 0; flip < n; ++flip) {
        const auto i = static_cast<std::size_t>(rng.uniform_below(n));
        const double delta = state[i] ? -field[i] : field[i];
        ++evaluations;
        if (delta > 0.0 && !(rng.uniform01() < std::exp(-delta / temperature))) {
          continue;
        }
        const double sign = state[i] ? -1.0 : 1.0;
        const double* row = &dense[i * n];
        for (std::size_t j = 0; j < n; ++j) field[j] += sign * row[j];
        state[i] = static_cast<char>(!state[i]);
        value += delta;
        if (value < run_best) {
          run_best = value;
          best_state = state;
        }
      }
      temperature = std::max(schedule.t_final, temperature * schedule.cooling);
      // Incremental values drift by rounding, so clamp to keep the curve monotone.
      const double so_far = trajectory.empty() ? run_best : trajectory.back();
      trajectory.push_back(std::min({so_far, global_best, run_best}));
    }

    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (best_state[i]) chosen.push_back(i);
    }
    const double exact = evaluate(q, Selection(chosen));
    global_best = std::min(global_best, exact);
    best.offer(exact, [&chosen] { return chosen; });
  }

  SolveReport report = finish(q, best.take(), SolveMethod::kAnnealing, evaluations, start);
  report.seed = seed;
  report.trajectory = std::move(trajectory);
  return report;
}

Selection oracle_best_subset(const Domain& domain, const Hyperparams& h,
                             std::size_t K, std::uint64_t budget) {
  const std::size_t n = domain.size();
  if (K == 0 || K > n) throw InvalidInput("oracle: K must satisfy 1 <= K <= |X|");
  const std::uint64_t count = binomial(n, K);
  if (count > budget) {
    throw CapacityExceeded("oracle: C(" + std::to_string(n) + ", " +
                           std::to_string(K) + ") = " + std::to_string(count) +
                           " exceeds budget " + std::to_string(budget));
  }

  // J(S) = sum_x k(x,x) - tr((C_SS + sigma_n^2 I)^-1 (C C)_SS), C the full
  // kernel matrix, since sum_x k_x k_x^T = (C C)_SS.
  std::vector<double> kernel(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kernel_eval(domain[i], domain[j], h);
      kernel[i * n + j] = v;
      kernel[j * n + i] = v;
    }
  }
  std::vector<double> gram_sq(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = 0.0;
      for (std::size_t x = 0; x < n; ++x) v += kernel[i * n + x] * kernel[x * n + j];
      gram_sq[i * n + j] = v;
      gram_sq[j * n + i] = v;
    }
  }
  const double prior_total = total_variance(Selection{}, domain, h);
  const double noise = h.noise_variance();

  std::vector<double> factor(K * K);
  std::vector<double> work(K * K);
  auto objective = [&](std::span<const std::size_t> s) {
    for (std::size_t a = 0; a < K; ++a) {
      for (std::size_t b = 0; b < K; ++b) {
        factor[a * K + b] = kernel[s[a] * n + s[b]];
        work[a * K + b] = gram_sq[s[a] * n + s[b]];
      }
      factor[a * K + a] += noise;
    }
    if (!cholesky_in_place(factor, K)) {
      return total_variance(Selection(std::vector<std::size_t>(s.begin(), s.end())),
                            domain, h);
    }
    // work <- L^-1 M, then (L^-1 (L^-1 M)^T) = L^-1 M L^-T.
    forward_solve(factor, work, K);
    for (std::size_t a = 0; a < K; ++a) {
      for (std::size_t b = a + 1; b < K; ++b) std::swap(work[a * K + b], work[b * K + a]);
    }
    forward_solve(factor, work, K);
    double trace = 0.0;
    for (std::size_t a = 0; a < K; ++a) trace += work[a * K + a];
    return prior_total - trace;
  };

  RevolvingDoor door(n, K);
  BestTracker best(1e-12 * prior_total);
  auto snapshot = [&door] {
    const auto c = door.current();
    return std::vector<std::size_t>(c.begin(), c.end());
  };
  do {
    best.offer(objective(door.current()), snapshot);
  } while (door.next());
  return Selection(best.take());
}

}  // namespace gpqubo
