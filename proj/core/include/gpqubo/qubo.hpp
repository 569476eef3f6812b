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

#ifndef GPQUBO_QUBO_HPP_
#define GPQUBO_QUBO_HPP_

// Compilation of the K-location variance minimization problem into a QUBO
//
//   O(z) = sum_i a_i z_i + sum_{i<j} b_ij z_i z_j
//
// over a complete graph with one node per domain point.
//
// Node values start from the single-point variance change
//   alpha_i = J({i}) - J({})                                   (< 0)
// and edge values from the pairwise redundancy
//   beta_ij = w * (J({i,j}) - J({i}) - J({j}) + J({}))         (> 0)
// with 0 < w <= 1 shrinking the redundancy to account for interactions
// between three or more samples.
//
// The cardinality constraint adds A = -B*K + B/2 to every node and B to every
// edge. Selecting n nodes then contributes B*n^2/2 - B*K*n, minimized at
// n = K, growing by B*l^2/2 at n = K +- l. Choosing
//   B > max(2 |min alpha|, 2 K max beta)
// makes that penalty dominate any alpha/beta gain from leaving the feasible
// set, so every global minimizer selects exactly K nodes.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gpqubo/types.hpp"

namespace gpqubo {

// Multiplier applied to the bound core so the strict inequality on B holds
// with a fixed, documented margin.
inline constexpr double kPenaltyMargin = 1.01;

// Strictly upper-triangular part of a symmetric n x n matrix, packed row
// by row over pairs i < j.
class UpperTriangle {
 public:
  UpperTriangle() = default;
  explicit UpperTriangle(std::size_t n, double fill = 0.0);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }

  // Symmetric access; i != j.
  double operator()(std::size_t i, std::size_t j) const {
    return values_[offset(i, j)];
  }
  double& at(std::size_t i, std::size_t j) { return values_[offset(i, j)]; }

  std::span<const double> values() const noexcept { return values_; }

  std::size_t offset(std::size_t i, std::size_t j) const;

  friend bool operator==(const UpperTriangle&, const UpperTriangle&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

// Calibration data kept alongside the final coefficients.
struct QuboMeta {
  std::size_t K = 0;
  double B = 0.0;
  double w = 1.0;
  std::vector<double> alpha;  // raw node values
  UpperTriangle beta;         // raw edge values, already multiplied by w

  friend bool operator==(const QuboMeta&, const QuboMeta&) = default;
};

// Where an instance came from; written into the JSON form.
struct GeneratorInfo {
  std::optional<GridShape> grid;
  std::optional<Hyperparams> hyperparams;

  friend bool operator==(const GeneratorInfo&, const GeneratorInfo&) = default;
};

class QuboInstance {
 public:
  QuboInstance(std::vector<double> linear, UpperTriangle quadratic,
               QuboMeta meta, GeneratorInfo generator = {});

  std::size_t size() const noexcept { return linear_.size(); }
  std::span<const double> linear() const noexcept { return linear_; }
  double linear(std::size_t i) const { return linear_[i]; }
  const UpperTriangle& quadratic() const noexcept { return quadratic_; }
  double quadratic(std::size_t i, std::size_t j) const { return quadratic_(i, j); }
  const QuboMeta& meta() const noexcept { return meta_; }
  const GeneratorInfo& generator() const noexcept { return generator_; }

  friend bool operator==(const QuboInstance&, const QuboInstance&) = default;

 private:
  std::vector<double> linear_;
  UpperTriangle quadratic_;
  QuboMeta meta_;
  GeneratorInfo generator_;
};

// alpha_i = J({i}) - J({}).
double alpha(std::size_t i, const Domain& domain, const Hyperparams& h);

// beta_ij = w * (J({i,j}) - J({i}) - J({j}) + J({})), i != j, 0 < w <= 1.
//
// Evaluated through the closed form of the 2x2 posterior: with
// d = sigma_f^2 + sigma_n^2, c = k(i, j), P = sum_x k(i,x) k(j,x) and
// Q_i = sum_x k(i,x)^2,
//   beta_ij = w * c (2 d P - c (Q_i + Q_j)) / (d (d^2 - c^2)).
// Differencing four J values of size ~|X| sigma_f^2 loses every significant
// digit once the pair is a few length scales apart.
double beta(std::size_t i, std::size_t j, double w, const Domain& domain,
            const Hyperparams& h);

// B = kPenaltyMargin * max(2 |min alphas|, 2 K max betas). Requires all
// alphas < 0, all betas > 0 and 1 <= K < alphas.size().
double penalty_bound(std::span<const double> alphas,
                     std::span<const double> betas, std::size_t K);

// Constraint-only energy of selecting n nodes: B n^2 / 2 - B K n.
double constraint_energy(std::size_t n_selected, std::size_t K, double B);

// Objective O(z) for the assignment given by s.
double evaluate(const QuboInstance& q, const Selection& s);

// alpha_i and unweighted beta_ij for one (domain, hyperparams); compiling a
// whole w sweep from one table avoids recomputing GP quantities.
class VarianceTable {
 public:
  static VarianceTable compute(const Domain& domain, const Hyperparams& h);

  std::size_t size() const noexcept { return alpha_.size(); }
  std::span<const double> alpha() const noexcept { return alpha_; }
  const UpperTriangle& redundancy() const noexcept { return redundancy_; }
  const Hyperparams& hyperparams() const noexcept { return hyperparams_; }

  // Requires 2 <= K <= size() - 1 and 0 < w <= 1.
  QuboInstance compile(std::size_t K, double w,
                       std::optional<GridShape> grid = std::nullopt) const;

 private:
  VarianceTable(std::vector<double> alpha, UpperTriangle redundancy,
                Hyperparams h);

  std::vector<double> alpha_;
  UpperTriangle redundancy_;
  Hyperparams hyperparams_;
};

// The complete instance for (domain, h, K, w).
QuboInstance build(const Domain& domain, const Hyperparams& h, std::size_t K,
                   double w);

// Instance with every alpha and beta zeroed: only the cardinality penalty
// with the given B remains. Used to check the constraint in isolation.
QuboInstance constraint_only_instance(std::size_t n, std::size_t K, double B);

}  // namespace gpqubo

#endif  // GPQUBO_QUBO_HPP_
