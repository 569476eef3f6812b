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

#include "gpqubo/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpqubo/errors.hpp"
#include "gpqubo/gp.hpp"

namespace gpqubo {

namespace {

// Row-major kernel matrix over the whole domain.
std::vector<double> kernel_matrix(const Domain& domain, const Hyperparams& h) {
  const std::size_t n = domain.size();
  std::vector<double> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kernel_eval(domain[i], domain[j], h);
      c[i * n + j] = v;
      c[j * n + i] = v;
    }
  }
  return c;
}

double literal_redundancy(std::size_t i, std::size_t j, const Domain& domain,
                          const Hyperparams& h) {
  const double j0 = total_variance(Selection{}, domain, h);
  const double ji = total_variance(Selection{i}, domain, h);
  const double jj = total_variance(Selection{j}, domain, h);
  const double jij = total_variance(Selection{i, j}, domain, h);
  return jij - ji - jj + j0;
}

// Unweighted beta_ij from the kernel matrix (see header for the formula).
double pair_redundancy(std::span<const double> kernel, std::size_t i,
                       std::size_t j, const Domain& domain,
                       const Hyperparams& h) {
  const std::size_t n = domain.size();
  const double d = h.signal_variance() + h.noise_variance();
  const double c = kernel[i * n + j];
  const double det = d * d - c * c;
  // Near-singular 2x2 system (sigma_n = 0, near-duplicate points): the
  // closed form is unusable, defer to the jittered Cholesky path.
  if (det <= 1e-10 * d * d) return literal_redundancy(i, j, domain, h);

  double cross = 0.0;
  double sq_i = 0.0;
  double sq_j = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    const double ki = kernel[i * n + x];
    const double kj = kernel[j * n + x];
    cross += ki * kj;
    sq_i += ki * ki;
    sq_j += kj * kj;
  }
  return c * (2.0 * d * cross - c * (sq_i + sq_j)) / (d * det);
}

void check_pair(std::size_t i, std::size_t j, std::size_t n) {
  if (i == j) throw InvalidInput("beta: indices must differ");
  if (i >= n || j >= n) throw InvalidInput("beta: index out of range");
}

void check_weight(double w) {
  if (!(w > 0.0 && w <= 1.0)) {
    throw InvalidInput("w must lie in (0, 1], got " + std::to_string(w));
  }
}

}  // namespace

UpperTriangle::UpperTriangle(std::size_t n, double fill)
    : n_(n), values_(n < 2 ? 0 : n * (n - 1) / 2, fill) {}

std::size_t UpperTriangle::offset(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  // Row i holds pairs (i, i+1) .. (i, n-1) and starts after
  // sum_{r<i} (n - 1 - r) = i (2n - i - 1) / 2 entries.
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

QuboInstance::QuboInstance(std::vector<double> linear, UpperTriangle quadratic,
                           QuboMeta meta, GeneratorInfo generator)
    : linear_(std::move(linear)),
      quadratic_(std::move(quadratic)),
      meta_(std::move(meta)),
      generator_(std::move(generator)) {
  const std::size_t n = linear_.size();
  if (n == 0) throw InvalidInput("QUBO instance needs at least one variable");
  if (quadratic_.dimension() != n) {
    throw InvalidInput("quadratic dimension does not match linear size");
  }
  if (!meta_.alpha.empty() && meta_.alpha.size() != n) {
    throw InvalidInput("meta.alpha size does not match variable count");
  }
  if (meta_.beta.dimension() != 0 && meta_.beta.dimension() != n) {
    throw InvalidInput("meta.beta dimension does not match variable count");
  }
}

double alpha(std::size_t i, const Domain& domain, const Hyperparams& h) {
  if (i >= domain.size()) throw InvalidInput("alpha: index out of range");
  return total_variance(Selection{i}, domain, h) -
         total_variance(Selection{}, domain, h);
}

double beta(std::size_t i, std::size_t j, double w, const Domain& domain,
            const Hyperparams& h) {
  check_pair(i, j, domain.size());
  check_weight(w);
  const auto kernel = kernel_matrix(domain, h);
  return w * pair_redundancy(kernel, std::min(i, j), std::max(i, j), domain, h);
}

double penalty_bound(std::span<const double> alphas,
                     std::span<const double> betas, std::size_t K) {
  if (alphas.empty() || betas.empty()) {
    throw InvalidInput("penalty_bound: empty alpha or beta values");
  }
  if (K < 1 || K >= alphas.size()) {
    throw InvalidInput("penalty_bound: K must satisfy 1 <= K < n");
  }
  if (std::any_of(alphas.begin(), alphas.end(), [](double a) { return !(a < 0.0); })) {
    throw InvalidInput("penalty_bound: every alpha must be negative");
  }
  if (std::any_of(betas.begin(), betas.end(), [](double b) { return !(b > 0.0); })) {
    throw InvalidInput("penalty_bound: every beta must be positive");
  }
  const double min_alpha = *std::min_element(alphas.begin(), alphas.end());
  const double max_beta = *std::max_element(betas.begin(), betas.end());
  const double more_nodes = 2.0 * std::abs(min_alpha);
  const double fewer_nodes = 2.0 * static_cast<double>(K) * max_beta;
  return kPenaltyMargin * std::max(more_nodes, fewer_nodes);
}

double constraint_energy(std::size_t n_selected, std::size_t K, double B) {
  const auto n = static_cast<double>(n_selected);
  const auto k = static_cast<double>(K);
  return B * n * n / 2.0 - B * k * n;
}

double evaluate(const QuboInstance& q, const Selection& s) {
  s.check_within(q.size());
  const auto idx = s.indices();
  double value = 0.0;
  for (std::size_t i : idx) value += q.linear(i);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      value += q.quadratic(idx[a], idx[b]);
    }
  }
  return value;
}

VarianceTable::VarianceTable(std::vector<double> alpha, UpperTriangle redundancy,
                             Hyperparams h)
    : alpha_(std::move(alpha)), redundancy_(std::move(redundancy)), hyperparams_(h) {}

VarianceTable VarianceTable::compute(const Domain& domain, const Hyperparams& h) {
  const std::size_t n = domain.size();
  std::vector<double> alphas(n);
  for (std::size_t i = 0; i < n; ++i) alphas[i] = gpqubo::alpha(i, domain, h);

  const auto kernel = kernel_matrix(domain, h);
  UpperTriangle redundancy(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      redundancy.at(i, j) = pair_redundancy(kernel, i, j, domain, h);
    }
  }
  return VarianceTable(std::move(alphas), std::move(redundancy), h);
}

QuboInstance VarianceTable::compile(std::size_t K, double w,
                                    std::optional<GridShape> grid) const {
  const std::size_t n = size();
  if (K < 2 || K + 1 > n) {
    throw InvalidInput("K must satisfy 2 <= K <= |X| - 1 (|X| = " +
                       std::to_string(n) + ", K = " + std::to_string(K) + ")");
  }
  check_weight(w);

  UpperTriangle weighted(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      weighted.at(i, j) = w * redundancy_(i, j);
    }
  }
  const double B = penalty_bound(alpha_, weighted.values(), K);
  const auto k = static_cast<double>(K);

  std::vector<double> linear(n);
  for (std::size_t i = 0; i < n; ++i) linear[i] = alpha_[i] - B * k + B / 2.0;
  UpperTriangle quadratic(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      quadratic.at(i, j) = weighted(i, j) + B;
    }
  }
  QuboMeta meta{K, B, w, alpha_, std::move(weighted)};
  return QuboInstance(std::move(linear), std::move(quadratic), std::move(meta),
                      GeneratorInfo{grid, hyperparams_});
}

QuboInstance build(const Domain& domain, const Hyperparams& h, std::size_t K,
                   double w) {
  if (K < 2 || K + 1 > domain.size()) {
    throw InvalidInput("K must satisfy 2 <= K <= |X| - 1");
  }
  check_weight(w);
  return VarianceTable::compute(domain, h).compile(K, w);
}

QuboInstance constraint_only_instance(std::size_t n, std::size_t K, double B) {
  if (n < 2 || K < 1 || K >= n) {
    throw InvalidInput("constraint_only_instance: need 1 <= K < n");
  }
  if (!(B > 0.0)) throw InvalidInput("constraint_only_instance: B must be > 0");
  const auto k = static_cast<double>(K);
  std::vector<double> linear(n, 0.0 - B * k + B / 2.0);
  UpperTriangle quadratic(n, 0.0 + B);
  QuboMeta meta{K, B, 1.0, std::vector<double>(n, 0.0), UpperTriangle(n, 0.0)};
  return QuboInstance(std::move(linear), std::move(quadratic), std::move(meta));
}

}  // namespace gpqubo
