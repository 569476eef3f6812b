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

#include "gpqubo/gp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

#include "gpqubo/errors.hpp"

namespace gpqubo {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Cholesky = Eigen::LLT<Matrix>;

constexpr std::array<double, 3> kJitterLadder = {1e-10, 1e-8, 1e-6};

void check_samples(const Selection& samples, const Domain& domain) {
  samples.check_within(domain.size());
}

// Cholesky factor of K_S + sigma_n^2 I, escalating diagonal jitter on failure.
Cholesky factor_noisy_gram(const Selection& samples, const Domain& domain,
                           const Hyperparams& h) {
  const auto idx = samples.indices();
  const auto m = static_cast<Eigen::Index>(idx.size());
  Matrix gram(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      const double v = kernel_eval(domain[idx[a]], domain[idx[b]], h);
      gram(a, b) = v;
      gram(b, a) = v;
    }
  }
  gram.diagonal().array() += h.noise_variance();

  Cholesky llt(gram);
  if (llt.info() == Eigen::Success) return llt;
  for (double jitter : kJitterLadder) {
    Matrix jittered = gram;
    jittered.diagonal().array() += jitter;
    llt.compute(jittered);
    if (llt.info() == Eigen::Success) return llt;
  }
  throw NumericalDegeneracy(
      "noisy kernel matrix is not positive definite after jitter 1e-6");
}

Vector cross_covariance(std::span<const double> x, const Selection& samples,
                        const Domain& domain, const Hyperparams& h) {
  const auto idx = samples.indices();
  Vector k(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a) {
    k(static_cast<Eigen::Index>(a)) = kernel_eval(domain[idx[a]], x, h);
  }
  return k;
}

}  // namespace

double kernel_eval(std::span<const double> a, std::span<const double> b,
                   const Hyperparams& h) {
  if (a.size() != b.size()) {
    throw InvalidInput("kernel_eval: dimension mismatch");
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  const double l = h.length_scale();
  return h.signal_variance() * std::exp(-sq / (2.0 * l * l));
}

double posterior_variance(std::span<const double> x_star,
                          const Selection& samples, const Domain& domain,
                          const Hyperparams& h) {
  if (x_star.size() != domain.dimension()) {
    throw InvalidInput("posterior_variance: x_star dimension mismatch");
  }
  check_samples(samples, domain);
  const double prior = kernel_eval(x_star, x_star, h);
  if (samples.empty()) return prior;

  const Cholesky llt = factor_noisy_gram(samples, domain, h);
  const Vector v = llt.matrixL().solve(cross_covariance(x_star, samples, domain, h));
  return std::max(0.0, prior - v.squaredNorm());
}

double posterior_mean(std::span<const double> x_star, const Selection& samples,
                      std::span<const double> observations,
                      const Domain& domain, const Hyperparams& h) {
  if (observations.size() != samples.size()) {
    throw InvalidInput("posterior_mean: observation count differs from sample count");
  }
  if (x_star.size() != domain.dimension()) {
    throw InvalidInput("posterior_mean: x_star dimension mismatch");
  }
  check_samples(samples, domain);
  if (samples.empty()) return 0.0;

  const Cholesky llt = factor_noisy_gram(samples, domain, h);
  const Vector y = Eigen::Map<const Vector>(
      observations.data(), static_cast<Eigen::Index>(observations.size()));
  return cross_covariance(x_star, samples, domain, h).dot(llt.solve(y));
}

double total_variance(const Selection& samples, const Domain& domain,
                      const Hyperparams& h) {
  check_samples(samples, domain);
  double total = 0.0;
  if (samples.empty()) {
    for (std::size_t x = 0; x < domain.size(); ++x) {
      total += kernel_eval(domain[x], domain[x], h);
    }
    return total;
  }

  const Cholesky llt = factor_noisy_gram(samples, domain, h);
  const auto idx = samples.indices();
  const auto m = static_cast<Eigen::Index>(idx.size());
  const auto n = static_cast<Eigen::Index>(domain.size());
  Matrix cross(m, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index a = 0; a < m; ++a) {
      cross(a, x) = kernel_eval(domain[idx[a]], domain[x], h);
    }
  }
  llt.matrixL().solveInPlace(cross);
  for (Eigen::Index x = 0; x < n; ++x) {
    const double prior = kernel_eval(domain[x], domain[x], h);
    total += std::max(0.0, prior - cross.col(x).squaredNorm());
  }
  return total;
}

double variance_reduction(std::span<const double> x, const Selection& samples,
                          const Domain& domain, const Hyperparams& h) {
  const double prior = kernel_eval(x, x, h);
  return std::max(0.0, prior - posterior_variance(x, samples, domain, h));
}

}  // namespace gpqubo
