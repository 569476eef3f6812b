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

#ifndef GPQUBO_GP_HPP_
#define GPQUBO_GP_HPP_

// Exact Gaussian-process posterior computations over a finite domain with a
// zero-mean prior and the squared-exponential kernel
//
//   k(a, b) = sigma_f^2 * exp(-|a - b|^2 / (2 l^2)).
//
// Conditioning on a sample set S with noisy observations gives, at x*,
//
//   mean(x*)     = k*^T (K_S + sigma_n^2 I)^-1 y
//   variance(x*) = k(x*, x*) - k*^T (K_S + sigma_n^2 I)^-1 k*
//
// where k* = [k(s, x*)]_{s in S}. The variance depends only on where we
// sample, not on the observed values, which is what makes the selection
// problem purely combinatorial.
//
// The noisy Gram matrix is factored with a Cholesky decomposition; no inverse
// is ever formed. If the factorization fails (sigma_n = 0 with nearly
// coincident samples) the diagonal is retried with 1e-10, 1e-8 and 1e-6 of
// jitter before NumericalDegeneracy is thrown.
//
// All functions are pure and thread-safe.

#include <span>

#include "gpqubo/types.hpp"

namespace gpqubo {

// Throws InvalidInput on dimension mismatch.
double kernel_eval(std::span<const double> a, std::span<const double> b,
                   const Hyperparams& h);

// Posterior variance at x_star given samples (indices into domain). Returns
// sigma_f^2 when samples is empty; clamped below at 0.
double posterior_variance(std::span<const double> x_star,
                          const Selection& samples, const Domain& domain,
                          const Hyperparams& h);

// Posterior mean under a zero-mean prior. observations[k] is the value
// measured at the k-th smallest index of samples.
double posterior_mean(std::span<const double> x_star, const Selection& samples,
                      std::span<const double> observations,
                      const Domain& domain, const Hyperparams& h);

// J(S): posterior variance summed over every domain point, in domain order.
double total_variance(const Selection& samples, const Domain& domain,
                      const Hyperparams& h);

// F_x(A) = variance(x) - variance(x | A) >= 0.
double variance_reduction(std::span<const double> x, const Selection& samples,
                          const Domain& domain, const Hyperparams& h);

}  // namespace gpqubo

#endif  // GPQUBO_GP_HPP_
