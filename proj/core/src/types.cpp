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

#include "gpqubo/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpqubo/errors.hpp"

namespace gpqubo {

Hyperparams::Hyperparams(double length_scale, double sigma_f, double sigma_n)
    : length_scale_(length_scale), sigma_f_(sigma_f), sigma_n_(sigma_n) {
  if (!std::isfinite(length_scale) || length_scale <= 0.0) {
    throw InvalidInput("length_scale must be finite and > 0");
  }
  if (!std::isfinite(sigma_f) || sigma_f <= 0.0) {
    throw InvalidInput("sigma_f must be finite and > 0");
  }
  if (!std::isfinite(sigma_n) || sigma_n < 0.0) {
    throw InvalidInput("sigma_n must be finite and >= 0");
  }
}

Domain::Domain(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidInput("domain must contain at least one point");
  dimension_ = points_.front().size();
  if (dimension_ == 0) throw InvalidInput("domain points must have dimension >= 1");
  for (const auto& p : points_) {
    if (p.size() != dimension_) {
      throw InvalidInput("domain points have inconsistent dimensions");
    }
    for (double c : p) {
      if (!std::isfinite(c)) throw InvalidInput("domain coordinates must be finite");
    }
  }
  std::vector<const Point*> sorted;
  sorted.reserve(points_.size());
  for (const auto& p : points_) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(),
            [](const Point* a, const Point* b) { return *a < *b; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (*sorted[i - 1] == *sorted[i]) {
      throw InvalidInput("domain points must be distinct");
    }
  }
}

Selection::Selection(std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidInput("selection contains duplicate indices");
  }
}

Selection::Selection(std::initializer_list<std::size_t> indices)
    : Selection(std::vector<std::size_t>(indices)) {}

bool Selection::contains(std::size_t i) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

void Selection::check_within(std::size_t n) const {
  if (!indices_.empty() && indices_.back() >= n) {
    throw InvalidInput("selection index " + std::to_string(indices_.back()) +
                       " out of range for size " + std::to_string(n));
  }
}

Selection Selection::with(std::size_t i) const {
  if (contains(i)) {
    throw InvalidInput("index " + std::to_string(i) + " already selected");
  }
  Selection out;
  out.indices_ = indices_;
  out.indices_.insert(std::upper_bound(out.indices_.begin(), out.indices_.end(), i), i);
  return out;
}

}  // namespace gpqubo
