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

#ifndef GPQUBO_TYPES_HPP_
#define GPQUBO_TYPES_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gpqubo {

using Point = std::vector<double>;

// Squared-exponential kernel hyperparameters. Construction validates
// length_scale > 0, sigma_f > 0, sigma_n >= 0 (all finite).
class Hyperparams {
 public:
  Hyperparams(double length_scale, double sigma_f, double sigma_n);

  double length_scale() const noexcept { return length_scale_; }
  double sigma_f() const noexcept { return sigma_f_; }
  double sigma_n() const noexcept { return sigma_n_; }

  double signal_variance() const noexcept { return sigma_f_ * sigma_f_; }
  double noise_variance() const noexcept { return sigma_n_ * sigma_n_; }

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;

 private:
  double length_scale_;
  double sigma_f_;
  double sigma_n_;
};

// Ordered finite set of candidate locations. Points share one dimension
// d >= 1 and are pairwise distinct; position in the list is the index.
class Domain {
 public:
  explicit Domain(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }

 private:
  std::vector<Point> points_;
  std::size_t dimension_;
};

// Set of domain indices, kept sorted ascending. Duplicates are rejected.
// Doubles as the binary assignment z (index present <=> z_i = 1).
class Selection {
 public:
  Selection() = default;
  explicit Selection(std::vector<std::size_t> indices);
  Selection(std::initializer_list<std::size_t> indices);

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::size_t i) const noexcept;

  // Largest index must be < n.
  void check_within(std::size_t n) const;

  // Selection with i added; i must not already be present.
  Selection with(std::size_t i) const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const Selection&, const Selection&) = default;
  // Lexicographic on the sorted index lists.
  friend auto operator<=>(const Selection& a, const Selection& b) {
    return a.indices_ <=> b.indices_;
  }

 private:
  std::vector<std::size_t> indices_;
};

// Rows x cols lattice at a fixed spacing (row-major point order).
struct GridShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double spacing = 1.0;

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

}  // namespace gpqubo

#endif  // GPQUBO_TYPES_HPP_
