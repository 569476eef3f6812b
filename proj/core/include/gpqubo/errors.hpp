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

#ifndef GPQUBO_ERRORS_HPP_
#define GPQUBO_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gpqubo {

// Base of every error thrown by the library. kind() is a stable machine
// readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept = 0;
};

// Malformed input: dimension/length mismatch, out-of-range index or parameter.
class InvalidInput final : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "invalid_input"; }
};

// A kernel matrix could not be factored even after jitter escalation.
class NumericalDegeneracy final : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override {
    return "numerical_degeneracy";
  }
};

// Exhaustive search space larger than the configured cap or budget.
class CapacityExceeded final : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override {
    return "capacity_exceeded";
  }
};

}  // namespace gpqubo

#endif  // GPQUBO_ERRORS_HPP_
