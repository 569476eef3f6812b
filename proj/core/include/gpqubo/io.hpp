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

#ifndef GPQUBO_IO_HPP_
#define GPQUBO_IO_HPP_

// JSON forms of the library types. Doubles are written in shortest
// round-trip form, so write-then-read is lossless.
//
// QuboInstance:
//   {"format": "gpqubo.qubo/1", "n": 25, "K": 3, "B": 6.46, "w": 1.0,
//    "linear": [a_0, ...], "quadratic": [[i, j, b_ij], ...],   // i < j
//    "alpha": [...], "beta": [[i, j, beta_ij], ...],
//    "generator": {"grid": {"rows", "cols", "spacing"} | null,
//                  "hyperparams": {"length_scale", "sigma_f", "sigma_n"} | null}}
//
// SolveReport:
//   {"method": "gray_exact", "best_selection": [...], "best_value": v,
//    "evaluations": N, "seed": S | null, "wall_time_ms": t}

#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "gpqubo/qubo.hpp"
#include "gpqubo/solve.hpp"
#include "gpqubo/types.hpp"

namespace gpqubo {

nlohmann::json to_json(const Hyperparams& h);
Hyperparams hyperparams_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GridShape& g);
GridShape grid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Selection& s);
Selection selection_from_json(const nlohmann::json& j);

// {"dimension": d, "points": [[...], ...], "grid": {...}?}
nlohmann::json domain_to_json(const Domain& d,
                              const std::optional<GridShape>& grid = std::nullopt);
Domain domain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QuboInstance& q);
QuboInstance instance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolveReport& r);
SolveReport report_from_json(const nlohmann::json& j);

// Throw InvalidInput on I/O or parse failure.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace gpqubo

#endif  // GPQUBO_IO_HPP_
