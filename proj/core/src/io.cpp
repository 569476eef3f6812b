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

#include "gpqubo/io.hpp"

#include <fstream>
#include <string>

#include "gpqubo/errors.hpp"

namespace gpqubo {

using nlohmann::json;

namespace {

// nlohmann throws its own exception types; surface them as InvalidInput.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

json triangle_to_json(const UpperTriangle& t) {
  json out = json::array();
  const std::size_t n = t.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back({i, j, t(i, j)});
  }
  return out;
}

UpperTriangle triangle_from_json(const json& entries, std::size_t n) {
  UpperTriangle t(n);
  std::vector<bool> seen(t.size(), false);
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3) {
      throw InvalidInput("quadratic entries must be [i, j, value]");
    }
    const auto i = e[0].get<std::size_t>();
    const auto j = e[1].get<std::size_t>();
    if (i >= j || j >= n) {
      throw InvalidInput("quadratic entry needs i < j < n");
    }
    const auto off = t.offset(i, j);
    if (seen[off]) throw InvalidInput("duplicate quadratic entry");
    seen[off] = true;
    t.at(i, j) = e[2].get<double>();
  }
  return t;
}

}  // namespace

json to_json(const Hyperparams& h) {
  return {{"length_scale", h.length_scale()},
          {"sigma_f", h.sigma_f()},
          {"sigma_n", h.sigma_n()}};
}

Hyperparams hyperparams_from_json(const json& j) {
  return guarded("hyperparams", [&] {
    return Hyperparams(j.at("length_scale").get<double>(),
                       j.at("sigma_f").get<double>(),
                       j.at("sigma_n").get<double>());
  });
}

json to_json(const GridShape& g) {
  return {{"rows", g.rows}, {"cols", g.cols}, {"spacing", g.spacing}};
}

GridShape grid_from_json(const json& j) {
  return guarded("grid", [&] {
    return GridShape{j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                     j.value("spacing", 1.0)};
  });
}

json to_json(const Selection& s) {
  return json(std::vector<std::size_t>(s.begin(), s.end()));
}

Selection selection_from_json(const json& j) {
  return guarded("selection", [&] { return Selection(j.get<std::vector<std::size_t>>()); });
}

json domain_to_json(const Domain& d, const std::optional<GridShape>& grid) {
  json out = {{"dimension", d.dimension()}, {"points", d.points()}};
  if (grid) out["grid"] = to_json(*grid);
  return out;
}

Domain domain_from_json(const json& j) {
  return guarded("domain", [&] {
    return Domain(j.at("points").get<std::vector<Point>>());
  });
}

json to_json(const QuboInstance& q) {
  const auto& meta = q.meta();
  json generator = {{"grid", nullptr}, {"hyperparams", nullptr}};
  if (q.generator().grid) generator["grid"] = to_json(*q.generator().grid);
  if (q.generator().hyperparams) {
    generator["hyperparams"] = to_json(*q.generator().hyperparams);
  }
  return {{"format", "gpqubo.qubo/1"},
          {"n", q.size()},
          {"K", meta.K},
          {"B", meta.B},
          {"w", meta.w},
          {"linear", std::vector<double>(q.linear().begin(), q.linear().end())},
          {"quadratic", triangle_to_json(q.quadratic())},
          {"alpha", meta.alpha},
          {"beta", triangle_to_json(meta.beta)},
          {"generator", generator}};
}

QuboInstance instance_from_json(const json& j) {
  return guarded("qubo instance", [&] {
    const auto n = j.at("n").get<std::size_t>();
    auto linear = j.at("linear").get<std::vector<double>>();
    if (linear.size() != n) throw InvalidInput("linear length differs from n");
    auto quadratic = triangle_from_json(j.at("quadratic"), n);

    QuboMeta meta;
    meta.K = j.at("K").get<std::size_t>();
    meta.B = j.at("B").get<double>();
    meta.w = j.value("w", 1.0);
    meta.alpha = j.value("alpha", std::vector<double>{});
    meta.beta = j.contains("beta") ? triangle_from_json(j.at("beta"), n) : UpperTriangle(n);

    GeneratorInfo generator;
    if (j.contains("generator")) {
      const auto& g = j.at("generator");
      if (g.contains("grid") && !g.at("grid").is_null()) {
        generator.grid = grid_from_json(g.at("grid"));
      }
      if (g.contains("hyperparams") && !g.at("hyperparams").is_null()) {
        generator.hyperparams = hyperparams_from_json(g.at("hyperparams"));
      }
    }
    return QuboInstance(std::move(linear), std::move(quadratic), std::move(meta),
                        std::move(generator));
  });
}

json to_json(const SolveReport& r) {
  json out = {{"method", to_string(r.method)},
              {"best_selection", to_json(r.best_selection)},
              {"best_value", r.best_value},
              {"evaluations", r.evaluations},
              {"seed", nullptr},
              {"wall_time_ms", r.wall_time.count()}};
  if (r.seed) out["seed"] = *r.seed;
  return out;
}

SolveReport report_from_json(const json& j) {
  return guarded("solve report", [&] {
    SolveReport r;
    r.method = parse_solve_method(j.at("method").get<std::string>());
    r.best_selection = selection_from_json(j.at("best_selection"));
    r.best_value = j.at("best_value").get<double>();
    r.evaluations = j.at("evaluations").get<std::uint64_t>();
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_time = std::chrono::duration<double, std::milli>(j.at("wall_time_ms").get<double>());
    return r;
  });
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace gpqubo
