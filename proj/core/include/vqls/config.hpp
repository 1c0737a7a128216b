// Copyright 2026 The vqls Authors
//
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
#pragma once

// Run settings read from a JSON file.
//
//   {
//     "n_x": 3, "n_v": 2,
//     "omega0": 1.2, "x_max": 10, "v_max": 4,
//     "density": 1.0,                       // or [[x, value], ...]
//     "temperature": [[0, 1.0], [10, 1.5]],
//     "source": {"amplitude": [1, 0], "center": 5, "sigma": 1.25},
//     "terms": {"advection": true, "force": true, "current": true},
//     "kappa": 0, "eps": 1e-3, "max_degree": 60001,
//     "strategy": "optimized", "ancillas": 32,
//     "sizes": [[3, 2], [4, 2]]
//   }
//
// Every key is optional. Unknown keys are rejected so that typos do not
// silently fall back to defaults.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vqls/lower.hpp"
#include "vqls/polynomial.hpp"
#include "vqls/problem.hpp"

namespace vqls::config {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

struct RunSettings {
  int n_x = 3;
  int n_v = 2;
  problem::PlasmaParams params;
  problem::OperatorTerms terms;
  qsvt::SolverConfig solver;
  lower::Strategy strategy = lower::Strategy::Optimized;
  std::size_t ancillas = lower::kDefaultAncillaBudget;
  std::vector<std::pair<int, int>> sizes = default_sizes();

  // (3,2) ... (6,4): n_x in 3..6, n_v in 2..4.
  static std::vector<std::pair<int, int>> default_sizes();
};

// Overrides `base` with the keys present in the JSON text. Throws
// ConfigError on syntax errors, unknown keys or wrongly typed values.
RunSettings parse_settings(const std::string& json_text, RunSettings base = {});
RunSettings load_settings(const std::filesystem::path& path, RunSettings base = {});

// The problem and solver settings as a JSON object (fixed key order,
// compact), for report echoes.
std::string settings_json(const RunSettings& s);

}  // namespace vqls::config
