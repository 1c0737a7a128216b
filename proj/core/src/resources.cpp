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
#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vqls/blockenc.hpp"
#include "vqls/lower.hpp"
#include "vqls/qsvt.hpp"

namespace vqls::lower {

using circuit::Gate;
using circuit::GateKind;
using circuit::Op;
using circuit::RegisterKind;

ResourceReport count_resources(const Circuit& c) {
  if (!is_basis(c)) throw LoweringError("count_resources: circuit contains non-basis ops");
  ResourceReport r;
  r.width = c.num_qubits();
  r.ancillas = c.qubits_of_kind(RegisterKind::Ancilla).size();
  std::vector<std::size_t> level(c.num_qubits(), 0);
  for (const Op& op : c.ops()) {
    const Gate& g = std::get<Gate>(op.body);
    if (g.kind == GateKind::GlobalPhase) continue;
    if (op.controls.empty()) {
      ++r.single_qubit_count;
      r.depth = std::max(r.depth, ++level[g.target]);
    } else {
      ++r.cx_count;
      const auto q = op.controls[0].qubit;
      const std::size_t l = std::max(level[q], level[g.target]) + 1;
      level[q] = level[g.target] = l;
      r.depth = std::max(r.depth, l);
    }
  }
  return r;
}

Circuit single_step_circuit(int n_x, int n_v, const problem::PlasmaParams& params) {
  const auto grid = problem::make_grid(params, n_x, n_v);
  blockenc::FullOptions options;
  options.attach_reference = false;
  return qsvt::qsvt_step(blockenc::full_be(grid, params, options), kStepAngle);
}

ResourceReport count_step(int n_x, int n_v, Strategy strategy, const problem::PlasmaParams& params,
                          std::size_t ancilla_budget) {
  const Circuit step = single_step_circuit(n_x, n_v, params);
  ResourceReport r = count_resources(lower_to_basis(step, LowerOptions{strategy, ancilla_budget}));
  r.strategy = strategy;
  r.n_x = n_x;
  r.n_v = n_v;
  return r;
}

std::vector<ResourceReport> sweep_report(const std::vector<std::pair<int, int>>& sizes,
                                         const std::vector<Strategy>& strategies,
                                         const problem::PlasmaParams& params,
                                         std::size_t ancilla_budget) {
  for (const auto& [nx, nv] : sizes) {
    if (nx < 3 || nv < 2) {
      throw std::invalid_argument("sweep_report: sizes need n_x >= 3 and n_v >= 2");
    }
  }
  std::vector<ResourceReport> rows;
  for (const auto& [nx, nv] : sizes) {
    const Circuit step = single_step_circuit(nx, nv, params);
    for (Strategy s : strategies) {
      ResourceReport r = count_resources(lower_to_basis(step, LowerOptions{s, ancilla_budget}));
      r.strategy = s;
      r.n_x = nx;
      r.n_v = nv;
      rows.push_back(r);
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<ResourceReport>& rows) {
  std::ostringstream os;
  os << kSweepCsvHeader << '\n';
  for (const ResourceReport& r : rows) {
    os << r.n_x << ',' << r.n_v << ',' << to_string(r.strategy) << ',' << r.cx_count << ','
       << r.logical_width() << ',' << r.depth << '\n';
  }
  return os.str();
}

std::string sweep_json(const std::vector<ResourceReport>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ResourceReport& r : rows) {
    nlohmann::ordered_json j;
    j["n_x"] = r.n_x;
    j["n_v"] = r.n_v;
    j["strategy"] = to_string(r.strategy);
    j["cx_count"] = r.cx_count;
    j["width"] = r.logical_width();
    j["depth"] = r.depth;
    j["ancillas"] = r.ancillas;
    j["total_width"] = r.width;
    j["single_qubit_count"] = r.single_qubit_count;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

}  // namespace vqls::lower
