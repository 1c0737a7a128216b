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
#include "commands.hpp"

#include <cmath>

#include <json.hpp>

#include "vqls/blockenc.hpp"
#include "vqls/linalg.hpp"
#include "vqls/problem.hpp"
#include "vqls/qsvt.hpp"
#include "vqls/sim.hpp"

namespace vqls::cli {

using nlohmann::ordered_json;

namespace {

void check_size(const config::RunSettings& s) {
  if (s.n_x < 3 || s.n_v < 2) {
    throw PreconditionError("need n_x >= 3 and n_v >= 2 (got n_x = " + std::to_string(s.n_x) +
                            ", n_v = " + std::to_string(s.n_v) + ")");
  }
  s.params.validate();
}

void check_simulable(const config::RunSettings& s) {
  const auto data = static_cast<std::size_t>(s.n_x + s.n_v + 1);
  if (data > sim::kMaxBlockDataWidth) {
    throw PreconditionError("data width " + std::to_string(data) + " exceeds the simulation limit of " +
                            std::to_string(sim::kMaxBlockDataWidth) +
                            " qubits; use --mode=count-only or the count / sweep commands");
  }
}

ordered_json settings_object(const config::RunSettings& s) {
  return ordered_json::parse(config::settings_json(s));
}

ordered_json scales_object(const blockenc::Scales& sc) {
  const auto d = blockenc::DerivativeDecomp::standard();
  ordered_json j;
  j["s_F"] = sc.s_F;
  j["s_C"] = sc.s_C;
  j["omega0"] = sc.omega0;
  j["s"] = sc.s;
  j["beta_E"] = sc.beta_E;
  j["beta_g"] = sc.beta_g;
  j["alpha"] = d.alpha;
  j["alpha_raw_stencil"] = blockenc::raw_stencil_norm();
  j["theta_prep"] = d.theta_prep;
  return j;
}

// Induced infinity norm (max row sum) of U^dagger U - I.
double unitarity_error(const circuit::Circuit& c) {
  const ComplexMatrix u = sim::extract_unitary(c);
  const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().rowwise().sum().maxCoeff();
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

CommandResult counts(const config::RunSettings& s, const std::vector<std::pair<int, int>>& sizes,
                     std::optional<lower::Strategy> strategy) {
  for (const auto& [nx, nv] : sizes) {
    if (nx < 3 || nv < 2) {
      throw PreconditionError("sizes need n_x >= 3 and n_v >= 2 (got (" + std::to_string(nx) + ", " +
                              std::to_string(nv) + "))");
    }
  }
  s.params.validate();
  std::vector<lower::Strategy> strategies;
  if (strategy) {
    strategies.push_back(*strategy);
  } else {
    strategies = {lower::Strategy::Baseline, lower::Strategy::Optimized};
  }
  const auto rows = lower::sweep_report(sizes, strategies, s.params, s.ancillas);
  CommandResult r;
  r.report = lower::sweep_csv(rows);
  r.json = lower::sweep_json(rows);
  if (!strategy) {
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
      if (rows[i + 1].cx_count > rows[i].cx_count) r.exit_code = 1;
    }
  }
  return r;
}

}  // namespace

CommandResult cmd_verify(const config::RunSettings& s, Mode mode) {
  check_size(s);
  if (mode == Mode::Full) check_simulable(s);
  const auto grid = problem::make_grid(s.params, s.n_x, s.n_v);
  bool ok = true;

  ordered_json out;
  out["command"] = "verify";
  out["mode"] = mode == Mode::Full ? "full" : "count-only";
  out["settings"] = settings_object(s);
  out["scales"] = scales_object(blockenc::compute_scales(grid, s.params));

  blockenc::FullOptions full_options;
  full_options.attach_reference = mode == Mode::Full;
  const auto full = blockenc::full_be(grid, s.params, full_options);
  const auto step = qsvt::qsvt_step(full, lower::kStepAngle);
  ordered_json st;
  st["block_qubits"] = full.block_width();
  st["data_qubits"] = full.data_width();
  st["step_logical_qubits"] = step.num_qubits();
  st["expected_block_qubits"] = 8;
  st["expected_data_qubits"] = s.n_x + s.n_v + 1;
  st["expected_step_logical_qubits"] = s.n_x + s.n_v + 10;
  const bool st_ok = full.block_width() == 8 &&
                     full.data_width() == static_cast<std::size_t>(s.n_x + s.n_v + 1) &&
                     step.num_qubits() == static_cast<std::size_t>(s.n_x + s.n_v + 10);
  st["passed"] = st_ok;
  ok = ok && st_ok;
  out["structure"] = st;

  if (mode == Mode::Full) {
    ordered_json encs = ordered_json::array();
    for (const auto& be : blockenc::all_encodings(grid, s.params)) {
      ordered_json e;
      e["name"] = be.name;
      e["scale"] = be.scale;
      e["width"] = be.circuit.num_qubits();
      e["block_qubits"] = be.block_width();
      e["data_qubits"] = be.data_width();
      const double err = be.verify();
      e["max_error"] = err;
      bool pass = err <= kVerifyTolerance;
      if (be.circuit.num_qubits() <= kUnitarityMaxWidth) {
        const double u = unitarity_error(be.circuit);
        e["unitarity_error"] = u;
        pass = pass && u <= kUnitarityTolerance;
      } else {
        e["unitarity_error"] = nullptr;
      }
      e["passed"] = pass;
      ok = ok && pass;
      encs.push_back(e);
    }
    out["encodings"] = encs;
    out["tolerance"] = kVerifyTolerance;
  }
  out["passed"] = ok;
  return {ok ? 0 : 1, dump(out), {}};
}

CommandResult cmd_solve(const config::RunSettings& s, const std::optional<std::filesystem::path>& dump_path) {
  check_size(s);
  check_simulable(s);
  const auto grid = problem::make_grid(s.params, s.n_x, s.n_v);
  qsvt::SolveOptions options;
  options.terms = s.terms;

  ordered_json out;
  out["command"] = "solve";
  out["settings"] = settings_object(s);
  bool ok = false;
  try {
    const auto r = qsvt::solve_quantum(grid, s.params, s.solver, options);
    out["eps"] = r.eps;
    out["kappa"] = r.kappa;
    out["degree"] = r.degree;
    out["fidelity"] = r.fidelity;
    out["success_probability"] = r.success_probability;
    out["residual"] = r.residual;
    out["scale"] = r.scale;
    out["sigma_min"] = r.sigma_min;
    out["scaled_condition"] = r.scaled_condition;
    out["phase_iterations"] = r.phase_iterations;
    out["phase_residual"] = r.phase_residual;
    out["simulated_qubits"] = r.width;
    out["support"] = r.support;
    out["fidelity_threshold"] = options.fidelity_threshold;
    out["diagnostic"] = r.diagnostic;
    ok = r.passed;
    if (dump_path) write_dump(*dump_path, r.state);
  } catch (const qsvt::DegreeError& e) {
    out["diagnostic"] = std::string(e.what()) + "; required degree " + std::to_string(e.required_degree());
  } catch (const SingularMatrixError& e) {
    out["diagnostic"] = e.what();
  } catch (const qsvt::PhaseError& e) {
    out["diagnostic"] = e.what();
  }
  out["passed"] = ok;
  return {ok ? 0 : 1, dump(out), {}};
}

CommandResult cmd_count(const config::RunSettings& s, std::optional<lower::Strategy> strategy) {
  return counts(s, {{s.n_x, s.n_v}}, strategy);
}

CommandResult cmd_sweep(const config::RunSettings& s, std::optional<lower::Strategy> strategy) {
  return counts(s, s.sizes, strategy);
}

}  // namespace vqls::cli
