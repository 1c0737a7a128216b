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
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Criteria can be selected by number on the command line.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <map>
#include <random>
#include <set>
#include <string>

#include "../support.hpp"
#include "commands.hpp"
#include "vqls/blockenc.hpp"
#include "vqls/builders.hpp"
#include "vqls/lower.hpp"
#include "vqls/problem.hpp"
#include "vqls/qsvt.hpp"
#include "vqls/sim.hpp"

using namespace vqls;
using json = nlohmann::ordered_json;

namespace {

// Tolerances and limits.
constexpr double kEncodingTol = 1e-8;
constexpr double kEncodingSeconds = 60.0;
constexpr double kUnitarityTol = 1e-10;
constexpr std::size_t kUnitarityWidth = 10;
constexpr double kPhaseEps = 1e-3;
constexpr double kSolveFidelity = 0.99;
constexpr double kSolveSeconds = 600.0;
constexpr double kSweepSeconds = 300.0;
constexpr double kSweepRatio = 1.5;

const std::vector<std::pair<int, int>> kEncodingSizes = {{3, 2}, {3, 3}, {4, 2}, {4, 3}};

struct Outcome {
  bool pass = false;
  std::string summary;
  std::string report;  // deterministic; compared across runs
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome encoding_contract() {
  const problem::PlasmaParams p;
  json rep = json::array();
  double worst = 0.0, slowest = 0.0;
  bool ok = true;
  for (auto [nx, nv] : kEncodingSizes) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto g = problem::make_grid(p, nx, nv);
    blockenc::FullOptions opt;
    opt.attach_reference = false;
    const auto be = blockenc::full_be(g, p, opt);
    const ComplexMatrix got = be.extract();
    const ComplexMatrix want = problem::assemble_operator(g, p);
    const double err = testing::inf_norm(got - want);
    const double dt = seconds_since(t0);
    worst = std::max(worst, err);
    slowest = std::max(slowest, dt);
    ok = ok && err <= kEncodingTol && dt <= kEncodingSeconds;
    rep.push_back({{"n_x", nx}, {"n_v", nv}, {"scale", be.scale}, {"error", err}});
  }
  return {ok,
          "block-encoding contract: max inf-norm error " + fmt("%.3g", worst) + " over 4 sizes (tol 1e-8), slowest " +
              fmt("%.2f", slowest) + " s (limit 60 s)",
          rep.dump()};
}

Outcome structure() {
  const problem::PlasmaParams p;
  bool ok = true;
  std::string bad;
  std::vector<std::pair<int, int>> sizes = kEncodingSizes;
  for (const auto& s : config::RunSettings::default_sizes()) sizes.push_back(s);
  for (auto [nx, nv] : sizes) {
    const auto g = problem::make_grid(p, nx, nv);
    blockenc::FullOptions opt;
    opt.attach_reference = false;
    const auto be = blockenc::full_be(g, p, opt);
    const auto step = qsvt::qsvt_step(be, lower::kStepAngle);
    const bool good = be.block_width() == 8 && be.data_width() == static_cast<std::size_t>(nx + nv + 1) &&
                      step.num_qubits() == static_cast<std::size_t>(nx + nv + 10);
    if (!good) bad += " (" + std::to_string(nx) + "," + std::to_string(nv) + ")";
    ok = ok && good;
  }
  return {ok, ok ? "structural counts: 8 block, n_x+n_v+1 data, n_x+n_v+10 step qubits on " +
                       std::to_string(sizes.size()) + " sizes"
                 : "structural counts: mismatch at" + bad,
          {}};
}

Outcome derivative() {
  const problem::PlasmaParams p;
  const auto dd = blockenc::DerivativeDecomp::standard();
  const double theta = 2.0 * std::acos(std::sqrt(dd.alpha / (1.0 + dd.alpha)));
  bool ok = std::abs(dd.theta_prep - theta) <= 1e-15;
  double worst = 0.0;
  for (int nx : {3, 4}) {
    const auto g = problem::make_grid(p, nx, 2);
    const auto bulk = blockenc::d_bulk_be(g);
    const auto bc = blockenc::d_boundary_be(g);
    const auto full = blockenc::d_full_be(g);
    ok = ok && std::abs(bulk.scale - 1.0 / g.dx) <= 1e-12 && std::abs(bc.scale - dd.alpha / g.dx) <= 1e-12 &&
         std::abs(full.scale - (1 + dd.alpha) / g.dx) <= 1e-12;
    const ComplexMatrix d = problem::derivative_matrix(g);
    worst = std::max(worst, testing::inf_norm(full.extract() - d));
    worst = std::max(worst, testing::inf_norm(bulk.extract() + bc.extract() - d));
  }
  ok = ok && worst <= 1e-8;
  return {ok,
          "derivative decomposition: alpha " + fmt("%.6f", dd.alpha) + ", theta_prep " + fmt("%.6f", dd.theta_prep) +
              ", max error vs stencil matrix " + fmt("%.3g", worst) + " for n_x in {3,4} (tol 1e-8)",
          {}};
}

Outcome unitarity() {
  const problem::PlasmaParams p;
  std::vector<std::pair<std::string, circuit::Circuit>> circuits;
  for (auto [nx, nv] : kEncodingSizes) {
    const auto g = problem::make_grid(p, nx, nv);
    for (const auto& be : blockenc::all_encodings(g, p)) {
      circuits.emplace_back(be.name, be.circuit);
      circuits.emplace_back(be.name + "/dilated", qsvt::dilate(be).circuit);
      for (auto s : {lower::Strategy::Baseline, lower::Strategy::Optimized}) {
        circuits.emplace_back(be.name + "/" + lower::to_string(s), lower::lower_to_basis(be.circuit, s));
      }
    }
  }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  for (std::size_t w = 1; w <= 4; ++w) {
    circuit::Circuit c;
    const auto r = c.add_register("r", w, circuit::RegisterKind::Data);
    std::vector<double> t(std::size_t{1} << w);
    double n = 0;
    for (double& x : t) n += (x = n01(rng)) * x;
    for (double& x : t) x /= std::sqrt(n);
    c.append(circuit::state_prep(t, r));
    circuits.emplace_back("state_prep", c);
  }
  for (std::size_t w = 2; w <= 6; ++w) {
    for (auto style : {circuit::AdderStyle::Qft, circuit::AdderStyle::Ripple}) {
      circuit::Circuit c;
      const auto r = c.add_register("r", w, circuit::RegisterKind::Data);
      const auto b = c.add_register("b", 1, circuit::RegisterKind::Block);
      c.append(circuit::inplace_add_const(-3, r, style));
      c.append(circuit::control_on(b[0], circuit::inplace_add_const(5, r, style)));
      circuits.emplace_back("adder", c);
    }
  }
  {
    circuit::Circuit c;
    const auto v = c.add_register("v", 3, circuit::RegisterKind::Data, circuit::Numeric::TwosComplement);
    const auto x = c.add_register("x", 3, circuit::RegisterKind::Data);
    const auto f = c.add_register("f", 1, circuit::RegisterKind::Block);
    c.append(circuit::amplitude_assign({0.0, 0.25, 0.5, 0.75, -1.0, -0.75, -0.5, -0.25}, v, f[0]));
    c.append(circuit::xor_predicate({circuit::ne(x, 2), circuit::le0(v)}, f[0]));
    circuits.emplace_back("assign+predicate", c);
  }
  const auto toy = testing::diagonal_encoding({0.2, 0.5, 0.7, 0.95}, 2);
  const auto phases = qsvt::qsvt_phases(qsvt::inverse_poly([] {
    qsvt::SolverConfig c;
    c.kappa = 5.0;
    c.eps = 1e-2;
    return c;
  }()));
  circuits.emplace_back("qsvt_step", qsvt::qsvt_step(toy, 0.4));
  circuits.emplace_back("qsvt_circuit", qsvt::qsvt_circuit(toy, phases));
  circuits.emplace_back("projector_phase", qsvt::projector_phase({0, 1, 2}, 3, 0.9));

  double worst = 0.0;
  std::size_t checked = 0;
  std::string worst_name;
  for (const auto& [name, c] : circuits) {
    if (c.num_qubits() > kUnitarityWidth) continue;
    const double e = testing::unitarity_error(sim::extract_unitary(c));
    ++checked;
    if (e > worst) {
      worst = e;
      worst_name = name;
    }
  }
  const bool ok = worst <= kUnitarityTol && checked > 0;
  return {ok,
          "unitarity suite: " + std::to_string(checked) + " circuits of width <= 10, max |U^+U - I| " +
              fmt("%.3g", worst) + (worst_name.empty() ? "" : " (" + worst_name + ")") + " (tol 1e-10)",
          {}};
}

Outcome qsvt_oracle() {
  bool ok = true;
  double recon = 0.0, multi = 0.0;
  std::mt19937_64 rng(11);
  for (double kappa : {1.5, 2.0, 4.0, 7.0, 10.0}) {
    qsvt::SolverConfig cfg;
    cfg.kappa = kappa;
    cfg.eps = kPhaseEps;
    const auto poly = qsvt::inverse_poly(cfg);
    const auto ph = qsvt::qsvt_phases(poly);
    const double r = qsvt::reconstruction_error(ph, poly, 1.0 / kappa, 1.0);
    recon = std::max(recon, r);
    ok = ok && r <= 2 * kPhaseEps;
    if (kappa < 2.0) continue;
    std::uniform_real_distribution<double> u(1.0 / kappa, 1.0);
    std::vector<double> sigma(32);
    for (double& s : sigma) s = u(rng);
    const auto be = testing::diagonal_encoding(sigma, 5);
    const auto q = qsvt::qsvt_circuit(be, ph);
    auto block = be.block_qubits();
    block.push_back(static_cast<circuit::Qubit>(q.num_qubits()) - 1);
    const ComplexMatrix got = sim::extract_block(q, block, 1.0);
    for (Eigen::Index i = 0; i < 20; ++i) {
      const double e = std::abs(got(i, i) - poly(sigma[static_cast<std::size_t>(i)]));
      multi = std::max(multi, e);
      ok = ok && e <= 5 * kPhaseEps;
    }
  }
  return {ok,
          "QSVT scalar oracle: reconstruction error " + fmt("%.3g", recon) + " (tol 2e-3), diagonal encodings " +
              fmt("%.3g", multi) + " over 80 singular values (tol 5e-3), kappa <= 10",
          {}};
}

Outcome solve() {
  const auto t0 = std::chrono::steady_clock::now();
  config::RunSettings s;
  s.solver.eps = 1e-3;
  const auto r = cli::cmd_solve(s);
  const double dt = seconds_since(t0);
  const json j = json::parse(r.report);
  const double fid = j.value("fidelity", 0.0);
  const bool ok = r.exit_code == 0 && fid >= kSolveFidelity && dt <= kSolveSeconds;
  return {ok,
          "end-to-end solve (3,2): fidelity " + fmt("%.9f", fid) + " (min 0.99), kappa " +
              fmt("%.3f", j.value("kappa", 0.0)) + ", degree " + std::to_string(j.value("degree", 0)) + ", " +
              fmt("%.1f", dt) + " s (limit 600 s)",
          r.report};
}

Outcome sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  config::RunSettings s;
  const auto r = cli::cmd_sweep(s, std::nullopt);
  const double dt = seconds_since(t0);
  const json rows = json::parse(r.json);
  bool dominated = r.exit_code == 0;
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    dominated = dominated && rows[i + 1]["cx_count"].get<double>() <= rows[i]["cx_count"].get<double>();
  }
  const auto& base = rows[rows.size() - 2];
  const auto& opt = rows[rows.size() - 1];
  const double ratio = base["cx_count"].get<double>() / opt["cx_count"].get<double>();
  const bool ok = dominated && ratio >= kSweepRatio && dt <= kSweepSeconds && base["n_x"] == 6 && base["n_v"] == 4;
  return {ok,
          "resource sweep (3,2)..(6,4): optimized <= baseline on all " + std::to_string(rows.size() / 2) +
              " sizes, reduction at (6,4) " + fmt("%.1f", ratio) + "x (min 1.5x), " + fmt("%.2f", dt) +
              " s (limit 300 s)",
          r.report + r.json};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const auto want = [&](int k) { return only.empty() || only.count(k) != 0; };

  const std::map<int, std::function<Outcome()>> criteria = {
      {1, encoding_contract}, {2, structure}, {3, derivative}, {4, unitarity},
      {5, qsvt_oracle},       {6, solve},     {7, sweep}};

  bool all = true;
  std::map<int, std::string> reports;
  const auto print = [&](int k, const Outcome& o) {
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", k, o.summary.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  };
  for (const auto& [k, run] : criteria) {
    if (!want(k)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    reports[k] = o.report;
    print(k, o);
  }

  if (want(8)) {
    Outcome o{true, "determinism: second runs of criteria 1, 6, 7 are byte-identical", {}};
    std::string diff;
    for (int k : {1, 6, 7}) {
      try {
        if (!reports.count(k)) reports[k] = criteria.at(k)().report;
        const std::string again = criteria.at(k)().report;
        if (again != reports[k] || again.empty()) diff += " " + std::to_string(k);
      } catch (const std::exception& e) {
        diff += " " + std::to_string(k) + " (" + e.what() + ")";
      }
    }
    if (!diff.empty()) o = {false, "determinism: reports differ for criteria" + diff, {}};
    print(8, o);
  }
  return all ? 0 : 1;
}
