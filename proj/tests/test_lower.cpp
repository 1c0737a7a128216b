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
#include <doctest.h>

#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>

#include "support.hpp"
#include "vqls/blockenc.hpp"
#include "vqls/builders.hpp"
#include "vqls/lower.hpp"
#include "vqls/qsvt.hpp"
#include "vqls/sim.hpp"

using namespace vqls;
using namespace vqls::lower;
using circuit::Control;
using circuit::RegisterKind;

namespace {

struct Case {
  std::string name;
  Circuit circuit;
};

// Width <= 8 sub-builders, controlled and uncontrolled.
std::vector<Case> corpus() {
  std::vector<Case> out;
  const auto add = [&](std::string name, const std::function<void(Circuit&)>& build) {
    Circuit c;
    build(c);
    out.push_back({std::move(name), std::move(c)});
  };
  const problem::PlasmaParams p;
  const auto g = problem::make_grid(p, 3, 2);
  const auto dd = blockenc::DerivativeDecomp::standard();

  for (int n = 1; n <= 5; ++n) {
    add("mcx" + std::to_string(n), [n](Circuit& c) {
      c.ensure_qubits(static_cast<std::size_t>(n) + 1);
      std::vector<Control> ctl;
      for (int i = 0; i < n; ++i) ctl.push_back({i, i % 2 == 0});
      c.x(n, ctl);
    });
  }
  add("mc_ry", [](Circuit& c) {
    c.ensure_qubits(5);
    c.gate(circuit::GateKind::RY, 4, 0.7, {{0, true}, {1, false}, {2, true}, {3, true}});
  });
  add("mc_h_phase", [](Circuit& c) {
    c.ensure_qubits(4);
    c.gate(circuit::GateKind::H, 3, 0.0, {{0, true}, {1, true}});
    c.gate(circuit::GateKind::Phase, 0, 1.1, {{1, false}, {2, true}, {3, true}});
    c.gate(circuit::GateKind::GlobalPhase, 2, 0.4, {{0, true}, {1, true}});
  });
  for (int w = 2; w <= 4; ++w) {
    for (long long k : {1LL, -1LL, 3LL}) {
      add("add_w" + std::to_string(w) + "_k" + std::to_string(k), [w, k](Circuit& c) {
        c.append(circuit::inplace_add_const(k, c.add_register("r", static_cast<std::size_t>(w), RegisterKind::Data)));
      });
      add("cadd_w" + std::to_string(w) + "_k" + std::to_string(k), [w, k](Circuit& c) {
        const auto r = c.add_register("r", static_cast<std::size_t>(w), RegisterKind::Data);
        const auto q = c.add_register("c", 2, RegisterKind::Block);
        c.append(circuit::control_on(std::vector<Control>{{q[0], true}, {q[1], false}},
                                     circuit::inplace_add_const(k, r, circuit::AdderStyle::Ripple)));
      });
    }
  }
  add("state_prep", [](Circuit& c) {
    c.append(circuit::state_prep({-0.3, 0.5, 0.2, std::sqrt(1 - 0.38)}, c.add_register("r", 2, RegisterKind::Data)));
  });
  add("c_state_prep", [&](Circuit& c) {
    const auto r = c.add_register("r", 3, RegisterKind::Data);
    const auto b = c.add_register("b", 1, RegisterKind::Block);
    std::vector<double> t(8, 1.0 / std::sqrt(8.0));
    t[3] = -t[3];
    c.append(circuit::control_on(b[0], circuit::state_prep(t, r)));
  });
  add("amplitude_assign", [](Circuit& c) {
    const auto v = c.add_register("v", 2, RegisterKind::Data, circuit::Numeric::TwosComplement);
    const auto f = c.add_register("f", 1, RegisterKind::Block);
    c.append(circuit::amplitude_assign({0.0, 0.25, -0.5, -0.25}, v, f[0]));
  });
  add("xor_predicate", [](Circuit& c) {
    const auto x = c.add_register("x", 3, RegisterKind::Data);
    const auto v = c.add_register("v", 3, RegisterKind::Data, circuit::Numeric::TwosComplement);
    const auto f = c.add_register("f", 1, RegisterKind::Block);
    c.append(circuit::xor_predicate({circuit::eq(x, 0), circuit::gt0(v)}, f[0]));
  });
  add("zeta", [](Circuit& c) {
    const auto x = c.add_register("x", 3, RegisterKind::Data);
    const auto v = c.add_register("v", 2, RegisterKind::Data, circuit::Numeric::TwosComplement);
    const auto f = c.add_register("f", 1, RegisterKind::Block);
    c.append(blockenc::zeta_circuit(x, v, f[0]));
  });
  add("d_bulk", [](Circuit& c) {
    const auto x = c.add_register("x", 3, RegisterKind::Data);
    const auto b = c.add_register("b", 2, RegisterKind::Block);
    c.append(blockenc::d_bulk_circuit(x, b[0], b[1]));
  });
  add("d_boundary", [&](Circuit& c) {
    const auto x = c.add_register("x", 3, RegisterKind::Data);
    const auto b = c.add_register("b", 1, RegisterKind::Block);
    c.append(blockenc::d_boundary_circuit(x, b[0], dd));
  });
  add("d_full", [&](Circuit& c) {
    const auto x = c.add_register("x", 3, RegisterKind::Data);
    const auto b = c.add_register("b", 4, RegisterKind::Block);
    c.append(blockenc::d_full_circuit(x, {b[0], b[1], b[2], b[3]}, dd));
  });
  add("ce_cg", [&](Circuit& c) {
    const auto v = c.add_register("v", 2, RegisterKind::Data, circuit::Numeric::TwosComplement);
    const auto b = c.add_register("b", 1, RegisterKind::Block);
    const auto t = blockenc::coupling_tables(g, p);
    c.append(blockenc::ce_circuit(v, b[0], t.eta_E));
    c.append(blockenc::cg_circuit(v, b[0], t.eta_g));
  });
  add("off_diag", [&](Circuit& c) {
    const auto v = c.add_register("v", 2, RegisterKind::Data, circuit::Numeric::TwosComplement);
    const auto e = c.add_register("e", 1, RegisterKind::Data);
    const auto b = c.add_register("b", 2, RegisterKind::Block);
    c.append(blockenc::off_diag_circuit(e[0], v, b[0], b[1], blockenc::coupling_tables(g, p)));
  });
  add("mux", [](Circuit& c) {
    c.ensure_qubits(5);
    c.push({circuit::MultiplexedRY{{0, 1, 2}, 3, {0.1, -0.4, 0.9, 0.0, 1.3, 0.0, -2.2, 0.5}}, {}});
    c.push({circuit::MultiplexedRY{{0, 1}, 2, {0.3, 0.3, -0.6, 1.0}}, {{4, true}}});
  });
  add("within", [](Circuit& c) {
    Circuit outer(4), inner(4);
    outer.h(0);
    outer.cx(0, 1);
    outer.ry(2, 0.3);
    inner.rz(1, 0.8);
    inner.x(3, {{2, true}, {1, true}});
    c.ensure_qubits(6);
    c.append(circuit::control_on(std::vector<Control>{{4, true}, {5, false}}, circuit::conjugate(outer, inner)));
  });
  std::mt19937_64 rng(41);
  for (int t = 0; t < 4; ++t) out.push_back({"random" + std::to_string(t), testing::random_circuit(6, 40, rng)});
  return out;
}

std::vector<circuit::Qubit> ancillas_of(const Circuit& c) { return c.qubits_of_kind(RegisterKind::Ancilla); }

double lowering_error(const Circuit& original, const Circuit& lowered) {
  const ComplexMatrix u = sim::extract_unitary(original);
  const ComplexMatrix b = sim::extract_block(lowered, ancillas_of(lowered), 1.0);
  return std::max(testing::phase_distance(u, b), testing::unitarity_error(b));
}

}  // namespace

TEST_CASE("single CX is untouched by both strategies") {
  Circuit c(2);
  c.cx(0, 1);
  for (Strategy s : {Strategy::Baseline, Strategy::Optimized}) {
    const Circuit l = lower_to_basis(c, s);
    REQUIRE(l.size() == 1);
    CHECK(count_resources(l).cx_count == 1);
    CHECK(count_resources(l).ancillas == 0);
  }
}

TEST_CASE("three-controlled X with one free ancilla") {
  Circuit c(4);
  c.x(3, {{0, true}, {1, true}, {2, true}});
  const ResourceReport base = count_resources(lower_to_basis(c, Strategy::Baseline));
  const Circuit opt_c = lower_to_basis(c, LowerOptions{Strategy::Optimized, 1});
  const ResourceReport opt = count_resources(opt_c);
  CHECK(opt.ancillas == 1);
  CHECK(opt.cx_count < base.cx_count);
  CHECK(base.cx_count == 24);
  CHECK(opt.cx_count == 12);
  CHECK(lowering_error(c, opt_c) <= 1e-8);
  // Without ancillas the optimized route falls back to borrowed-qubit forms.
  const Circuit none = lower_to_basis(c, LowerOptions{Strategy::Optimized, 0});
  CHECK(count_resources(none).ancillas == 0);
  CHECK(lowering_error(c, none) <= 1e-8);
}

TEST_CASE("lowered adder equals the unlowered one") {
  Circuit c;
  c.append(circuit::inplace_add_const(1, c.add_register("r", 3, RegisterKind::Data)));
  for (Strategy s : {Strategy::Baseline, Strategy::Optimized}) {
    const Circuit l = lower_to_basis(c, s);
    CHECK(is_basis(l));
    CHECK(max_abs_diff(sim::extract_block(l, ancillas_of(l), 1.0), sim::extract_unitary(c)) <= 1e-8);
  }
}

TEST_CASE("semantic preservation and dominance over the corpus") {
  for (const Case& k : corpus()) {
    CAPTURE(k.name);
    REQUIRE(k.circuit.num_qubits() <= 8);
    const Circuit base = lower_to_basis(k.circuit, Strategy::Baseline);
    const Circuit opt = lower_to_basis(k.circuit, Strategy::Optimized);
    CHECK(is_basis(base));
    CHECK(is_basis(opt));
    CHECK(count_resources(base).ancillas == 0);
    CHECK(lowering_error(k.circuit, base) <= 1e-8);
    CHECK(lowering_error(k.circuit, opt) <= 1e-8);
    CHECK(count_resources(opt).cx_count <= count_resources(base).cx_count);
    const Circuit tight = lower_to_basis(k.circuit, LowerOptions{Strategy::Optimized, 1});
    CHECK(count_resources(tight).ancillas <= 1);
    CHECK(lowering_error(k.circuit, tight) <= 1e-8);
  }
}

TEST_CASE("adder cost formulas") {
  CHECK(qft_adder_cx(3, 1, false) == 12);
  CHECK(qft_adder_cx(3, 1, true) == 18);
  CHECK(qft_adder_cx(3, 4, true) == 14);  // one nonzero phase rotation
  CHECK(ripple_adder_cx(3, 1, false) == 34);
  CHECK(ripple_adder_cx(3, 5, true) == 38);
  CHECK(ripple_adder_cx(1, 1, false) == 1);
  for (std::size_t w = 2; w <= 6; ++w) {
    Circuit c;
    c.append(circuit::inplace_add_const(3, c.add_register("r", w, RegisterKind::Data)));
    CHECK(count_resources(lower_to_basis(c, Strategy::Baseline)).cx_count == qft_adder_cx(w, 3, false));
    CHECK(count_resources(lower_to_basis(c, Strategy::Optimized)).cx_count <=
          std::min(qft_adder_cx(w, 3, false), ripple_adder_cx(w, 3, false)));
  }
}

TEST_CASE("wide adders switch to ripple carry") {
  const std::size_t w = 12;
  REQUIRE(ripple_adder_cx(w, 5, false) < qft_adder_cx(w, 5, false));
  Circuit c;
  const auto r = c.add_register("r", w, RegisterKind::Data);
  c.append(circuit::inplace_add_const(5, r));
  const Circuit l = lower_to_basis(c, Strategy::Optimized);
  const ResourceReport rep = count_resources(l);
  CHECK(rep.cx_count <= ripple_adder_cx(w, 5, false));
  CHECK(rep.ancillas == w + 1);
  // Permutation check on sampled inputs, ancillas starting and ending in |0>.
  std::mt19937_64 rng(42);
  for (int t = 0; t < 16; ++t) {
    const std::uint64_t in = rng() % (std::uint64_t{1} << w);
    auto s = sim::SparseState::basis(in);
    sim::apply_in_place(l, s);
    std::uint64_t best = 0;
    double mag = 0;
    for (const auto& [i, a] : s.entries) {
      if (std::abs(a) > mag) {
        mag = std::abs(a);
        best = i;
      }
    }
    CHECK(mag == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(best == ((in + 5) & ((std::uint64_t{1} << w) - 1)));
  }
  // With too few ancillas the QFT form is kept.
  const Circuit q = lower_to_basis(c, LowerOptions{Strategy::Optimized, 2});
  CHECK(count_resources(q).cx_count <= qft_adder_cx(w, 5, false));
}

TEST_CASE("count_resources") {
  const ResourceReport empty = count_resources(Circuit(5));
  CHECK(empty.cx_count == 0);
  CHECK(empty.width == 5);
  CHECK(empty.depth == 0);

  Circuit one(2);
  one.cx(0, 1);
  CHECK(count_resources(one).cx_count == 1);
  CHECK(count_resources(one).depth == 1);

  Circuit par(4);
  par.cx(0, 1);
  par.cx(2, 3);
  par.h(0);
  par.cx(1, 2);
  par.global_phase(0.3);
  const ResourceReport r = count_resources(par);
  CHECK(r.cx_count == 3);
  CHECK(r.single_qubit_count == 1);
  CHECK(r.depth == 2);

  Circuit bad(3);
  bad.x(2, {{0, true}, {1, true}});
  CHECK(!is_basis(bad));
  CHECK_THROWS_AS(count_resources(bad), LoweringError);
  Circuit neg(2);
  neg.x(1, {{0, false}});
  CHECK(!is_basis(neg));
}

TEST_CASE("strategy names") {
  CHECK(std::string(to_string(Strategy::Baseline)) == "baseline");
  CHECK(strategy_from_string("optimized") == Strategy::Optimized);
  CHECK_THROWS_AS(strategy_from_string("fast"), std::invalid_argument);
}

TEST_CASE("single QSVT step anchors") {
  const problem::PlasmaParams p;
  const ResourceReport base = count_step(3, 2, Strategy::Baseline, p);
  const ResourceReport opt = count_step(3, 2, Strategy::Optimized, p);
  CHECK(base.cx_count == 31484);
  CHECK(opt.cx_count == 808);
  CHECK(opt.cx_count < base.cx_count);
  CHECK(base.logical_width() == 15);
  CHECK(opt.logical_width() == 15);
  CHECK(base.ancillas == 0);
  CHECK(opt.n_x == 3);
  CHECK(opt.n_v == 2);
  const ResourceReport mid = count_step(4, 3, Strategy::Optimized, p);
  CHECK(mid.logical_width() == 17);
  CHECK(mid.width == 17 + mid.ancillas);
}

TEST_CASE("lowered single step acts like the unlowered step") {
  // Sampled columns of the 15-qubit step, ancillas at |0>.
  const problem::PlasmaParams p;
  const Circuit step = single_step_circuit(3, 2, p);
  const Circuit opt = lower_to_basis(step, Strategy::Optimized);
  const auto anc = ancillas_of(opt);
  std::uint64_t anc_mask = 0;
  for (auto q : anc) anc_mask |= std::uint64_t{1} << q;
  std::mt19937_64 rng(43);
  for (int t = 0; t < 6; ++t) {
    const std::uint64_t in = rng() % (std::uint64_t{1} << step.num_qubits());
    auto a = sim::SparseState::basis(in);
    auto b = sim::SparseState::basis(in);
    sim::apply_in_place(step, a);
    sim::apply_in_place(opt, b);
    std::vector<std::pair<std::uint64_t, Complex>> kept;
    double leak = 0;
    for (const auto& e : b.entries) {
      if (e.first & anc_mask) leak += std::norm(e.second);
      else kept.push_back(e);
    }
    CHECK(leak <= 1e-16);
    // Align the global phase on the largest amplitude.
    Complex ph = 1.0;
    double big = 0;
    for (const auto& [i, z] : a.entries) {
      if (std::abs(z) > big) {
        big = std::abs(z);
        for (const auto& [j, w] : kept) {
          if (j == i) ph = w / z;
        }
      }
    }
    ph /= std::abs(ph);
    double err = 0;
    std::size_t k = 0;
    for (const auto& [i, z] : a.entries) {
      while (k < kept.size() && kept[k].first < i) err = std::max(err, std::abs(kept[k++].second));
      if (k < kept.size() && kept[k].first == i) err = std::max(err, std::abs(kept[k++].second - ph * z));
      else err = std::max(err, std::abs(z));
    }
    while (k < kept.size()) err = std::max(err, std::abs(kept[k++].second));
    CHECK(err <= 1e-8);
  }
}

TEST_CASE("sweep table") {
  const problem::PlasmaParams p;
  std::vector<std::pair<int, int>> sizes;
  for (int nv = 2; nv <= 4; ++nv) {
    for (int nx = 3; nx <= 6; ++nx) sizes.emplace_back(nx, nv);
  }
  const auto rows = sweep_report(sizes, {Strategy::Baseline, Strategy::Optimized}, p);
  REQUIRE(rows.size() == 2 * sizes.size());
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].strategy == Strategy::Baseline);
    CHECK(rows[i + 1].strategy == Strategy::Optimized);
    CHECK(rows[i + 1].cx_count <= rows[i].cx_count);
    CHECK(rows[i].logical_width() == static_cast<std::size_t>(rows[i].n_x + rows[i].n_v + 10));
  }
  // Non-decreasing in n_x at fixed n_v and strategy.
  for (std::size_t i = 2; i < rows.size(); ++i) {
    if (rows[i].n_v == rows[i - 2].n_v && rows[i].n_x > rows[i - 2].n_x) CHECK(rows[i].cx_count >= rows[i - 2].cx_count);
  }

  const std::string csv = sweep_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n_x,n_v,strategy,cx_count,width,depth");
  std::size_t n = 0;
  while (std::getline(in, line)) n += line.empty() ? 0 : 1;
  CHECK(n == rows.size());

  const auto j = nlohmann::json::parse(sweep_json(rows));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == rows.size());
  CHECK(j[1].at("strategy") == "optimized");
  CHECK(j[1].at("cx_count") == rows[1].cx_count);
  CHECK(j[1].at("ancillas") == rows[1].ancillas);

  CHECK_THROWS_AS(sweep_report({{2, 2}}, {Strategy::Baseline}, p), std::invalid_argument);
  CHECK_THROWS_AS(sweep_report({{3, 1}}, {Strategy::Baseline}, p), std::invalid_argument);
}

TEST_CASE("counts are deterministic across runs and thread counts") {
  const problem::PlasmaParams p;
  const char* old = std::getenv("VQLS_THREADS");
  const std::string saved = old ? old : "";
  std::vector<std::string> csvs;
  for (const char* t : {"1", "3", "8"}) {
    setenv("VQLS_THREADS", t, 1);
    csvs.push_back(sweep_csv(sweep_report({{3, 2}, {4, 3}}, {Strategy::Baseline, Strategy::Optimized}, p)) +
                   sweep_json(sweep_report({{5, 2}}, {Strategy::Optimized}, p)));
  }
  if (old) setenv("VQLS_THREADS", saved.c_str(), 1);
  else unsetenv("VQLS_THREADS");
  CHECK(csvs[0] == csvs[1]);
  CHECK(csvs[0] == csvs[2]);
}
