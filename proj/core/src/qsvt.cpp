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

#include "vqls/qsvt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vqls/builders.hpp"
#include "vqls/sim.hpp"

namespace vqls::qsvt {

using circuit::Control;
using circuit::Register;
using circuit::RegisterKind;

Circuit projector_phase(const std::vector<Qubit>& block, Qubit sign, double phi) {
  std::vector<Control> controls;
  for (Qubit q : block) controls.push_back({q, false});
  Circuit c;
  c.x(sign, controls);
  c.rz(sign, 2.0 * phi);
  c.x(sign, controls);
  return c;
}

SignedCircuit with_sign_qubit(const blockenc::BlockEncoding& be) {
  SignedCircuit out;
  out.circuit = Circuit(be.circuit.num_qubits());
  for (const Register& r : be.circuit.registers()) out.circuit.declare_register(r);
  out.sign = out.circuit.add_register("sign", 1, RegisterKind::Data)[0];
  return out;
}

Circuit qsvt_step(const blockenc::BlockEncoding& be, double angle) {
  SignedCircuit s = with_sign_qubit(be);
  const auto block = be.block_qubits();
  Circuit& c = s.circuit;
  c.append(projector_phase(block, s.sign, angle));
  c.append(be.circuit);
  c.append(projector_phase(block, s.sign, angle));
  c.append(circuit::invert(be.circuit));
  return c;
}

Circuit qsvt_circuit(const blockenc::BlockEncoding& be, const PhaseSequence& phases) {
  SignedCircuit s = with_sign_qubit(be);
  const auto block = be.block_qubits();
  const auto phi = phases.reflection_angles();
  const Circuit u_dag = circuit::invert(be.circuit);
  Circuit& c = s.circuit;
  c.h(s.sign);
  const std::size_t d = phi.size();
  for (std::size_t k = 1; k <= d; ++k) {
    c.append(k % 2 == 1 ? be.circuit : u_dag);
    c.append(projector_phase(block, s.sign, phi[d - k]));
  }
  c.h(s.sign);
  return c;
}

blockenc::BlockEncoding dilate(const blockenc::BlockEncoding& be) {
  const auto data = be.data_qubits();
  const auto n = static_cast<Qubit>(data.size());
  for (Qubit k = 0; k < n; ++k) {
    if (data[static_cast<std::size_t>(k)] != k) {
      throw blockenc::BlockEncodingError("dilate: data qubits must come first");
    }
  }
  const Circuit u = circuit::relabel(be.circuit, [n](Qubit q) { return q < n ? q : q + 1; },
                                     be.circuit.num_qubits() + 1);
  Register d;
  d.name = "d";
  d.qubits = {n};
  d.kind = RegisterKind::Data;

  Circuit c(u.num_qubits());
  for (const Register& r : u.registers()) c.declare_register(r);
  c.declare_register(d);
  Circuit body = circuit::control_on({{n, false}}, circuit::invert(u));
  body.append(circuit::control_on({{n, true}}, u));
  c.append(body);
  c.x(n);

  blockenc::BlockEncoding out{be.name + "_dilated", c, be.scale, std::nullopt};
  if (be.reference) {
    const auto m = be.reference->rows();
    ComplexMatrix h = ComplexMatrix::Zero(2 * m, 2 * m);
    h.topRightCorner(m, m) = *be.reference;
    h.bottomLeftCorner(m, m) = be.reference->adjoint();
    out.reference = h;
  }
  return out;
}

StreamResult run_qsvt_streaming(const blockenc::BlockEncoding& be, const PhaseSequence& phases,
                                const std::vector<Complex>& data_state) {
  const auto data = be.data_qubits();
  const auto block = be.block_qubits();
  if (data_state.size() != (std::size_t{1} << data.size())) {
    throw std::invalid_argument("run_qsvt_streaming: data state has the wrong size");
  }
  std::uint64_t bmask = 0;
  for (Qubit q : block) bmask |= std::uint64_t{1} << q;

  std::vector<std::uint64_t> seeds;
  for (std::size_t j = 0; j < data_state.size(); ++j) {
    if (data_state[j] != Complex(0.0, 0.0)) seeds.push_back(sim::scatter_bits(j, data));
  }
  const Circuit u_dag = circuit::invert(be.circuit);
  const auto ops = sim::compile_reachable({&be.circuit, &u_dag}, seeds);
  const auto& support = ops[0].support();
  const std::size_t n = support.size();

  std::vector<bool> in_block(n);
  for (std::size_t i = 0; i < n; ++i) in_block[i] = (support[i] & bmask) == 0;

  const double r2 = 1.0 / std::sqrt(2.0);
  std::vector<Complex> s0(n, 0.0), s1(n, 0.0), t0(n), t1(n);
  for (std::size_t j = 0; j < data_state.size(); ++j) {
    if (data_state[j] == Complex(0.0, 0.0)) continue;
    const auto idx = static_cast<std::size_t>(ops[0].index_of(sim::scatter_bits(j, data)));
    s0[idx] = s1[idx] = data_state[j] * r2;
  }

  const auto phi = phases.reflection_angles();
  const std::size_t d = phi.size();
  for (std::size_t k = 1; k <= d; ++k) {
    const auto& op = ops[k % 2 == 1 ? 0 : 1];
    op.apply2(s0, s1, t0, t1);
    s0.swap(t0);
    s1.swap(t1);
    const Complex e_in = std::polar(1.0, phi[d - k]);
    const Complex e_out = std::conj(e_in);
    for (std::size_t i = 0; i < n; ++i) {
      s0[i] *= in_block[i] ? e_in : e_out;
      s1[i] *= in_block[i] ? e_out : e_in;
    }
  }
  StreamResult out;
  out.support = support;
  out.sign0.resize(n);
  out.sign1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.sign0[i] = (s0[i] + s1[i]) * r2;
    out.sign1[i] = (s0[i] - s1[i]) * r2;
  }
  return out;
}

namespace {

// b as a real unit vector times a common phase; the right-hand side has one
// complex drive amplitude, so this always succeeds for assembled problems.
std::vector<double> real_direction(const ComplexVector& b) {
  Eigen::Index k = 0;
  b.cwiseAbs().maxCoeff(&k);
  const Complex ph = b(k) / std::abs(b(k));
  const ComplexVector r = b * std::conj(ph) / b.norm();
  if (r.imag().cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("right-hand side entries do not share a common phase");
  }
  std::vector<double> out(static_cast<std::size_t>(r.size()));
  for (Eigen::Index i = 0; i < r.size(); ++i) out[static_cast<std::size_t>(i)] = r(i).real();
  return out;
}

}  // namespace

SolveResult solve_quantum(const problem::GridSpec& grid, const problem::PlasmaParams& params,
                          const SolverConfig& config, const SolveOptions& options) {
  SolveResult res;
  const ComplexMatrix m = problem::assemble_operator(grid, params, options.terms);
  const ComplexVector b = problem::assemble_rhs(grid, params);
  if (b.norm() == 0.0) throw std::invalid_argument("solve_quantum: zero right-hand side");
  const ComplexVector psi_c = problem::solve_classical(m, b);
  res.classical = psi_c / psi_c.norm();

  blockenc::FullOptions fo;
  fo.terms = options.terms;
  const auto be = blockenc::full_be(grid, params, fo);
  res.scale = be.scale;
  const auto cond = problem::condition_number(m, be.scale);
  res.sigma_min = cond.sigma_min;
  res.scaled_condition = cond.scaled;
  SolverConfig cfg = config;
  if (cfg.kappa <= 0.0) cfg.kappa = std::max(1.0, options.kappa_safety * cond.scaled);
  res.kappa = cfg.kappa;
  res.eps = cfg.eps;

  const ChebyshevSeries poly = inverse_poly(cfg);
  PhaseReport rep;
  const PhaseSequence phases = qsvt_phases(poly, options.phase_options, &rep);
  res.degree = phases.degree();
  res.phase_iterations = rep.iterations;
  res.phase_residual = rep.residual;

  const auto h = dilate(be);
  const auto hdata = h.data_qubits();
  const std::size_t n_data = be.data_width();

  // |b> on the data register of the d = 0 sector.
  Register data_reg;
  data_reg.name = "rhs";
  for (std::size_t q = 0; q < n_data; ++q) data_reg.qubits.push_back(static_cast<Qubit>(q));
  sim::StateVector init(n_data + 1);
  sim::apply_in_place(circuit::state_prep(real_direction(b), data_reg), init);

  const StreamResult st = run_qsvt_streaming(h, phases, init.amplitudes());
  res.width = h.circuit.num_qubits() + 1;
  res.support = st.support.size();

  std::uint64_t bmask = 0;
  for (Qubit q : h.block_qubits()) bmask |= std::uint64_t{1} << q;
  const std::uint64_t top = std::uint64_t{1} << n_data;
  ComplexVector phi = ComplexVector::Zero(static_cast<Eigen::Index>(top));
  for (std::size_t i = 0; i < st.support.size(); ++i) {
    if (st.support[i] & bmask) continue;
    const std::uint64_t j = sim::gather_bits(st.support[i], hdata);
    if (j & top) phi(static_cast<Eigen::Index>(j & (top - 1))) = st.sign0[i];
  }
  res.success_probability = phi.squaredNorm();
  if (res.success_probability == 0.0) {
    res.diagnostic = "post-selection probability is zero";
    return res;
  }
  res.state = phi / phi.norm();
  res.fidelity = std::abs(res.state.dot(res.classical));
  const ComplexVector mphi = m * res.state;
  const Complex c = mphi.dot(b) / mphi.squaredNorm();
  res.residual = (mphi * c - b).norm() / b.norm();
  res.passed = res.fidelity >= options.fidelity_threshold;
  if (!res.passed) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "fidelity %.6f below %.2f; sigma_min * kappa / s = %.4f (kappa underestimates "
                  "the scaled condition number when < 1)",
                  res.fidelity, options.fidelity_threshold, res.sigma_min * res.kappa / res.scale);
    res.diagnostic = buf;
  }
  return res;
}

}  // namespace vqls::qsvt
