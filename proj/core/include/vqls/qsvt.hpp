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

// QSVT circuits over a block encoding and the end-to-end linear solve.

#include <optional>
#include <string>
#include <vector>

#include "vqls/blockenc.hpp"
#include "vqls/circuit.hpp"
#include "vqls/phases.hpp"
#include "vqls/polynomial.hpp"
#include "vqls/problem.hpp"

namespace vqls::qsvt {

using circuit::Circuit;
using circuit::Qubit;

// exp(i phi (2 Pi - 1)) on the sign = 0 branch (and its conjugate on
// sign = 1), Pi = projector onto all block qubits |0>: MCX onto the sign
// qubit with 0-polarity controls, RZ(2 phi), MCX.
Circuit projector_phase(const std::vector<Qubit>& block, Qubit sign, double phi);

// Adds a fresh "sign" qubit to a copy of the encoding's circuit.
struct SignedCircuit {
  Circuit circuit;
  Qubit sign = -1;
};
SignedCircuit with_sign_qubit(const blockenc::BlockEncoding& be);

// One step: projector phase, U, projector phase, U^dagger. The result
// includes the encoding's registers and the sign qubit.
Circuit qsvt_step(const blockenc::BlockEncoding& be, double angle);

// Full sequence H(sign), [U or U^dagger, projector phase] x d, H(sign).
// Post-selecting sign = 0 and block = 0 applies p(B / s) for an odd p with
// p = Re <0|U_R|0>. Only practical for small degree; the solver streams.
Circuit qsvt_circuit(const blockenc::BlockEncoding& be, const PhaseSequence& phases);

// Hermitian dilation: data qubit d inserted after the encoding's data
// qubits, U_H = X_d (|0><0|_d (x) U^dagger + |1><1|_d (x) U). Its block is
// [[0, B], [B^dagger, 0]] / s with d the top data bit.
blockenc::BlockEncoding dilate(const blockenc::BlockEncoding& be);

struct SolveOptions {
  problem::OperatorTerms terms{};
  double kappa_safety = 1.25;
  double fidelity_threshold = 0.99;
  PhaseOptions phase_options{};
};

struct SolveResult {
  ComplexVector state;              // post-selected, normalized, over the data layout
  ComplexVector classical;          // normalized direct solution
  double success_probability = 0.0;
  double fidelity = 0.0;
  double residual = 0.0;            // min_c |M c psi - b| / |b|
  double kappa = 0.0;
  double eps = 0.0;
  int degree = 0;
  int phase_iterations = 0;
  double phase_residual = 0.0;
  double scale = 0.0;               // s of the block encoding
  double sigma_min = 0.0;
  double scaled_condition = 0.0;    // s / sigma_min
  std::size_t width = 0;            // simulated qubits incl. dilation and sign
  std::size_t support = 0;          // basis states touched by the sequence
  bool passed = false;
  std::string diagnostic;
};

// Runs the phase sequence of qsvt_circuit(dilate(full_be)) on the
// normalized right-hand side and compares with the direct solution.
// config.kappa == 0 selects kappa_safety * s / sigma_min.
SolveResult solve_quantum(const problem::GridSpec& grid, const problem::PlasmaParams& params,
                          const SolverConfig& config, const SolveOptions& options = {});

// Streams the phase sequence of qsvt_circuit over a state prepared on the
// data qubits with blocks and sign at |0>. Returns the full final state
// over the encoding's qubits plus the sign qubit (as the last qubit),
// restricted to the reachable support (other amplitudes are zero).
struct StreamResult {
  std::vector<std::uint64_t> support;  // basis indices (sign bit excluded)
  std::vector<Complex> sign0;          // amplitudes with sign = 0
  std::vector<Complex> sign1;          // amplitudes with sign = 1
};
StreamResult run_qsvt_streaming(const blockenc::BlockEncoding& be, const PhaseSequence& phases,
                                const std::vector<Complex>& data_state);

}  // namespace vqls::qsvt
