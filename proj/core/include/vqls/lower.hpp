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

// Lowering to the {CX, single-qubit} basis and resource counting.
//
// Two strategies expand the same IR:
//
//   baseline   every control is pushed down onto every elementary gate;
//              adders are QFT based; multi-controlled gates use the
//              no-ancilla recursion C^n U = CV . C^(n-1)X . CV^+ . C^(n-1)X
//              . C^(n-1)V with V^2 = U (quadratic CX count); multiplexed
//              rotations become one multi-controlled RY per branch.
//   optimized  controls of composite ops are folded into one clean
//              ancilla through a chain of relative-phase Toffolis; the
//              outer part of a conjugation stays uncontrolled; the adder
//              style is picked from the cost table below; multiplexed
//              rotations use the Gray-code construction; a peephole pass
//              cancels inverse pairs and merges rotations.
//
// Cost table (CX gates):
//   CX 1, Toffoli 6, relative-phase Toffoli 3, controlled Z 1,
//   controlled RY / RZ / Phase / generic 2, controlled global phase 0
//   QFT adder on n qubits      2n(n-1) + 2 m      (m nonzero phase
//                                                   rotations, only when
//                                                   controlled)
//   ripple adder on n qubits   16(n-1) + 2        (n >= 2; 1 when n = 1)
//                              + 2 popcount(k)    (only when controlled)
//                              using n + 1 clean ancillas
//   Gray-code multiplexor      2^s for s select qubits

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vqls/circuit.hpp"
#include "vqls/problem.hpp"

namespace vqls::lower {

using circuit::Circuit;

class LoweringError : public std::runtime_error {
 public:
  explicit LoweringError(const std::string& message) : std::runtime_error(message) {}
};

enum class Strategy { Baseline, Optimized };

const char* to_string(Strategy s);
// "baseline" or "optimized"; throws std::invalid_argument otherwise.
Strategy strategy_from_string(const std::string& name);

inline constexpr std::size_t kDefaultAncillaBudget = 32;

struct LowerOptions {
  Strategy strategy = Strategy::Baseline;
  // Clean ancillas the optimized strategy may append. Ignored by baseline.
  std::size_t ancilla_budget = kDefaultAncillaBudget;
};

// Output holds only uncontrolled single-qubit gates and CX (X with one
// positive control). The registers of the input are kept; ancillas are
// appended as an "anc" register of kind Ancilla and return to |0>.
Circuit lower_to_basis(const Circuit& c, const LowerOptions& options);
inline Circuit lower_to_basis(const Circuit& c, Strategy strategy) {
  return lower_to_basis(c, LowerOptions{strategy, kDefaultAncillaBudget});
}

bool is_basis(const Circuit& c);

std::size_t qft_adder_cx(std::size_t width, long long addend, bool controlled);
std::size_t ripple_adder_cx(std::size_t width, long long addend, bool controlled);

struct ResourceReport {
  std::size_t cx_count = 0;
  std::size_t single_qubit_count = 0;
  std::size_t width = 0;    // all qubits, ancillas included
  std::size_t ancillas = 0;
  std::size_t depth = 0;    // ASAP layers, global phases excluded
  Strategy strategy = Strategy::Baseline;
  int n_x = 0;
  int n_v = 0;

  std::size_t logical_width() const { return width - ancillas; }
};

// Throws LoweringError when a non-basis op is present.
ResourceReport count_resources(const Circuit& c);

// Rotation angle of the projector phases in the counted single step. The
// structure of the step does not depend on it.
inline constexpr double kStepAngle = 0.3;

// qsvt_step(full_be(grid, params), kStepAngle), never simulated.
Circuit single_step_circuit(int n_x, int n_v, const problem::PlasmaParams& params);

ResourceReport count_step(int n_x, int n_v, Strategy strategy,
                          const problem::PlasmaParams& params,
                          std::size_t ancilla_budget = kDefaultAncillaBudget);

// Rows ordered by size as given, then baseline before optimized.
// Sizes with n_x < 3 or n_v < 2 throw std::invalid_argument.
std::vector<ResourceReport> sweep_report(const std::vector<std::pair<int, int>>& sizes,
                                         const std::vector<Strategy>& strategies,
                                         const problem::PlasmaParams& params,
                                         std::size_t ancilla_budget = kDefaultAncillaBudget);

inline constexpr const char* kSweepCsvHeader = "n_x,n_v,strategy,cx_count,width,depth";

// The width column is the logical width; ancillas are listed in the JSON.
std::string sweep_csv(const std::vector<ResourceReport>& rows);
std::string sweep_json(const std::vector<ResourceReport>& rows);

}  // namespace vqls::lower
