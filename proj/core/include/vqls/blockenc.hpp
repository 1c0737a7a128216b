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

// Block encodings of the Vlasov-Ampere operator and its parts.
//
// A BlockEncoding is a circuit U with a scale s such that
//   s * (<0_block| (x) I) U (|0_block> (x) I) = B.
// Data indices follow sim::extract_block: non-block qubits in ascending
// order. Every standalone encoding below declares its data registers first
// so that the data index matches problem::StateLayout (x, then v, then e).
//
// Two layers are exposed. The *_circuit functions build fragments on
// caller-owned qubits and are what the composite encodings are made of; the
// *_be functions allocate registers, build one encoding and attach the
// classical reference matrix it must reproduce.

#include <optional>
#include <string>
#include <vector>

#include "vqls/circuit.hpp"
#include "vqls/linalg.hpp"
#include "vqls/problem.hpp"

namespace vqls::blockenc {

using circuit::AdderStyle;
using circuit::Circuit;
using circuit::Qubit;
using circuit::Register;

class BlockEncodingError : public std::runtime_error {
 public:
  explicit BlockEncodingError(const std::string& message) : std::runtime_error(message) {}
};

// Split of d/dx into bulk + boundary correction. The boundary table is the
// one-sided stencil minus the bulk stencil's overlap on row 0, in units of
// 1/dx: (-3/2, 3/2, -1/2, 0). alpha is its norm.
struct DerivativeDecomp {
  std::vector<double> table;
  double alpha = 0.0;
  double theta_prep = 0.0;  // 2 arccos(sqrt(alpha / (1 + alpha)))

  static DerivativeDecomp standard();
};

// |(-3, 4, -1)| = sqrt(26): the norm of the raw one-sided stencil. Reported
// next to the alpha actually used.
double raw_stencil_norm();

struct BlockEncoding {
  std::string name;
  Circuit circuit;
  double scale = 1.0;
  std::optional<ComplexMatrix> reference;

  std::vector<Qubit> block_qubits() const;
  std::vector<Qubit> data_qubits() const;
  std::size_t block_width() const { return block_qubits().size(); }
  std::size_t data_width() const { return data_qubits().size(); }

  // scale * block, via sim::extract_block.
  ComplexMatrix extract() const;
  // max |extract - reference|; throws when no reference is attached.
  double verify() const;
};

struct Scales {
  double alpha = 0.0;
  double s_F = 0.0;     // v_max (1 + alpha) / dx
  double beta_E = 0.0;  // |dF/dv| over the v grid
  double beta_g = 0.0;  // dv |v| over the v grid
  double s_C = 0.0;     // max(beta_E, beta_g) over the enabled couplings
  double omega0 = 0.0;
  double s = 0.0;       // s_F + s_C + omega0 over the enabled terms
};

Scales compute_scales(const problem::GridSpec& grid, const problem::PlasmaParams& params,
                      problem::OperatorTerms terms = {});

// Velocity tables over the v register's raw index order.
std::vector<double> force_table(const problem::GridSpec& grid, const problem::PlasmaParams& params);
std::vector<double> current_table(const problem::GridSpec& grid);

enum class Side { Left, Right };

// flag ^= (x == 0 and v > 0) xor (x == N-1 and v <= 0).
Circuit zeta_circuit(const Register& x, const Register& v, Qubit flag);
// Amplitude v / v_max on flag, then X(flag).
Circuit v_diag_circuit(const Register& v, Qubit flag);
// (S+ - S-)/2 on x, with b1 as the top bit of the extended register [x, b1].
Circuit d_bulk_circuit(const Register& x, Qubit b1, Qubit b2,
                       AdderStyle style = AdderStyle::Qft);
// One side of the boundary correction on the low n_x - 1 qubits of x.
Circuit d_boundary_side_circuit(const Register& x_low, Qubit b, Side side,
                                const DerivativeDecomp& decomp);
// Both sides, dispatched on the top qubit of x.
Circuit d_boundary_circuit(const Register& x, Qubit b, const DerivativeDecomp& decomp);

struct DerivativeQubits {
  Qubit lcu = -1;
  Qubit b1 = -1;
  Qubit b2 = -1;
  Qubit b_bc = -1;
};

Circuit d_full_circuit(const Register& x, const DerivativeQubits& q, const DerivativeDecomp& decomp,
                       AdderStyle style = AdderStyle::Qft);

struct AdvectionQubits {
  DerivativeQubits derivative;
  Qubit zeta = -1;
  Qubit vflag = -1;
};

Circuit f_circuit(const Register& x, const Register& v, Qubit e, const AdvectionQubits& q,
                  const DerivativeDecomp& decomp, AdderStyle style = AdderStyle::Qft);

// Column |eta><0| and row |0><eta| encodings on v with one flag qubit.
Circuit ce_circuit(const Register& v, Qubit b, const std::vector<double>& eta);
Circuit cg_circuit(const Register& v, Qubit b, const std::vector<double>& eta);

// Weights of the two coupling branches relative to s_C (0 disables one).
struct CouplingTables {
  std::vector<double> eta_E;  // -dF/dv / beta_E
  std::vector<double> eta_g;  // v dv / beta_g
  double weight_E = 1.0;      // beta_E / s_C
  double weight_g = 1.0;      // beta_g / s_C
};

CouplingTables coupling_tables(const problem::GridSpec& grid, const problem::PlasmaParams& params,
                               problem::OperatorTerms terms = {});

Circuit off_diag_circuit(Qubit e, const Register& v, Qubit b0, Qubit b1, const CouplingTables& t);

// Standalone encodings with references.
BlockEncoding zeta_be(const problem::GridSpec& grid);
BlockEncoding v_diag_be(const problem::GridSpec& grid, const problem::PlasmaParams& params);
BlockEncoding d_bulk_be(const problem::GridSpec& grid, AdderStyle style = AdderStyle::Qft);
// On the low n_x - 1 x-qubits only.
BlockEncoding d_boundary_be(const problem::GridSpec& grid, Side side);
// Combined, on all n_x x-qubits.
BlockEncoding d_boundary_be(const problem::GridSpec& grid);
BlockEncoding d_full_be(const problem::GridSpec& grid, AdderStyle style = AdderStyle::Qft);
BlockEncoding F_be(const problem::GridSpec& grid, const problem::PlasmaParams& params,
                   AdderStyle style = AdderStyle::Qft);
BlockEncoding cE_be(const problem::GridSpec& grid, const problem::PlasmaParams& params);
BlockEncoding cG_be(const problem::GridSpec& grid, const problem::PlasmaParams& params);
BlockEncoding off_diag_be(const problem::GridSpec& grid, const problem::PlasmaParams& params,
                          problem::OperatorTerms terms = {});

struct FullOptions {
  problem::OperatorTerms terms{};
  bool share_coupling_blocks = true;  // U_C reuses two of U_F's block qubits
  AdderStyle adder = AdderStyle::Qft;
  bool attach_reference = true;  // dense i*omega0 + A; off for counting
};

// Registers, in qubit order: x, v, e (data), then the block qubits
// lcu_dx, b1, b2, b_bc, zeta, vflag, lcu (2 qubits), and c0, c1 when the
// coupling blocks are not shared.
BlockEncoding full_be(const problem::GridSpec& grid, const problem::PlasmaParams& params,
                      const FullOptions& options = {});

// All encodings checked by the verification command, in a fixed order.
std::vector<BlockEncoding> all_encodings(const problem::GridSpec& grid,
                                         const problem::PlasmaParams& params);

// JSON manifest: name, scale, registers, block/data widths, reference hash,
// and the derivative decomposition (alpha used and the raw stencil norm).
std::string manifest_json(const BlockEncoding& be);

}  // namespace vqls::blockenc
