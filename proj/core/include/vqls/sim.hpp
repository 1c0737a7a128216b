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

// Exact statevector simulation.
//
// Basis index bit q is the value of qubit q. Registers are little-endian, so
// a register's value is read from its qubits in order. Two backends share
// the op semantics: a dense vector for full-width runs and a sorted sparse
// vector for column-by-column extraction, where most of the 2^width
// amplitudes stay zero.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "vqls/circuit.hpp"
#include "vqls/linalg.hpp"

namespace vqls::sim {

using circuit::Circuit;
using circuit::Qubit;

inline constexpr std::size_t kMaxDenseWidth = 28;
inline constexpr std::size_t kMaxUnitaryWidth = 14;
inline constexpr std::size_t kMaxBlockDataWidth = 10;

class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& message) : std::runtime_error(message) {}
};

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t width);  // |0...0>
  static StateVector basis(std::size_t width, std::uint64_t index);
  static StateVector from_amplitudes(std::size_t width, std::vector<Complex> amps);

  std::size_t width() const { return width_; }
  std::size_t size() const { return amps_.size(); }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::vector<Complex>& amplitudes() { return amps_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  double norm() const;

 private:
  std::size_t width_ = 0;
  std::vector<Complex> amps_;
};

void apply_in_place(const Circuit& c, StateVector& psi);
StateVector apply_circuit(const Circuit& c, StateVector psi);

// Sorted (index, amplitude) pairs; entries with |a| below the drop
// threshold are discarded after every op.
struct SparseState {
  std::vector<std::pair<std::uint64_t, Complex>> entries;
  static SparseState basis(std::uint64_t index) { return {{{index, Complex(1.0, 0.0)}}}; }
};

inline constexpr double kSparseDrop = 1e-15;

void apply_in_place(const Circuit& c, SparseState& psi, double drop = kSparseDrop);

// Column j is the circuit applied to |j>.
ComplexMatrix extract_unitary(const Circuit& c);

// scale * (<0_block| (x) I) U (|0_block> (x) I). The data qubits are all
// non-block qubits in ascending order; data index bit k is the k-th of them.
ComplexMatrix extract_block(const Circuit& c, const std::vector<Qubit>& block_qubits,
                            double scale);

// Data qubits used by extract_block for the given block set.
std::vector<Qubit> data_qubits(const Circuit& c, const std::vector<Qubit>& block_qubits);

// Maps a compact data index onto a full basis index with the given qubits.
std::uint64_t scatter_bits(std::uint64_t compact, const std::vector<Qubit>& qubits);
std::uint64_t gather_bits(std::uint64_t full, const std::vector<Qubit>& qubits);

// A circuit's action on the smallest basis-state set that contains the
// seeds and is closed under the circuit, stored column-compressed over a
// compact numbering of that set. Used to replay one circuit many times.
class SparseOperator {
 public:
  const std::vector<std::uint64_t>& support() const { return support_; }
  std::size_t dimension() const { return support_.size(); }
  std::size_t nonzeros() const { return values_.size(); }
  // Compact index of a basis state, or -1 when outside the support.
  std::int64_t index_of(std::uint64_t basis) const;
  // out = U * in over the compact numbering.
  void apply(const std::vector<Complex>& in, std::vector<Complex>& out) const;
  // Two vectors in one pass over the stored entries.
  void apply2(const std::vector<Complex>& in0, const std::vector<Complex>& in1,
              std::vector<Complex>& out0, std::vector<Complex>& out1) const;

  friend std::vector<SparseOperator> compile_reachable(const std::vector<const Circuit*>&,
                                                       const std::vector<std::uint64_t>&,
                                                       std::size_t, double);

 private:
  std::vector<std::uint64_t> support_;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::uint32_t> rows_;
  std::vector<Complex> values_;
};

inline constexpr double kCompileDrop = 1e-13;

// Throws SimError when the closure grows beyond max_support states.
SparseOperator compile_reachable(const Circuit& c, const std::vector<std::uint64_t>& seeds,
                                 std::size_t max_support = std::size_t{1} << 22,
                                 double drop = kCompileDrop);

// Several circuits over one support closed under all of them, in the
// order given; all operators share the same compact numbering.
std::vector<SparseOperator> compile_reachable(const std::vector<const Circuit*>& circuits,
                                              const std::vector<std::uint64_t>& seeds,
                                              std::size_t max_support = std::size_t{1} << 22,
                                              double drop = kCompileDrop);

// Worker count from VQLS_THREADS (default: hardware concurrency, at least 1).
unsigned thread_count();

// Runs fn(i) for i in [0, n) on up to thread_count() threads, in contiguous
// chunks. fn must only write to slots owned by i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace vqls::sim
