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

// Gate-level circuit IR.
//
// Qubits are global indices into one circuit. Registers group qubits
// little-endian (qubits[0] is the least significant bit) and carry a numeric
// interpretation used by value conditions and predicates. Besides plain
// gates the IR keeps three composite ops that the simulator executes
// directly and the lowering pass expands: constant addition, a uniformly
// controlled RY, and a conjugation outer * inner * outer^-1. Every op may
// carry controls with per-control polarity.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace vqls::circuit {

using Qubit = int;

class CircuitError : public std::runtime_error {
 public:
  explicit CircuitError(const std::string& message) : std::runtime_error(message) {}
};

enum class RegisterKind { Data, Block, Ancilla };
enum class Numeric { Unsigned, TwosComplement };

struct Register {
  std::string name;
  std::vector<Qubit> qubits;  // little-endian
  RegisterKind kind = RegisterKind::Data;
  Numeric numeric = Numeric::Unsigned;

  std::size_t width() const { return qubits.size(); }
  Qubit operator[](std::size_t i) const { return qubits.at(i); }
  Qubit msb() const { return qubits.back(); }
  // Contiguous sub-register [first, first + count).
  Register slice(std::size_t first, std::size_t count) const;
};

struct Control {
  Qubit qubit = 0;
  bool on_one = true;  // false: fires when the qubit is |0>

  friend bool operator==(const Control&, const Control&) = default;
};

enum class GateKind { X, H, Z, RY, RZ, Phase, GlobalPhase };

// RY(t) = exp(-i t Y/2), RZ(t) = diag(e^{-it/2}, e^{it/2}),
// Phase(t) = diag(1, e^{it}), GlobalPhase(t) = e^{it} (no target).
struct Gate {
  GateKind kind = GateKind::X;
  Qubit target = -1;
  double angle = 0.0;
};

enum class AdderStyle { Qft, Ripple };

// |m> -> |m + addend mod 2^width> on the target qubits. The style only
// matters for lowering.
struct AddConst {
  std::vector<Qubit> target;
  long long addend = 0;
  AdderStyle style = AdderStyle::Qft;
};

// RY(angles[s]) on target where s is the value of the select qubits.
struct MultiplexedRY {
  std::vector<Qubit> select;  // little-endian
  Qubit target = -1;
  std::vector<double> angles;  // size 2^select.size()
};

class Circuit;

// outer, inner, outer^-1. Controls on the enclosing op apply to the whole
// conjugation; an outer that is disjoint from the controls may be left
// uncontrolled without changing the unitary.
struct Within {
  std::shared_ptr<const Circuit> outer;
  std::shared_ptr<const Circuit> inner;
};

struct Op {
  std::variant<Gate, AddConst, MultiplexedRY, Within> body;
  std::vector<Control> controls;

  // Qubits touched by the body (excluding controls), sorted and unique.
  std::vector<Qubit> body_qubits() const;
  // Body qubits plus control qubits, sorted and unique.
  std::vector<Qubit> qubits() const;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  std::size_t num_qubits() const { return num_qubits_; }
  void ensure_qubits(std::size_t n) {
    if (n > num_qubits_) num_qubits_ = n;
  }

  // Allocates `width` fresh qubits at the end of the circuit.
  const Register& add_register(const std::string& name, std::size_t width,
                               RegisterKind kind,
                               Numeric numeric = Numeric::Unsigned);
  // Declares a register over existing or new qubit indices.
  const Register& declare_register(Register reg);

  const std::vector<Register>& registers() const { return registers_; }
  const Register* find_register(const std::string& name) const;
  const Register& reg(const std::string& name) const;
  // Qubits of all registers of the given kind, ascending.
  std::vector<Qubit> qubits_of_kind(RegisterKind kind) const;

  const std::vector<Op>& ops() const { return ops_; }
  bool empty() const { return ops_.empty(); }
  std::size_t size() const { return ops_.size(); }

  void push(Op op);
  void gate(GateKind kind, Qubit target, double angle = 0.0,
            std::vector<Control> controls = {});
  void x(Qubit q, std::vector<Control> controls = {}) { gate(GateKind::X, q, 0.0, std::move(controls)); }
  void h(Qubit q) { gate(GateKind::H, q); }
  void z(Qubit q) { gate(GateKind::Z, q); }
  void ry(Qubit q, double angle) { gate(GateKind::RY, q, angle); }
  void rz(Qubit q, double angle) { gate(GateKind::RZ, q, angle); }
  void phase(Qubit q, double angle) { gate(GateKind::Phase, q, angle); }
  void global_phase(double angle);
  void cx(Qubit control, Qubit target) { x(target, {{control, true}}); }

  // Appends the ops of `other`; its registers are merged by name.
  void append(const Circuit& other);

  // Throws CircuitError on out-of-range qubits, control/target collisions,
  // overlapping registers or malformed composite ops.
  void validate() const;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<Register> registers_;
  std::vector<Op> ops_;
};

// Controls that fire when `reg` holds `value` (unsigned bit pattern of the
// register's width; negative values are taken mod 2^width).
std::vector<Control> value_controls(const Register& reg, long long value);

Circuit control_on(const std::vector<Control>& controls, const Circuit& body);
inline Circuit control_on(Qubit q, const Circuit& body) {
  return control_on(std::vector<Control>{{q, true}}, body);
}
inline Circuit control_on(const Register& reg, long long value, const Circuit& body) {
  return control_on(value_controls(reg, value), body);
}

Circuit invert(const Circuit& body);

// Renames every qubit q to map(q) in ops and registers. The result has
// num_qubits = max(new_width, highest mapped qubit + 1).
Circuit relabel(const Circuit& c, const std::function<Qubit(Qubit)>& map,
                std::size_t new_width = 0);
Circuit conjugate(const Circuit& outer, const Circuit& inner);

// Gate-count helpers used by tests and reports (composite ops count as 1).
std::size_t count_ops(const Circuit& c);

const char* to_string(GateKind kind);
const char* to_string(RegisterKind kind);
const char* to_string(Numeric numeric);

}  // namespace vqls::circuit
