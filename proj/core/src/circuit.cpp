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

#include "vqls/circuit.hpp"

#include <algorithm>
#include <set>

namespace vqls::circuit {

namespace {

void collect_body_qubits(const Op& op, std::vector<Qubit>& out);

void collect_circuit_qubits(const Circuit& c, std::vector<Qubit>& out) {
  for (const Op& op : c.ops()) {
    collect_body_qubits(op, out);
    for (const Control& ctl : op.controls) out.push_back(ctl.qubit);
  }
}

void collect_body_qubits(const Op& op, std::vector<Qubit>& out) {
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Gate>) {
          if (b.kind != GateKind::GlobalPhase) out.push_back(b.target);
        } else if constexpr (std::is_same_v<T, AddConst>) {
          out.insert(out.end(), b.target.begin(), b.target.end());
        } else if constexpr (std::is_same_v<T, MultiplexedRY>) {
          out.insert(out.end(), b.select.begin(), b.select.end());
          out.push_back(b.target);
        } else {
          collect_circuit_qubits(*b.outer, out);
          collect_circuit_qubits(*b.inner, out);
        }
      },
      op.body);
}

void sort_unique(std::vector<Qubit>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::size_t max_qubit_plus_one(const Op& op) {
  const auto q = op.qubits();
  return q.empty() ? 0 : static_cast<std::size_t>(q.back()) + 1;
}

Op invert_op(const Op& op) {
  Op out;
  out.controls = op.controls;
  out.body = std::visit(
      [](const auto& b) -> decltype(Op::body) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Gate>) {
          Gate g = b;
          if (g.kind != GateKind::X && g.kind != GateKind::H && g.kind != GateKind::Z) {
            g.angle = -g.angle;
          }
          return g;
        } else if constexpr (std::is_same_v<T, AddConst>) {
          AddConst a = b;
          a.addend = -a.addend;
          return a;
        } else if constexpr (std::is_same_v<T, MultiplexedRY>) {
          MultiplexedRY m = b;
          for (double& a : m.angles) a = -a;
          return m;
        } else {
          return Within{b.outer, std::make_shared<const Circuit>(invert(*b.inner))};
        }
      },
      op.body);
  return out;
}

}  // namespace

Register Register::slice(std::size_t first, std::size_t count) const {
  if (first + count > qubits.size() || count == 0) {
    throw CircuitError("Register::slice out of range on '" + name + "'");
  }
  Register r = *this;
  r.qubits.assign(qubits.begin() + static_cast<std::ptrdiff_t>(first),
                  qubits.begin() + static_cast<std::ptrdiff_t>(first + count));
  r.numeric = Numeric::Unsigned;
  return r;
}

std::vector<Qubit> Op::body_qubits() const {
  std::vector<Qubit> q;
  collect_body_qubits(*this, q);
  sort_unique(q);
  return q;
}

std::vector<Qubit> Op::qubits() const {
  std::vector<Qubit> q;
  collect_body_qubits(*this, q);
  for (const Control& c : controls) q.push_back(c.qubit);
  sort_unique(q);
  return q;
}

const Register& Circuit::add_register(const std::string& name, std::size_t width,
                                      RegisterKind kind, Numeric numeric) {
  if (width == 0) throw CircuitError("register '" + name + "' has zero width");
  Register r;
  r.name = name;
  r.kind = kind;
  r.numeric = numeric;
  for (std::size_t i = 0; i < width; ++i) r.qubits.push_back(static_cast<Qubit>(num_qubits_ + i));
  return declare_register(std::move(r));
}

const Register& Circuit::declare_register(Register reg) {
  if (reg.qubits.empty()) throw CircuitError("register '" + reg.name + "' has zero width");
  if (find_register(reg.name)) throw CircuitError("duplicate register '" + reg.name + "'");
  for (const Register& other : registers_) {
    for (Qubit q : reg.qubits) {
      if (std::find(other.qubits.begin(), other.qubits.end(), q) != other.qubits.end()) {
        throw CircuitError("register '" + reg.name + "' overlaps '" + other.name + "'");
      }
    }
  }
  for (Qubit q : reg.qubits) {
    if (q < 0) throw CircuitError("negative qubit index in register '" + reg.name + "'");
    ensure_qubits(static_cast<std::size_t>(q) + 1);
  }
  registers_.push_back(std::move(reg));
  return registers_.back();
}

const Register* Circuit::find_register(const std::string& name) const {
  for (const Register& r : registers_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const Register& Circuit::reg(const std::string& name) const {
  const Register* r = find_register(name);
  if (!r) throw CircuitError("no register named '" + name + "'");
  return *r;
}

std::vector<Qubit> Circuit::qubits_of_kind(RegisterKind kind) const {
  std::vector<Qubit> out;
  for (const Register& r : registers_) {
    if (r.kind == kind) out.insert(out.end(), r.qubits.begin(), r.qubits.end());
  }
  sort_unique(out);
  return out;
}

void Circuit::push(Op op) {
  ensure_qubits(max_qubit_plus_one(op));
  ops_.push_back(std::move(op));
}

void Circuit::gate(GateKind kind, Qubit target, double angle, std::vector<Control> controls) {
  push(Op{Gate{kind, target, angle}, std::move(controls)});
}

void Circuit::global_phase(double angle) {
  push(Op{Gate{GateKind::GlobalPhase, -1, angle}, {}});
}

void Circuit::append(const Circuit& other) {
  for (const Register& r : other.registers_) {
    if (const Register* mine = find_register(r.name)) {
      if (mine->qubits != r.qubits) {
        throw CircuitError("append: register '" + r.name + "' differs between circuits");
      }
    } else {
      declare_register(r);
    }
  }
  ensure_qubits(other.num_qubits_);
  ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
}

namespace {

void validate_ops(const Circuit& c, std::size_t width) {
  auto in_range = [&](Qubit q) { return q >= 0 && static_cast<std::size_t>(q) < width; };
  for (const Op& op : c.ops()) {
    std::vector<Qubit> body = op.body_qubits();
    std::set<Qubit> ctl;
    for (const Control& k : op.controls) {
      if (!in_range(k.qubit)) throw CircuitError("control qubit out of range");
      if (!ctl.insert(k.qubit).second) throw CircuitError("duplicate control qubit");
      if (std::binary_search(body.begin(), body.end(), k.qubit)) {
        throw CircuitError("control qubit " + std::to_string(k.qubit) + " collides with target");
      }
    }
    for (Qubit q : body) {
      if (!in_range(q)) throw CircuitError("qubit " + std::to_string(q) + " out of range");
    }
    if (const auto* g = std::get_if<Gate>(&op.body)) {
      if (g->kind != GateKind::GlobalPhase && g->target < 0) throw CircuitError("gate without target");
    } else if (const auto* a = std::get_if<AddConst>(&op.body)) {
      if (a->target.empty()) throw CircuitError("AddConst with empty target");
      std::set<Qubit> t(a->target.begin(), a->target.end());
      if (t.size() != a->target.size()) throw CircuitError("AddConst repeats a qubit");
    } else if (const auto* m = std::get_if<MultiplexedRY>(&op.body)) {
      if (m->angles.size() != (std::size_t{1} << m->select.size())) {
        throw CircuitError("MultiplexedRY angle table has wrong size");
      }
      std::set<Qubit> s(m->select.begin(), m->select.end());
      if (s.size() != m->select.size() || s.count(m->target)) {
        throw CircuitError("MultiplexedRY select/target overlap");
      }
    } else {
      const auto& w = std::get<Within>(op.body);
      if (!w.outer || !w.inner) throw CircuitError("Within with null part");
      validate_ops(*w.outer, width);
      validate_ops(*w.inner, width);
    }
  }
}

}  // namespace

void Circuit::validate() const {
  std::set<Qubit> seen;
  for (const Register& r : registers_) {
    for (Qubit q : r.qubits) {
      if (q < 0 || static_cast<std::size_t>(q) >= num_qubits_) {
        throw CircuitError("register '" + r.name + "' out of range");
      }
      if (!seen.insert(q).second) throw CircuitError("qubit shared between registers");
    }
  }
  validate_ops(*this, num_qubits_);
  if (!registers_.empty()) {
    std::vector<Qubit> used;
    collect_circuit_qubits(*this, used);
    for (Qubit q : used) {
      if (!seen.count(q)) {
        throw CircuitError("qubit " + std::to_string(q) + " is not in any declared register");
      }
    }
  }
}

std::vector<Control> value_controls(const Register& reg, long long value) {
  const std::size_t w = reg.width();
  const auto bits = static_cast<unsigned long long>(value) &
                    (w >= 64 ? ~0ULL : ((1ULL << w) - 1));
  std::vector<Control> out;
  for (std::size_t i = 0; i < w; ++i) out.push_back({reg.qubits[i], ((bits >> i) & 1ULL) != 0});
  return out;
}

Circuit control_on(const std::vector<Control>& controls, const Circuit& body) {
  Circuit out(body.num_qubits());
  for (const Register& r : body.registers()) out.declare_register(r);
  for (const Control& c : controls) out.ensure_qubits(static_cast<std::size_t>(c.qubit) + 1);
  for (Op op : body.ops()) {
    const auto bq = op.qubits();
    for (const Control& c : controls) {
      if (std::binary_search(bq.begin(), bq.end(), c.qubit)) {
        throw CircuitError("control_on: control qubit " + std::to_string(c.qubit) +
                           " is used by the body");
      }
    }
    op.controls.insert(op.controls.begin(), controls.begin(), controls.end());
    out.push(std::move(op));
  }
  return out;
}

Circuit invert(const Circuit& body) {
  Circuit out(body.num_qubits());
  for (const Register& r : body.registers()) out.declare_register(r);
  for (auto it = body.ops().rbegin(); it != body.ops().rend(); ++it) out.push(invert_op(*it));
  return out;
}

namespace {

Op relabel_op(const Op& op, const std::function<Qubit(Qubit)>& map) {
  Op out;
  for (const Control& c : op.controls) out.controls.push_back({map(c.qubit), c.on_one});
  out.body = std::visit(
      [&](const auto& b) -> decltype(Op::body) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Gate>) {
          Gate g = b;
          if (g.kind != GateKind::GlobalPhase) g.target = map(g.target);
          return g;
        } else if constexpr (std::is_same_v<T, AddConst>) {
          AddConst a = b;
          for (Qubit& q : a.target) q = map(q);
          return a;
        } else if constexpr (std::is_same_v<T, MultiplexedRY>) {
          MultiplexedRY m = b;
          for (Qubit& q : m.select) q = map(q);
          m.target = map(m.target);
          return m;
        } else {
          return Within{std::make_shared<const Circuit>(relabel(*b.outer, map)),
                        std::make_shared<const Circuit>(relabel(*b.inner, map))};
        }
      },
      op.body);
  return out;
}

}  // namespace

Circuit relabel(const Circuit& c, const std::function<Qubit(Qubit)>& map, std::size_t new_width) {
  Circuit out(new_width);
  for (Register r : c.registers()) {
    for (Qubit& q : r.qubits) q = map(q);
    out.declare_register(std::move(r));
  }
  for (const Op& op : c.ops()) out.push(relabel_op(op, map));
  return out;
}

Circuit conjugate(const Circuit& outer, const Circuit& inner) {
  Circuit out(std::max(outer.num_qubits(), inner.num_qubits()));
  out.push(Op{Within{std::make_shared<const Circuit>(outer), std::make_shared<const Circuit>(inner)}, {}});
  return out;
}

std::size_t count_ops(const Circuit& c) { return c.size(); }

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::Z: return "Z";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::Phase: return "PHASE";
    case GateKind::GlobalPhase: return "GPHASE";
  }
  return "?";
}

const char* to_string(RegisterKind kind) {
  switch (kind) {
    case RegisterKind::Data: return "data";
    case RegisterKind::Block: return "block";
    case RegisterKind::Ancilla: return "ancilla";
  }
  return "?";
}

const char* to_string(Numeric numeric) {
  return numeric == Numeric::Unsigned ? "unsigned" : "twos";
}

}  // namespace vqls::circuit
