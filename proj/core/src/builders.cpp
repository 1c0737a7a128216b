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

#include "vqls/builders.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace vqls::circuit {

namespace {

constexpr double kNormTolerance = 1e-12;

using Cube = std::vector<Control>;  // sorted by qubit; empty cube is constant 1
using Esop = std::vector<Cube>;

bool multiply_cubes(const Cube& a, const Cube& b, Cube& out) {
  out = a;
  for (const Control& c : b) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Control& o) { return o.qubit == c.qubit; });
    if (it == out.end()) {
      out.push_back(c);
    } else if (it->on_one != c.on_one) {
      return false;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Control& l, const Control& r) { return l.qubit < r.qubit; });
  return true;
}

Esop multiply(const Esop& a, const Esop& b) {
  Esop out;
  for (const Cube& ca : a) {
    for (const Cube& cb : b) {
      Cube c;
      if (multiply_cubes(ca, cb, c)) out.push_back(std::move(c));
    }
  }
  return out;
}

Cube value_cube(const Register& reg, long long value) {
  const long long span = 1LL << reg.width();
  if (reg.numeric == Numeric::TwosComplement) {
    if (value < -span / 2 || value >= span / 2) {
      throw CircuitError("predicate constant out of range for register '" + reg.name + "'");
    }
  } else if (value < 0 || value >= span) {
    throw CircuitError("predicate constant out of range for register '" + reg.name + "'");
  }
  Cube c = value_controls(reg, value);
  std::sort(c.begin(), c.end(),
            [](const Control& l, const Control& r) { return l.qubit < r.qubit; });
  return c;
}

Esop expand(const Test& t) {
  if (t.reg.width() == 0) throw CircuitError("predicate on empty register");
  const Cube zero = value_cube(t.reg, 0);
  switch (t.cmp) {
    case Cmp::Eq:
      return {value_cube(t.reg, t.value)};
    case Cmp::Ne:
      return {Cube{}, value_cube(t.reg, t.value)};
    case Cmp::Gt0:
      if (t.value != 0) throw CircuitError("Gt0 test takes no constant");
      if (t.reg.numeric == Numeric::TwosComplement) {
        // sign = 0 and not all zero: [sign=0] xor [x=0]
        return {Cube{{t.reg.msb(), false}}, zero};
      }
      return {Cube{}, zero};
    case Cmp::Le0:
      if (t.value != 0) throw CircuitError("Le0 test takes no constant");
      if (t.reg.numeric == Numeric::TwosComplement) {
        // sign = 1 or all zero, disjoint
        return {Cube{{t.reg.msb(), true}}, zero};
      }
      return {zero};
  }
  throw CircuitError("unsupported predicate form");
}

}  // namespace

Circuit state_prep(const std::vector<double>& amplitudes, const Register& target) {
  const std::size_t w = target.width();
  if (w == 0) throw CircuitError("state_prep: empty register");
  if (amplitudes.size() != (std::size_t{1} << w)) {
    throw CircuitError("state_prep: table size " + std::to_string(amplitudes.size()) +
                       " does not match register width " + std::to_string(w));
  }
  double norm2 = 0.0;
  for (double a : amplitudes) norm2 += a * a;
  if (std::abs(std::sqrt(norm2) - 1.0) > kNormTolerance) {
    throw CircuitError("state_prep: amplitudes are not normalized (norm " +
                       std::to_string(std::sqrt(norm2)) + ")");
  }

  Circuit out;
  for (Qubit q : target.qubits) out.ensure_qubits(static_cast<std::size_t>(q) + 1);
  // Level l rotates qubit w-1-l, selected by the l qubits above it.
  for (std::size_t l = 0; l < w; ++l) {
    const std::size_t bit = w - 1 - l;
    const std::size_t groups = std::size_t{1} << l;
    const std::size_t block = std::size_t{1} << (bit + 1);  // indices per group
    const std::size_t half = block / 2;
    const bool last = bit == 0;
    std::vector<double> angles(groups, 0.0);
    for (std::size_t g = 0; g < groups; ++g) {
      // Group g fixes the top l bits to g; its indices are g*block + [0, block).
      const std::size_t base = g * block;
      if (last) {
        angles[g] = 2.0 * std::atan2(amplitudes[base + 1], amplitudes[base]);
      } else {
        double n0 = 0.0, n1 = 0.0;
        for (std::size_t i = 0; i < half; ++i) {
          n0 += amplitudes[base + i] * amplitudes[base + i];
          n1 += amplitudes[base + half + i] * amplitudes[base + half + i];
        }
        angles[g] = 2.0 * std::atan2(std::sqrt(n1), std::sqrt(n0));
      }
    }
    if (std::all_of(angles.begin(), angles.end(), [](double a) { return a == 0.0; })) continue;
    if (l == 0) {
      out.ry(target.qubits[bit], angles[0]);
    } else {
      MultiplexedRY m;
      m.select.assign(target.qubits.begin() + static_cast<std::ptrdiff_t>(bit + 1),
                      target.qubits.end());
      m.target = target.qubits[bit];
      m.angles = std::move(angles);
      out.push(Op{std::move(m), {}});
    }
  }
  return out;
}

Circuit amplitude_assign(const std::vector<double>& eta, const Register& source, Qubit flag) {
  if (eta.size() != (std::size_t{1} << source.width())) {
    throw CircuitError("amplitude_assign: table size does not match register width");
  }
  MultiplexedRY m;
  m.select = source.qubits;
  m.target = flag;
  m.angles.reserve(eta.size());
  for (double e : eta) {
    if (std::abs(e) > 1.0 + kNormTolerance) {
      throw CircuitError("amplitude_assign: |eta| = " + std::to_string(std::abs(e)) + " > 1");
    }
    m.angles.push_back(2.0 * std::asin(std::clamp(e, -1.0, 1.0)));
  }
  Circuit out;
  out.push(Op{std::move(m), {}});
  return out;
}

Circuit inplace_add_const(long long k, const Register& target, AdderStyle style) {
  if (target.width() == 0) throw CircuitError("inplace_add_const: empty register");
  Circuit out;
  for (Qubit q : target.qubits) out.ensure_qubits(static_cast<std::size_t>(q) + 1);
  const long long span = target.width() >= 62 ? 0 : (1LL << target.width());
  const long long kk = span ? ((k % span) + span) % span : k;
  if (kk == 0) return out;
  out.push(Op{AddConst{target.qubits, k, style}, {}});
  return out;
}

Circuit xor_predicate(const Predicate& predicate, Qubit flag) {
  if (predicate.empty()) throw CircuitError("xor_predicate: empty predicate");
  Esop acc{Cube{}};
  for (const Test& t : predicate) {
    for (Qubit q : t.reg.qubits) {
      if (q == flag) throw CircuitError("xor_predicate: flag is part of a tested register");
    }
    acc = multiply(acc, expand(t));
  }
  // x xor x = 0: cancel duplicate cubes pairwise.
  std::map<std::vector<std::pair<Qubit, bool>>, int> parity;
  std::vector<std::vector<std::pair<Qubit, bool>>> order;
  for (const Cube& c : acc) {
    std::vector<std::pair<Qubit, bool>> key;
    for (const Control& k : c) key.emplace_back(k.qubit, k.on_one);
    if (parity[key]++ == 0) order.push_back(key);
  }
  Circuit out;
  out.ensure_qubits(static_cast<std::size_t>(flag) + 1);
  for (const auto& key : order) {
    if (parity[key] % 2 == 0) continue;
    std::vector<Control> controls;
    for (const auto& [q, one] : key) controls.push_back({q, one});
    out.x(flag, std::move(controls));
  }
  return out;
}

}  // namespace vqls::circuit
