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
#include "vqls/lower.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

namespace vqls::lower {

using circuit::AddConst;
using circuit::Control;
using circuit::Gate;
using circuit::GateKind;
using circuit::MultiplexedRY;
using circuit::Op;
using circuit::Qubit;
using circuit::Register;
using circuit::RegisterKind;
using circuit::Within;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-12;

// 2x2 unitary, row-major.
struct U2 {
  Complex a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};
};

U2 adjoint(const U2& u) { return {std::conj(u.a), std::conj(u.c), std::conj(u.b), std::conj(u.d)}; }

U2 gate_matrix(GateKind kind, double t) {
  const Complex i(0.0, 1.0);
  switch (kind) {
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2.0;
      return {r, r, r, -r};
    }
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::RY: return {std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2)};
    case GateKind::RZ: return {std::exp(-i * (t / 2)), 0.0, 0.0, std::exp(i * (t / 2))};
    case GateKind::Phase: return {1.0, 0.0, 0.0, std::exp(i * t)};
    case GateKind::GlobalPhase: return {std::exp(i * t), 0.0, 0.0, std::exp(i * t)};
  }
  throw LoweringError("unknown gate kind");
}

// Principal square root: (U + s I) / sqrt(tr U + 2 s) with s^2 = det U.
U2 sqrt_u2(const U2& u) {
  Complex s = std::sqrt(u.a * u.d - u.b * u.c);
  Complex t = std::sqrt(u.a + u.d + 2.0 * s);
  if (std::abs(t) < 1e-9) {
    s = -s;
    t = std::sqrt(u.a + u.d + 2.0 * s);
  }
  return {(u.a + s) / t, u.b / t, u.c / t, (u.d + s) / t};
}

// U = e^{i alpha} RZ(beta) RY(gamma) RZ(delta).
struct Zyz {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
};

Zyz zyz(const U2& u) {
  Zyz z;
  z.alpha = std::arg(u.a * u.d - u.b * u.c) / 2.0;
  const Complex ph = std::exp(Complex(0.0, -z.alpha));
  const Complex a = u.a * ph;
  const Complex c = u.c * ph;
  z.gamma = 2.0 * std::atan2(std::abs(c), std::abs(a));
  const double sum = std::abs(a) > 1e-14 ? -2.0 * std::arg(a) : 0.0;
  const double diff = std::abs(c) > 1e-14 ? 2.0 * std::arg(c) : 0.0;
  z.beta = (sum + diff) / 2.0;
  z.delta = (sum - diff) / 2.0;
  return z;
}

enum class Tag { Generic, X, Z, Scalar };

// A single-qubit operation with its IR gate when it has one.
struct Unitary1 {
  U2 m;
  Tag tag = Tag::Generic;
  std::optional<Gate> gate;  // target field unused

  static Unitary1 of(GateKind kind, double angle) {
    Unitary1 u;
    u.m = gate_matrix(kind, angle);
    u.gate = Gate{kind, -1, angle};
    if (kind == GateKind::X) u.tag = Tag::X;
    if (kind == GateKind::Z) u.tag = Tag::Z;
    if (kind == GateKind::GlobalPhase) u.tag = Tag::Scalar;
    return u;
  }
  static Unitary1 generic(const U2& m) {
    Unitary1 u;
    u.m = m;
    if (std::abs(m.b) < 1e-15 && std::abs(m.c) < 1e-15 && std::abs(m.a - m.d) < 1e-15) {
      u.tag = Tag::Scalar;
    }
    return u;
  }
};

double period(GateKind k) { return k == GateKind::Phase || k == GateKind::GlobalPhase ? 2 * kPi : 4 * kPi; }

bool negligible(GateKind k, double angle) {
  const double p = period(k);
  double r = std::fmod(angle, p);
  if (r < 0) r += p;
  return r < kAngleTol || p - r < kAngleTol;
}

bool is_rotation(GateKind k) {
  return k == GateKind::RY || k == GateKind::RZ || k == GateKind::Phase;
}

bool is_involution(GateKind k) { return k == GateKind::X || k == GateKind::H || k == GateKind::Z; }

// Emitted basis gate; control >= 0 only for CX.
struct BasisGate {
  GateKind kind = GateKind::X;
  Qubit target = -1;
  Qubit control = -1;
  double angle = 0.0;
};

using Ctls = std::vector<Control>;

std::uint64_t reduce_addend(long long k, std::size_t n) {
  if (n >= 63) throw LoweringError("adder register too wide");
  const long long m = 1LL << n;
  return static_cast<std::uint64_t>(((k % m) + m) % m);
}

class Lowerer {
 public:
  Lowerer(const Circuit& src, const LowerOptions& options)
      : src_(src), options_(options), base_(src.num_qubits()) {
    stacks_.resize(base_);
  }

  Circuit run() {
    lower_circuit(src_, {});
    Circuit out(base_ + max_used_);
    for (const Register& r : src_.registers()) out.declare_register(r);
    if (max_used_ > 0) {
      Register anc;
      anc.name = "anc";
      anc.kind = RegisterKind::Ancilla;
      for (std::size_t i = 0; i < max_used_; ++i) anc.qubits.push_back(static_cast<Qubit>(base_ + i));
      out.declare_register(std::move(anc));
    }
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      if (!alive_[i]) continue;
      const BasisGate& g = gates_[i];
      if (g.control >= 0) {
        out.cx(g.control, g.target);
      } else {
        out.gate(g.kind, g.target, g.angle);
      }
    }
    if (!negligible(GateKind::GlobalPhase, global_phase_)) out.global_phase(global_phase_);
    return out;
  }

 private:
  bool optimized() const { return options_.strategy == Strategy::Optimized; }

  // ---- emission and peephole ----

  std::vector<std::size_t>& stack(Qubit q) {
    if (static_cast<std::size_t>(q) >= stacks_.size()) stacks_.resize(q + 1);
    return stacks_[q];
  }

  std::optional<std::size_t> top(Qubit q) {
    auto& s = stack(q);
    if (s.empty()) return std::nullopt;
    return s.back();
  }

  void kill(std::size_t j) {
    alive_[j] = false;
    stack(gates_[j].target).pop_back();
    if (gates_[j].control >= 0) stack(gates_[j].control).pop_back();
  }

  void emit(BasisGate g) {
    if (g.kind == GateKind::GlobalPhase) {
      global_phase_ += g.angle;
      return;
    }
    if (is_rotation(g.kind) && negligible(g.kind, g.angle)) return;
    if (optimized()) {
      const auto t = top(g.target);
      if (t && (g.control < 0 || top(g.control) == t)) {
        BasisGate& p = gates_[*t];
        if (g.control >= 0) {
          if (p.control == g.control && p.target == g.target) {
            kill(*t);
            return;
          }
        } else if (p.control < 0 && p.kind == g.kind) {
          if (is_involution(g.kind)) {
            kill(*t);
            return;
          }
          if (is_rotation(g.kind)) {
            p.angle += g.angle;
            if (negligible(p.kind, p.angle)) kill(*t);
            return;
          }
        }
      }
    }
    const std::size_t j = gates_.size();
    gates_.push_back(g);
    alive_.push_back(true);
    stack(g.target).push_back(j);
    if (g.control >= 0) stack(g.control).push_back(j);
  }

  void g1(GateKind k, Qubit t, double a = 0.0) { emit({k, t, -1, a}); }
  void cx(Qubit c, Qubit t) { emit({GateKind::X, t, c, 0.0}); }

  // ---- ancillas ----

  bool can_acquire(std::size_t n) const {
    return optimized() && used_ + n <= options_.ancilla_budget;
  }

  Qubit acquire() {
    const Qubit q = static_cast<Qubit>(base_ + used_);
    ++used_;
    max_used_ = std::max(max_used_, used_);
    return q;
  }

  void release(std::size_t n) { used_ -= n; }

  // ---- elementary constructions on positive controls ----

  void single(Qubit t, const Unitary1& u) {
    if (u.gate) {
      g1(u.gate->kind, t, u.gate->angle);
      return;
    }
    const Zyz z = zyz(u.m);
    g1(GateKind::RZ, t, z.delta);
    g1(GateKind::RY, t, z.gamma);
    g1(GateKind::RZ, t, z.beta);
    g1(GateKind::GlobalPhase, t, z.alpha);
  }

  void controlled(Qubit c, Qubit t, const Unitary1& u) {
    switch (u.tag) {
      case Tag::X:
        cx(c, t);
        return;
      case Tag::Z:
        g1(GateKind::H, t);
        cx(c, t);
        g1(GateKind::H, t);
        return;
      case Tag::Scalar:
        g1(GateKind::Phase, c, std::arg(u.m.a));
        return;
      case Tag::Generic:
        break;
    }
    if (u.gate) {
      const double a = u.gate->angle;
      switch (u.gate->kind) {
        case GateKind::RY:
        case GateKind::RZ:
          g1(u.gate->kind, t, a / 2);
          cx(c, t);
          g1(u.gate->kind, t, -a / 2);
          cx(c, t);
          return;
        case GateKind::Phase:
          g1(GateKind::Phase, c, a / 2);
          cx(c, t);
          g1(GateKind::Phase, t, -a / 2);
          cx(c, t);
          g1(GateKind::Phase, t, a / 2);
          return;
        case GateKind::H:
          g1(GateKind::RY, t, -kPi / 4);
          g1(GateKind::H, t);
          cx(c, t);
          g1(GateKind::H, t);
          g1(GateKind::RY, t, kPi / 4);
          return;
        default:
          break;
      }
    }
    // U = e^{ia} A X B X C with ABC = I.
    const Zyz z = zyz(u.m);
    g1(GateKind::RZ, t, (z.delta - z.beta) / 2);
    cx(c, t);
    g1(GateKind::RZ, t, -(z.delta + z.beta) / 2);
    g1(GateKind::RY, t, -z.gamma / 2);
    cx(c, t);
    g1(GateKind::RY, t, z.gamma / 2);
    g1(GateKind::RZ, t, z.beta);
    g1(GateKind::Phase, c, z.alpha);
  }

  void toffoli(Qubit c1, Qubit c2, Qubit t) {
    const double q = kPi / 4;
    g1(GateKind::H, t);
    cx(c2, t);
    g1(GateKind::Phase, t, -q);
    cx(c1, t);
    g1(GateKind::Phase, t, q);
    cx(c2, t);
    g1(GateKind::Phase, t, -q);
    cx(c1, t);
    g1(GateKind::Phase, c2, q);
    g1(GateKind::Phase, t, q);
    g1(GateKind::H, t);
    cx(c1, c2);
    g1(GateKind::Phase, c1, q);
    g1(GateKind::Phase, c2, -q);
    cx(c1, c2);
  }

  // Toffoli up to a diagonal phase on the controls; only used in
  // compute / uncompute pairs around ops that read the target.
  void rtof(Qubit c1, Qubit c2, Qubit t, bool inverse) {
    const double q = inverse ? -kPi / 4 : kPi / 4;
    if (!inverse) {
      g1(GateKind::RY, t, q);
      cx(c2, t);
      g1(GateKind::RY, t, q);
      cx(c1, t);
      g1(GateKind::RY, t, -q);
      cx(c2, t);
      g1(GateKind::RY, t, -q);
    } else {
      g1(GateKind::RY, t, -q);
      cx(c2, t);
      g1(GateKind::RY, t, -q);
      cx(c1, t);
      g1(GateKind::RY, t, q);
      cx(c2, t);
      g1(GateKind::RY, t, q);
    }
  }

  // C^m X with m - 2 dirty qubits: 4(m - 2) Toffolis.
  void mcx_dirty(const std::vector<Qubit>& c, Qubit t, const std::vector<Qubit>& dirty) {
    const std::size_t m = c.size();
    if (m == 1) return cx(c[0], t);
    if (m == 2) return toffoli(c[0], c[1], t);
    if (dirty.size() < m - 2) throw LoweringError("mcx_dirty: not enough borrowed qubits");
    const auto a = [&](std::size_t i) { return dirty[i - 1]; };  // a_1 .. a_{m-2}
    const auto ladder_down = [&] {
      for (std::size_t i = m - 1; i >= 3; --i) toffoli(c[i - 1], a(i - 2), a(i - 1));
    };
    const auto ladder_up = [&] {
      for (std::size_t i = 3; i <= m - 1; ++i) toffoli(c[i - 1], a(i - 2), a(i - 1));
    };
    for (int pass = 0; pass < 2; ++pass) {
      toffoli(c[m - 1], a(m - 2), t);
      ladder_down();
      toffoli(c[0], c[1], a(1));
      ladder_up();
    }
  }

  // C^m X with one dirty qubit: split the controls and use each half as
  // borrowed qubits for the other.
  void mcx_borrowed(const std::vector<Qubit>& c, Qubit t, Qubit borrowed) {
    const std::size_t m = c.size();
    if (m <= 2) return mcx_dirty(c, t, {});
    const std::size_t m1 = (m + 1) / 2;
    std::vector<Qubit> g1s(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(m1));
    std::vector<Qubit> g2s(c.begin() + static_cast<std::ptrdiff_t>(m1), c.end());
    std::vector<Qubit> g2a = g2s;
    g2a.push_back(borrowed);
    std::vector<Qubit> dirty1 = g2s;
    dirty1.push_back(t);
    for (int pass = 0; pass < 2; ++pass) {
      mcx_dirty(g1s, borrowed, dirty1);
      mcx_dirty(g2a, t, g1s);
    }
  }

  // ---- AND chains ----

  struct Chain {
    Qubit out = -1;
    std::vector<std::array<Qubit, 3>> steps;
  };

  Chain compute_and(const std::vector<Qubit>& c) {
    Chain ch;
    ch.out = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) {
      const Qubit a = acquire();
      rtof(ch.out, c[i], a, false);
      ch.steps.push_back({ch.out, c[i], a});
      ch.out = a;
    }
    return ch;
  }

  void uncompute(const Chain& ch) {
    for (auto it = ch.steps.rbegin(); it != ch.steps.rend(); ++it) rtof((*it)[0], (*it)[1], (*it)[2], true);
    release(ch.steps.size());
  }

  // ---- multi-controlled gates ----

  void mcu(const std::vector<Qubit>& c, Qubit t, const Unitary1& u) {
    const std::size_t n = c.size();
    if (n == 0) return single(t, u);
    if (n == 1) return controlled(c[0], t, u);
    if (u.tag == Tag::X && n == 2) return toffoli(c[0], c[1], t);
    if (u.tag == Tag::X && can_acquire(n - 2)) {
      const Chain ch = compute_and({c.begin(), c.end() - 1});
      toffoli(ch.out, c.back(), t);
      uncompute(ch);
      return;
    }
    if (u.tag != Tag::X && can_acquire(n - 1)) {
      const Chain ch = compute_and(c);
      controlled(ch.out, t, u);
      uncompute(ch);
      return;
    }
    if (u.tag == Tag::X && optimized()) {
      if (const auto b = borrowable(c, t)) return mcx_borrowed(c, t, *b);
    }
    // C^n U = CV(c_n) . C^(n-1)X(c_n) . CV^+(c_n) . C^(n-1)X(c_n) . C^(n-1)V,
    // the inner C^(n-1)X borrowing t.
    const U2 v = sqrt_u2(u.m);
    const Unitary1 uv = Unitary1::generic(v);
    const Unitary1 uvd = Unitary1::generic(adjoint(v));
    const std::vector<Qubit> rest(c.begin(), c.end() - 1);
    const Qubit cn = c.back();
    controlled(cn, t, uv);
    mcx_borrowed(rest, cn, t);
    controlled(cn, t, uvd);
    mcx_borrowed(rest, cn, t);
    mcu(rest, t, uv);
  }

  std::optional<Qubit> borrowable(const std::vector<Qubit>& c, Qubit t) const {
    for (Qubit q = 0; q < static_cast<Qubit>(base_); ++q) {
      if (q != t && std::find(c.begin(), c.end(), q) == c.end()) return q;
    }
    return std::nullopt;
  }

  template <class Fn>
  void with_polarity(const Ctls& ctls, Fn&& fn) {
    std::vector<Qubit> pos;
    for (const Control& k : ctls) {
      if (!k.on_one) g1(GateKind::X, k.qubit);
      pos.push_back(k.qubit);
    }
    fn(pos);
    for (const Control& k : ctls) {
      if (!k.on_one) g1(GateKind::X, k.qubit);
    }
  }

  void mc(const Ctls& ctls, Qubit t, const Unitary1& u) {
    if (ctls.empty()) return single(t, u);
    with_polarity(ctls, [&](const std::vector<Qubit>& pos) { mcu(pos, t, u); });
  }

  // Runs body(ctl) with the controls folded into one positive control, or
  // returns false when the ancillas for that are not available.
  template <class Fn>
  bool hoisted(const Ctls& ctls, Fn&& body) {
    if (ctls.size() < 2 || !can_acquire(ctls.size() - 1)) return false;
    with_polarity(ctls, [&](const std::vector<Qubit>& pos) {
      const Chain ch = compute_and(pos);
      body(Control{ch.out, true});
      uncompute(ch);
    });
    return true;
  }

  // ---- IR walk ----

  void lower_circuit(const Circuit& c, const Ctls& ctls) {
    for (const Op& op : c.ops()) lower_op(op, ctls);
  }

  void lower_op(const Op& op, const Ctls& outer) {
    Ctls ctls = outer;
    for (const Control& k : op.controls) {
      auto it = std::find_if(ctls.begin(), ctls.end(), [&](const Control& o) { return o.qubit == k.qubit; });
      if (it == ctls.end()) {
        ctls.push_back(k);
      } else if (it->on_one != k.on_one) {
        return;  // never fires
      }
    }
    std::visit([&](const auto& body) { lower_body(body, ctls); }, op.body);
  }

  void lower_body(const Gate& g, const Ctls& ctls) {
    if (g.kind == GateKind::GlobalPhase) {
      if (ctls.empty()) return g1(GateKind::GlobalPhase, -1, g.angle);
      const Control last = ctls.back();
      const Ctls rest(ctls.begin(), ctls.end() - 1);
      const Complex e = std::exp(Complex(0.0, g.angle));
      if (last.on_one) return mc(rest, last.qubit, Unitary1::of(GateKind::Phase, g.angle));
      return mc(rest, last.qubit, Unitary1::generic(U2{e, 0.0, 0.0, 1.0}));
    }
    mc(ctls, g.target, Unitary1::of(g.kind, g.angle));
  }

  void lower_body(const Within& w, const Ctls& ctls) {
    const Circuit inv = circuit::invert(*w.outer);
    const auto smart = [&](const Ctls& k) {
      const auto q = w.outer->num_qubits() > 0 ? outer_qubits(*w.outer) : std::vector<Qubit>{};
      const bool disjoint = std::none_of(k.begin(), k.end(), [&](const Control& c) {
        return std::binary_search(q.begin(), q.end(), c.qubit);
      });
      const Ctls& ko = disjoint ? Ctls{} : k;
      lower_circuit(*w.outer, ko);
      lower_circuit(*w.inner, k);
      lower_circuit(inv, ko);
    };
    if (!optimized()) {
      lower_circuit(*w.outer, ctls);
      lower_circuit(*w.inner, ctls);
      lower_circuit(inv, ctls);
      return;
    }
    if (hoisted(ctls, [&](Control c) { smart({c}); })) return;
    smart(ctls);
  }

  static std::vector<Qubit> outer_qubits(const Circuit& c) {
    std::vector<Qubit> q;
    for (const Op& op : c.ops()) {
      const auto oq = op.qubits();
      q.insert(q.end(), oq.begin(), oq.end());
    }
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    return q;
  }

  static Circuit qft(const std::vector<Qubit>& r, bool inverse) {
    Circuit c;
    const std::size_t n = r.size();
    for (std::size_t ii = n; ii-- > 0;) {
      c.h(r[ii]);
      for (std::size_t jj = ii; jj-- > 0;) {
        c.gate(GateKind::Phase, r[ii], kPi / static_cast<double>(1ULL << (ii - jj)), {{r[jj], true}});
      }
    }
    return inverse ? circuit::invert(c) : c;
  }

  static std::vector<double> qft_phases(std::size_t n, std::uint64_t k) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t mod = 1ULL << (i + 1);
      p[i] = 2.0 * kPi * static_cast<double>(k % mod) / static_cast<double>(mod);
    }
    return p;
  }

  void lower_body(const AddConst& a, const Ctls& ctls) {
    const std::size_t n = a.target.size();
    const std::uint64_t k = reduce_addend(a.addend, n);
    if (k == 0) return;
    if (!optimized() || (ctls.size() >= 2 && !can_acquire(ctls.size() - 1))) {
      Circuit ir = qft(a.target, false);
      const auto p = qft_phases(n, k);
      for (std::size_t i = 0; i < n; ++i) ir.phase(a.target[i], p[i]);
      ir.append(qft(a.target, true));
      lower_circuit(ir, ctls);
      return;
    }
    if (hoisted(ctls, [&](Control c) { add_single(a.target, k, c.qubit); })) return;
    if (ctls.empty()) return add_single(a.target, k, std::nullopt);
    with_polarity(ctls, [&](const std::vector<Qubit>& pos) { add_single(a.target, k, pos[0]); });
  }

  void add_single(const std::vector<Qubit>& r, std::uint64_t k, std::optional<Qubit> ctl) {
    const std::size_t n = r.size();
    const bool controlled_add = ctl.has_value();
    const auto kk = static_cast<long long>(k);
    if (can_acquire(n + 1) && ripple_adder_cx(n, kk, controlled_add) < qft_adder_cx(n, kk, controlled_add)) {
      std::vector<Qubit> anc;
      for (std::size_t i = 0; i < n; ++i) anc.push_back(acquire());
      const Qubit carry = acquire();
      const auto load = [&] {
        for (std::size_t i = 0; i < n; ++i) {
          if ((k >> i) & 1U) {
            if (ctl) cx(*ctl, anc[i]); else g1(GateKind::X, anc[i]);
          }
        }
      };
      load();
      cuccaro(anc, r, carry);
      load();
      release(n + 1);
      return;
    }
    lower_circuit(qft(r, false), {});
    const auto p = qft_phases(n, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (ctl) {
        controlled(*ctl, r[i], Unitary1::of(GateKind::Phase, p[i]));
      } else {
        g1(GateKind::Phase, r[i], p[i]);
      }
    }
    lower_circuit(qft(r, true), {});
  }

  // b <- a + b mod 2^n with a clean carry-in qubit.
  void cuccaro(const std::vector<Qubit>& a, const std::vector<Qubit>& b, Qubit carry) {
    const std::size_t n = b.size();
    if (n == 1) return cx(a[0], b[0]);
    const auto maj = [&](Qubit x, Qubit y, Qubit z) {
      cx(z, y);
      cx(z, x);
      toffoli(x, y, z);
    };
    const auto uma = [&](Qubit x, Qubit y, Qubit z) {
      toffoli(x, y, z);
      cx(z, x);
      cx(x, y);
    };
    maj(carry, b[0], a[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) maj(a[i - 1], b[i], a[i]);
    cx(a[n - 1], b[n - 1]);
    cx(a[n - 2], b[n - 1]);
    for (std::size_t i = n - 2; i >= 1; --i) uma(a[i - 1], b[i], a[i]);
    uma(carry, b[0], a[0]);
  }

  void lower_body(const MultiplexedRY& m, const Ctls& ctls) {
    if (!optimized() || (ctls.size() >= 2 && !can_acquire(ctls.size() - 1))) {
      for (std::size_t s = 0; s < m.angles.size(); ++s) {
        if (negligible(GateKind::RY, m.angles[s])) continue;
        Ctls k = ctls;
        for (std::size_t j = 0; j < m.select.size(); ++j) k.push_back({m.select[j], ((s >> j) & 1U) != 0});
        mc(k, m.target, Unitary1::of(GateKind::RY, m.angles[s]));
      }
      return;
    }
    const auto folded = [&](Control c) {
      std::vector<Qubit> sel = m.select;
      sel.push_back(c.qubit);
      std::vector<double> ang(m.angles.size() * 2, 0.0);
      for (std::size_t s = 0; s < m.angles.size(); ++s) ang[s + (c.on_one ? m.angles.size() : 0)] = m.angles[s];
      gray_mux(sel, m.target, ang);
    };
    if (hoisted(ctls, folded)) return;
    if (ctls.empty()) return gray_mux(m.select, m.target, m.angles);
    folded(ctls[0]);
  }

  // Uniformly controlled RY: 2^k rotations interleaved with 2^k CX whose
  // controls follow a Gray code.
  void gray_mux(const std::vector<Qubit>& sel, Qubit t, const std::vector<double>& alpha) {
    const std::size_t k = sel.size();
    const std::size_t n = alpha.size();
    if (k == 0 || std::all_of(alpha.begin(), alpha.end(), [&](double a) { return a == alpha[0]; })) {
      g1(GateKind::RY, t, alpha[0]);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t gi = i ^ (i >> 1);
      double theta = 0.0;
      for (std::size_t s = 0; s < n; ++s) {
        theta += (std::popcount(gi & s) % 2 ? -1.0 : 1.0) * alpha[s];
      }
      g1(GateKind::RY, t, theta / static_cast<double>(n));
      const std::size_t bit = i + 1 < n ? static_cast<std::size_t>(std::countr_zero(i + 1)) : k - 1;
      cx(sel[bit], t);
    }
  }

  const Circuit& src_;
  LowerOptions options_;
  std::size_t base_;
  std::vector<BasisGate> gates_;
  std::vector<bool> alive_;
  std::vector<std::vector<std::size_t>> stacks_;
  std::size_t used_ = 0;
  std::size_t max_used_ = 0;
  double global_phase_ = 0.0;
};

}  // namespace

const char* to_string(Strategy s) { return s == Strategy::Baseline ? "baseline" : "optimized"; }

Strategy strategy_from_string(const std::string& name) {
  if (name == "baseline") return Strategy::Baseline;
  if (name == "optimized") return Strategy::Optimized;
  throw std::invalid_argument("unknown strategy '" + name + "' (expected baseline or optimized)");
}

Circuit lower_to_basis(const Circuit& c, const LowerOptions& options) {
  c.validate();
  return Lowerer(c, options).run();
}

bool is_basis(const Circuit& c) {
  for (const Op& op : c.ops()) {
    const auto* g = std::get_if<Gate>(&op.body);
    if (!g) return false;
    if (op.controls.empty()) continue;
    if (g->kind != GateKind::X || op.controls.size() != 1 || !op.controls[0].on_one) return false;
  }
  return true;
}

std::size_t qft_adder_cx(std::size_t width, long long addend, bool controlled) {
  const std::uint64_t k = reduce_addend(addend, width);
  if (k == 0) return 0;
  std::size_t cx = 2 * width * (width - 1);
  if (controlled) {
    for (std::size_t i = 0; i < width; ++i) {
      if (k % (1ULL << (i + 1)) != 0) cx += 2;
    }
  }
  return cx;
}

std::size_t ripple_adder_cx(std::size_t width, long long addend, bool controlled) {
  const std::uint64_t k = reduce_addend(addend, width);
  if (k == 0) return 0;
  std::size_t cx = width == 1 ? 1 : 16 * (width - 1) + 2;
  if (controlled) cx += 2 * static_cast<std::size_t>(std::popcount(k));
  return cx;
}

}  // namespace vqls::lower
