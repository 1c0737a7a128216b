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

#include "vqls/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <string>
#include <thread>

namespace vqls::sim {

using circuit::AddConst;
using circuit::Control;
using circuit::Gate;
using circuit::GateKind;
using circuit::MultiplexedRY;
using circuit::Op;
using circuit::Within;

namespace {

struct Ctl {
  std::uint64_t mask = 0;
  std::uint64_t val = 0;
  bool never = false;

  bool ok(std::uint64_t i) const { return (i & mask) == val; }
};

Ctl with_controls(Ctl c, const std::vector<Control>& cs) {
  for (const Control& k : cs) {
    const std::uint64_t bit = std::uint64_t{1} << k.qubit;
    const std::uint64_t want = k.on_one ? bit : 0;
    if (c.mask & bit) {
      if ((c.val & bit) != want) c.never = true;
    } else {
      c.mask |= bit;
      c.val |= want;
    }
  }
  return c;
}

struct M2 {
  Complex m[2][2];
  bool diagonal = false;
};

M2 gate_matrix(GateKind kind, double t) {
  const Complex i(0.0, 1.0);
  M2 r{};
  switch (kind) {
    case GateKind::X:
      r.m[0][1] = r.m[1][0] = 1.0;
      break;
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      r.m[0][0] = r.m[0][1] = r.m[1][0] = s;
      r.m[1][1] = -s;
      break;
    }
    case GateKind::Z:
      r.m[0][0] = 1.0;
      r.m[1][1] = -1.0;
      r.diagonal = true;
      break;
    case GateKind::RY: {
      const double c = std::cos(t / 2.0), s = std::sin(t / 2.0);
      r.m[0][0] = c;
      r.m[0][1] = -s;
      r.m[1][0] = s;
      r.m[1][1] = c;
      break;
    }
    case GateKind::RZ:
      r.m[0][0] = std::exp(-i * (t / 2.0));
      r.m[1][1] = std::exp(i * (t / 2.0));
      r.diagonal = true;
      break;
    case GateKind::Phase:
      r.m[0][0] = 1.0;
      r.m[1][1] = std::exp(i * t);
      r.diagonal = true;
      break;
    case GateKind::GlobalPhase:
      r.m[0][0] = r.m[1][1] = std::exp(i * t);
      r.diagonal = true;
      break;
  }
  return r;
}

M2 ry_matrix(double t) { return gate_matrix(GateKind::RY, t); }

std::uint64_t qubit_mask(const std::vector<Qubit>& qs) {
  std::uint64_t m = 0;
  for (Qubit q : qs) m |= std::uint64_t{1} << q;
  return m;
}

std::uint64_t circuit_mask(const Circuit& c) {
  std::uint64_t m = 0;
  for (const Op& op : c.ops()) m |= qubit_mask(op.qubits());
  return m;
}

std::uint64_t add_mod(std::uint64_t m, long long addend, std::size_t w) {
  const std::uint64_t mod_mask = w >= 64 ? ~0ULL : ((std::uint64_t{1} << w) - 1);
  return (m + static_cast<std::uint64_t>(addend)) & mod_mask;
}

void check_qubits(const Circuit& c, std::size_t width) {
  if (c.num_qubits() > width) {
    throw SimError("circuit uses " + std::to_string(c.num_qubits()) + " qubits but state has " +
                   std::to_string(width));
  }
}

// Dense backend.

void dense_ops(const Circuit& c, std::vector<Complex>& v, Ctl ctl);

void dense_op(const Op& op, std::vector<Complex>& v, Ctl outer) {
  const Ctl ctl = with_controls(outer, op.controls);
  if (ctl.never) return;
  const std::uint64_t n = v.size();
  if (const auto* g = std::get_if<Gate>(&op.body)) {
    const M2 m = gate_matrix(g->kind, g->angle);
    if (g->kind == GateKind::GlobalPhase) {
      for (std::uint64_t i = 0; i < n; ++i) {
        if (ctl.ok(i)) v[i] *= m.m[0][0];
      }
      return;
    }
    const std::uint64_t bt = std::uint64_t{1} << g->target;
    if (m.diagonal) {
      for (std::uint64_t i = 0; i < n; ++i) {
        if (ctl.ok(i)) v[i] *= (i & bt) ? m.m[1][1] : m.m[0][0];
      }
      return;
    }
    for (std::uint64_t i = 0; i < n; ++i) {
      if ((i & bt) || !ctl.ok(i)) continue;
      const std::uint64_t j = i | bt;
      const Complex a0 = v[i], a1 = v[j];
      v[i] = m.m[0][0] * a0 + m.m[0][1] * a1;
      v[j] = m.m[1][0] * a0 + m.m[1][1] * a1;
    }
  } else if (const auto* a = std::get_if<AddConst>(&op.body)) {
    const std::uint64_t tmask = qubit_mask(a->target);
    const std::vector<Complex> src = v;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (!ctl.ok(i)) continue;
      const std::uint64_t m = gather_bits(i, a->target);
      const std::uint64_t j = (i & ~tmask) | scatter_bits(add_mod(m, a->addend, a->target.size()), a->target);
      v[j] = src[i];
    }
  } else if (const auto* mux = std::get_if<MultiplexedRY>(&op.body)) {
    std::vector<M2> mats;
    mats.reserve(mux->angles.size());
    for (double t : mux->angles) mats.push_back(ry_matrix(t));
    const std::uint64_t bt = std::uint64_t{1} << mux->target;
    for (std::uint64_t i = 0; i < n; ++i) {
      if ((i & bt) || !ctl.ok(i)) continue;
      const M2& m = mats[gather_bits(i, mux->select)];
      const std::uint64_t j = i | bt;
      const Complex a0 = v[i], a1 = v[j];
      v[i] = m.m[0][0] * a0 + m.m[0][1] * a1;
      v[j] = m.m[1][0] * a0 + m.m[1][1] * a1;
    }
  } else {
    const auto& w = std::get<Within>(op.body);
    const Ctl octl = (circuit_mask(*w.outer) & ctl.mask) == 0 ? Ctl{} : ctl;
    dense_ops(*w.outer, v, octl);
    dense_ops(*w.inner, v, ctl);
    dense_ops(circuit::invert(*w.outer), v, octl);
  }
}

void dense_ops(const Circuit& c, std::vector<Complex>& v, Ctl ctl) {
  for (const Op& op : c.ops()) dense_op(op, v, ctl);
}

// Sparse backend.

using Entries = std::vector<std::pair<std::uint64_t, Complex>>;

void normalize_entries(Entries& e, double drop) {
  std::stable_sort(e.begin(), e.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  Entries out;
  out.reserve(e.size());
  for (std::size_t k = 0; k < e.size();) {
    Complex sum = 0.0;
    const std::uint64_t idx = e[k].first;
    for (; k < e.size() && e[k].first == idx; ++k) sum += e[k].second;
    if (std::abs(sum) >= drop) out.emplace_back(idx, sum);
  }
  e.swap(out);
}

void sparse_ops(const Circuit& c, Entries& e, Ctl ctl, double drop);

void apply_m2_sparse(Entries& e, std::uint64_t bt, const Ctl& ctl, double drop,
                     const std::function<const M2&(std::uint64_t)>& mat) {
  Entries out;
  out.reserve(e.size() * 2);
  for (const auto& [i, a] : e) {
    if (!ctl.ok(i)) {
      out.emplace_back(i, a);
      continue;
    }
    const M2& m = mat(i);
    const int b = (i & bt) ? 1 : 0;
    const std::uint64_t i0 = i & ~bt;
    if (m.m[0][b] != 0.0) out.emplace_back(i0, m.m[0][b] * a);
    if (m.m[1][b] != 0.0) out.emplace_back(i0 | bt, m.m[1][b] * a);
  }
  e.swap(out);
  normalize_entries(e, drop);
}

void sparse_op(const Op& op, Entries& e, Ctl outer, double drop) {
  const Ctl ctl = with_controls(outer, op.controls);
  if (ctl.never) return;
  if (const auto* g = std::get_if<Gate>(&op.body)) {
    const M2 m = gate_matrix(g->kind, g->angle);
    if (g->kind == GateKind::GlobalPhase) {
      for (auto& [i, a] : e) {
        if (ctl.ok(i)) a *= m.m[0][0];
      }
      return;
    }
    const std::uint64_t bt = std::uint64_t{1} << g->target;
    if (m.diagonal) {
      for (auto& [i, a] : e) {
        if (ctl.ok(i)) a *= (i & bt) ? m.m[1][1] : m.m[0][0];
      }
      return;
    }
    apply_m2_sparse(e, bt, ctl, drop, [&](std::uint64_t) -> const M2& { return m; });
  } else if (const auto* a = std::get_if<AddConst>(&op.body)) {
    const std::uint64_t tmask = qubit_mask(a->target);
    for (auto& [i, amp] : e) {
      if (!ctl.ok(i)) continue;
      const std::uint64_t m = gather_bits(i, a->target);
      i = (i & ~tmask) | scatter_bits(add_mod(m, a->addend, a->target.size()), a->target);
    }
    normalize_entries(e, drop);
  } else if (const auto* mux = std::get_if<MultiplexedRY>(&op.body)) {
    std::vector<M2> mats;
    mats.reserve(mux->angles.size());
    for (double t : mux->angles) mats.push_back(ry_matrix(t));
    apply_m2_sparse(e, std::uint64_t{1} << mux->target, ctl, drop,
                    [&](std::uint64_t i) -> const M2& { return mats[gather_bits(i, mux->select)]; });
  } else {
    const auto& w = std::get<Within>(op.body);
    const Ctl octl = (circuit_mask(*w.outer) & ctl.mask) == 0 ? Ctl{} : ctl;
    sparse_ops(*w.outer, e, octl, drop);
    sparse_ops(*w.inner, e, ctl, drop);
    sparse_ops(circuit::invert(*w.outer), e, octl, drop);
  }
}

void sparse_ops(const Circuit& c, Entries& e, Ctl ctl, double drop) {
  for (const Op& op : c.ops()) sparse_op(op, e, ctl, drop);
}

}  // namespace

std::uint64_t scatter_bits(std::uint64_t compact, const std::vector<Qubit>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if ((compact >> k) & 1ULL) out |= std::uint64_t{1} << qubits[k];
  }
  return out;
}

std::uint64_t gather_bits(std::uint64_t full, const std::vector<Qubit>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    out |= ((full >> qubits[k]) & 1ULL) << k;
  }
  return out;
}

StateVector::StateVector(std::size_t width) : width_(width) {
  if (width > kMaxDenseWidth) {
    throw SimError("dense state of width " + std::to_string(width) + " exceeds the limit of " +
                   std::to_string(kMaxDenseWidth));
  }
  amps_.assign(std::size_t{1} << width, Complex(0.0, 0.0));
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t width, std::uint64_t index) {
  StateVector s(width);
  if (index >= s.size()) throw SimError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::size_t width, std::vector<Complex> amps) {
  StateVector s(width);
  if (amps.size() != s.size()) throw SimError("amplitude count does not match width");
  s.amps_ = std::move(amps);
  return s;
}

double StateVector::norm() const {
  double n = 0.0;
  for (const Complex& a : amps_) n += std::norm(a);
  return std::sqrt(n);
}

void apply_in_place(const Circuit& c, StateVector& psi) {
  check_qubits(c, psi.width());
  dense_ops(c, psi.amplitudes(), Ctl{});
}

StateVector apply_circuit(const Circuit& c, StateVector psi) {
  apply_in_place(c, psi);
  return psi;
}

void apply_in_place(const Circuit& c, SparseState& psi, double drop) {
  if (c.num_qubits() > 63) throw SimError("sparse simulation supports at most 63 qubits");
  normalize_entries(psi.entries, drop);
  sparse_ops(c, psi.entries, Ctl{}, drop);
}

ComplexMatrix extract_unitary(const Circuit& c) {
  const std::size_t w = c.num_qubits();
  if (w > kMaxUnitaryWidth) {
    throw SimError("extract_unitary: width " + std::to_string(w) + " exceeds the guard of " +
                   std::to_string(kMaxUnitaryWidth));
  }
  const std::size_t n = std::size_t{1} << w;
  ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t j) {
    SparseState s = SparseState::basis(j);
    apply_in_place(c, s);
    for (const auto& [i, a] : s.entries) u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a;
  });
  return u;
}

std::vector<Qubit> data_qubits(const Circuit& c, const std::vector<Qubit>& block_qubits) {
  std::vector<Qubit> out;
  for (std::size_t q = 0; q < c.num_qubits(); ++q) {
    if (std::find(block_qubits.begin(), block_qubits.end(), static_cast<Qubit>(q)) ==
        block_qubits.end()) {
      out.push_back(static_cast<Qubit>(q));
    }
  }
  return out;
}

ComplexMatrix extract_block(const Circuit& c, const std::vector<Qubit>& block_qubits, double scale) {
  for (Qubit q : block_qubits) {
    if (q < 0 || static_cast<std::size_t>(q) >= c.num_qubits()) {
      throw SimError("extract_block: block qubit out of range");
    }
  }
  const std::vector<Qubit> data = data_qubits(c, block_qubits);
  if (data.size() > kMaxBlockDataWidth) {
    throw SimError("extract_block: data width " + std::to_string(data.size()) +
                   " exceeds the guard of " + std::to_string(kMaxBlockDataWidth));
  }
  const std::uint64_t bmask = qubit_mask(block_qubits);
  const std::size_t n = std::size_t{1} << data.size();
  ComplexMatrix b = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  parallel_for(n, [&](std::size_t j) {
    SparseState s = SparseState::basis(scatter_bits(j, data));
    apply_in_place(c, s);
    for (const auto& [i, a] : s.entries) {
      if (i & bmask) continue;
      b(static_cast<Eigen::Index>(gather_bits(i, data)), static_cast<Eigen::Index>(j)) = scale * a;
    }
  });
  return b;
}

std::int64_t SparseOperator::index_of(std::uint64_t basis) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), basis);
  if (it == support_.end() || *it != basis) return -1;
  return it - support_.begin();
}

void SparseOperator::apply(const std::vector<Complex>& in, std::vector<Complex>& out) const {
  if (in.size() != support_.size()) throw SimError("SparseOperator::apply: size mismatch");
  out.assign(support_.size(), Complex(0.0, 0.0));
  for (std::size_t c = 0; c < support_.size(); ++c) {
    const Complex x = in[c];
    if (x == Complex(0.0, 0.0)) continue;
    for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) out[rows_[k]] += values_[k] * x;
  }
}

void SparseOperator::apply2(const std::vector<Complex>& in0, const std::vector<Complex>& in1,
                            std::vector<Complex>& out0, std::vector<Complex>& out1) const {
  const std::size_t n = support_.size();
  if (in0.size() != n || in1.size() != n) throw SimError("SparseOperator::apply2: size mismatch");
  out0.assign(n, Complex(0.0, 0.0));
  out1.assign(n, Complex(0.0, 0.0));
  auto* o0 = reinterpret_cast<double*>(out0.data());
  auto* o1 = reinterpret_cast<double*>(out1.data());
  const auto* vals = reinterpret_cast<const double*>(values_.data());
  for (std::size_t c = 0; c < n; ++c) {
    const double a_re = in0[c].real(), a_im = in0[c].imag();
    const double b_re = in1[c].real(), b_im = in1[c].imag();
    for (std::size_t k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
      const std::size_t r = 2 * rows_[k];
      const double v_re = vals[2 * k], v_im = vals[2 * k + 1];
      o0[r] += v_re * a_re - v_im * a_im;
      o0[r + 1] += v_re * a_im + v_im * a_re;
      o1[r] += v_re * b_re - v_im * b_im;
      o1[r + 1] += v_re * b_im + v_im * b_re;
    }
  }
}

SparseOperator compile_reachable(const Circuit& c, const std::vector<std::uint64_t>& seeds,
                                 std::size_t max_support, double drop) {
  return std::move(compile_reachable(std::vector<const Circuit*>{&c}, seeds, max_support, drop)[0]);
}

std::vector<SparseOperator> compile_reachable(const std::vector<const Circuit*>& circuits,
                                              const std::vector<std::uint64_t>& seeds,
                                              std::size_t max_support, double drop) {
  const std::size_t nc = circuits.size();
  std::map<std::uint64_t, std::vector<Entries>> columns;
  std::vector<std::uint64_t> frontier(seeds.begin(), seeds.end());
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  for (std::uint64_t s : frontier) columns[s];
  while (!frontier.empty()) {
    std::vector<std::vector<Entries>> results(frontier.size(), std::vector<Entries>(nc));
    parallel_for(frontier.size() * nc, [&](std::size_t job) {
      const std::size_t k = job / nc, ci = job % nc;
      SparseState s = SparseState::basis(frontier[k]);
      apply_in_place(*circuits[ci], s, kSparseDrop);
      for (const auto& e : s.entries) {
        if (std::abs(e.second) >= drop) results[k][ci].push_back(e);
      }
    });
    std::vector<std::uint64_t> next;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      for (const auto& col : results[k]) {
        for (const auto& e : col) {
          if (!columns.count(e.first)) {
            columns[e.first];
            next.push_back(e.first);
          }
        }
      }
      columns[frontier[k]] = std::move(results[k]);
    }
    if (columns.size() > max_support) {
      throw SimError("compile_reachable: support exceeds " + std::to_string(max_support) + " states");
    }
    std::sort(next.begin(), next.end());
    frontier.swap(next);
  }

  std::vector<std::uint64_t> support;
  support.reserve(columns.size());
  for (const auto& kv : columns) support.push_back(kv.first);
  std::vector<SparseOperator> ops(nc);
  for (std::size_t ci = 0; ci < nc; ++ci) {
    SparseOperator& op = ops[ci];
    op.support_ = support;
    op.col_ptr_.push_back(0);
    for (const auto& kv : columns) {
      for (const auto& [i, a] : kv.second[ci]) {
        op.rows_.push_back(static_cast<std::uint32_t>(op.index_of(i)));
        op.values_.push_back(a);
      }
      op.col_ptr_.push_back(op.values_.size());
    }
  }
  return ops;
}

unsigned thread_count() {
  if (const char* env = std::getenv("VQLS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t t = std::min<std::size_t>(thread_count(), n);
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  const std::size_t chunk = (n + t - 1) / t;
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace vqls::sim
