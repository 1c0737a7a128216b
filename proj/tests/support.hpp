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

// Shared oracles for the test suites.

#include <cmath>
#include <random>

#include "vqls/blockenc.hpp"
#include "vqls/builders.hpp"
#include "vqls/circuit.hpp"
#include "vqls/linalg.hpp"
#include "vqls/sim.hpp"

namespace vqls::testing {

// Induced infinity norm (max row sum).
inline double inf_norm(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

inline double unitarity_error(const ComplexMatrix& u) {
  return inf_norm(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

// max |a e^{i phi} - b| for the phase aligning the largest entry of a.
inline double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  Complex ph = b(r, c) / a(r, c);
  ph /= std::abs(ph);
  return (a * ph - b).cwiseAbs().maxCoeff();
}

// Random circuit over plain gates with up to two random controls.
inline circuit::Circuit random_circuit(std::size_t width, std::size_t gates, std::mt19937_64& rng) {
  using circuit::GateKind;
  circuit::Circuit c(width);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<int> qubit(0, static_cast<int>(width) - 1);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  std::uniform_int_distribution<int> nctl(0, width > 2 ? 2 : static_cast<int>(width) - 1);
  const GateKind kinds[] = {GateKind::X, GateKind::H, GateKind::Z, GateKind::RY, GateKind::RZ, GateKind::Phase};
  for (std::size_t i = 0; i < gates; ++i) {
    const int t = qubit(rng);
    std::vector<circuit::Control> ctl;
    const int n = nctl(rng);
    while (static_cast<int>(ctl.size()) < n) {
      const int q = qubit(rng);
      bool used = q == t;
      for (const auto& k : ctl) used = used || k.qubit == q;
      if (!used) ctl.push_back({q, (rng() & 1U) != 0});
    }
    c.gate(kinds[kind(rng)], t, angle(rng), ctl);
  }
  return c;
}

// diag(sigma) on a data register, with one flag qubit as the block.
inline blockenc::BlockEncoding diagonal_encoding(const std::vector<double>& sigma, std::size_t bits) {
  circuit::Circuit c;
  const auto r = c.add_register("r", bits, circuit::RegisterKind::Data);
  const auto f = c.add_register("f", 1, circuit::RegisterKind::Block);
  c.append(circuit::amplitude_assign(sigma, r, f[0]));
  c.x(f[0]);
  const auto n = static_cast<Eigen::Index>(sigma.size());
  ComplexMatrix ref = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) ref(i, i) = sigma[static_cast<std::size_t>(i)];
  return {"diag", c, 1.0, ref};
}

}  // namespace vqls::testing
