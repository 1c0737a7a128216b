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

// Composite circuit builders. All of them return fragments over the global
// qubit indices of the registers they are given; fragments declare no
// registers of their own.

#include <vector>

#include "vqls/circuit.hpp"

namespace vqls::circuit {

// |0...0> -> sum_i a_i |i> for a real, unit-norm table of size 2^width,
// as a tree of uniformly controlled RY rotations, most significant qubit
// first. Signs are carried by the last level.
Circuit state_prep(const std::vector<double>& amplitudes, const Register& target);

// |v>|0> -> eta(v)|v>|1> + sqrt(1 - eta(v)^2)|v>|0>, with eta indexed by
// the raw basis index of `source`.
Circuit amplitude_assign(const std::vector<double>& eta, const Register& source, Qubit flag);

// |m> -> |m + k mod 2^width>.
Circuit inplace_add_const(long long k, const Register& target,
                          AdderStyle style = AdderStyle::Qft);

enum class Cmp { Eq, Ne, Gt0, Le0 };

struct Test {
  Register reg;
  Cmp cmp = Cmp::Eq;
  long long value = 0;  // only for Eq / Ne
};

// Conjunction of register tests.
using Predicate = std::vector<Test>;

// flag ^= predicate. The predicate is expanded into an exclusive sum of
// products of literals; each product becomes one (multi-)controlled X.
Circuit xor_predicate(const Predicate& predicate, Qubit flag);

inline Test eq(const Register& r, long long value) { return {r, Cmp::Eq, value}; }
inline Test ne(const Register& r, long long value) { return {r, Cmp::Ne, value}; }
inline Test gt0(const Register& r) { return {r, Cmp::Gt0, 0}; }
inline Test le0(const Register& r) { return {r, Cmp::Le0, 0}; }

}  // namespace vqls::circuit
