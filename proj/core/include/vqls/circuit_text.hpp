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

// Line-oriented circuit text format.
//
//   vqls-circuit 1
//   qubits <n>
//   register <name> <data|block|ancilla> <unsigned|twos> <q0> <q1> ...
//   X t=3 c=1,~2          (~ marks a control on |0>)
//   RY t=0 a=<angle>
//   GPHASE a=<angle>
//   ADD t=0,1,2 k=-1 style=qft
//   MUXRY t=4 s=0,1 a=<a0>,<a1>,<a2>,<a3>
//   WITHIN c=...
//     <outer ops>
//   APPLY
//     <inner ops>
//   END
//
// Angles are written with 17 significant digits so a round trip is exact.

#include <string>

#include "vqls/circuit.hpp"

namespace vqls::circuit {

std::string to_text(const Circuit& c);
Circuit from_text(const std::string& text);

}  // namespace vqls::circuit
