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

// QSVT phase factors for odd polynomials.
//
// Angles are stored in the W_x convention: psi_0 .. psi_d with
//   U_W(x) = e^{i psi_0 Z} W(x) e^{i psi_1 Z} ... W(x) e^{i psi_d Z},
//   W(x) = [[x, i sqrt(1-x^2)], [i sqrt(1-x^2), x]].
// They are symmetric (psi_j = psi_{d-j}). The circuit uses the reflection
// convention with projector phases phi_1 .. phi_d,
//   U_R(x) = e^{i phi_1 Z} R(x) e^{i phi_2 Z} R(x) ... e^{i phi_d Z} R(x),
//   R(x) = [[x, sqrt(1-x^2)], [sqrt(1-x^2), -x]],
// and the implemented transform is p(x) = Re <0|U_R(x)|0>.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqls/linalg.hpp"
#include "vqls/polynomial.hpp"

namespace vqls::qsvt {

class PhaseError : public std::runtime_error {
 public:
  PhaseError(const std::string& message, double residual)
      : std::runtime_error(message), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct PhaseSequence {
  std::vector<double> angles;  // W_x angles, size degree + 1

  int degree() const { return static_cast<int>(angles.size()) - 1; }
  // phi_1 .. phi_d of the reflection convention.
  std::vector<double> reflection_angles() const;
};

struct PhaseOptions {
  double tolerance = 1e-12;  // max Chebyshev-coefficient residual
  int max_iterations = 500;
};

struct PhaseReport {
  int iterations = 0;
  double residual = 0.0;
};

// Fixed-point iteration on the symmetric reduced phases, in double
// precision. The polynomial must be odd with sup-norm below 1.
PhaseSequence qsvt_phases(const ChebyshevSeries& poly, const PhaseOptions& options = {},
                          PhaseReport* report = nullptr);

// <0|U_W(x)|0> for arbitrary (not necessarily symmetric) W_x angles.
Complex qsp_wx(const std::vector<double>& angles, double x);

// Re <0|U_R(x)|0> from explicit 2x2 reflection products.
double qsvt_scalar(const PhaseSequence& phases, double x);

// Max |qsvt_scalar - poly| over n points evenly spaced on [a, b].
double reconstruction_error(const PhaseSequence& phases, const ChebyshevSeries& poly, double a,
                            double b, int n = 101);

// One angle per line, 17 significant digits.
std::string phases_to_text(const PhaseSequence& phases);
PhaseSequence phases_from_text(const std::string& text);
void write_phases(const std::filesystem::path& path, const PhaseSequence& phases);
PhaseSequence read_phases(const std::filesystem::path& path);

}  // namespace vqls::qsvt
