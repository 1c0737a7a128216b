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

// Odd polynomial approximations of 1/x in the Chebyshev basis.

#include <stdexcept>
#include <string>
#include <vector>

namespace vqls::qsvt {

struct SolverConfig {
  double kappa = 0.0;  // 0: derive from the classical report
  double eps = 1e-3;
  int max_degree = 60001;

  // Throws std::invalid_argument unless kappa >= 1, 0 < eps < 1 and
  // max_degree >= 1.
  void validate() const;
};

class DegreeError : public std::runtime_error {
 public:
  DegreeError(const std::string& message, int required)
      : std::runtime_error(message), required_(required) {}
  int required_degree() const { return required_; }

 private:
  int required_;
};

// p(x) = sum_k c_k T_k(x).
class ChebyshevSeries {
 public:
  ChebyshevSeries() = default;
  explicit ChebyshevSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double operator()(double x) const;  // Clenshaw
  bool is_odd(double tol = 0.0) const;
  // max |p| over the degree-M Chebyshev-extrema grid (M >= 4 * degree).
  double max_abs() const;

 private:
  std::vector<double> coeffs_;
};

// Chebyshev coefficients of f interpolated at the n first-kind nodes.
std::vector<double> chebyshev_interpolate(double (*f)(double, const void*), const void* ctx,
                                          std::size_t n);

// Chebyshev coefficients from values at the first-kind nodes (DCT-II).
std::vector<double> chebyshev_coefficients(const std::vector<double>& node_values);

// Values of the series at the n first-kind Chebyshev nodes cos(pi (k+1/2)/n).
std::vector<double> chebyshev_values(const std::vector<double>& coeffs, std::size_t n);

// Smooth odd target (1 - exp(-(c kappa x)^2)) / (2 kappa x), c = sqrt(ln(1/eps)).
// Within eps/2 of 1/(2 kappa x) on [1/kappa, 1].
double inverse_target(double x, double kappa, double eps);

// Odd polynomial with |p| <= 1 on [-1, 1] and |p(x) - 1/(2 kappa x)| <= eps on
// [1/kappa, 1]. The degree is the smallest odd d whose truncation tail is at
// most eps/2. Throws DegreeError when d > max_degree.
ChebyshevSeries inverse_poly(const SolverConfig& config);

}  // namespace vqls::qsvt
