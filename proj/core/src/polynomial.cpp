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

#include "vqls/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fftw3.h>

namespace vqls::qsvt {

void SolverConfig::validate() const {
  if (!(kappa >= 1.0)) throw std::invalid_argument("kappa must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (max_degree < 1) throw std::invalid_argument("max_degree must be positive");
}

double ChebyshevSeries::operator()(double x) const {
  double b1 = 0.0, b2 = 0.0;
  for (int k = degree(); k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + coeffs_[static_cast<std::size_t>(k)];
    b2 = b1;
    b1 = b0;
  }
  return coeffs_.empty() ? 0.0 : x * b1 - b2 + coeffs_[0];
}

bool ChebyshevSeries::is_odd(double tol) const {
  for (std::size_t k = 0; k < coeffs_.size(); k += 2) {
    if (std::abs(coeffs_[k]) > tol) return false;
  }
  return true;
}

double ChebyshevSeries::max_abs() const {
  if (coeffs_.empty()) return 0.0;
  const std::size_t n = std::max<std::size_t>(64, 4 * coeffs_.size());
  const auto vals = chebyshev_values(coeffs_, n);
  double m = std::max(std::abs((*this)(1.0)), std::abs((*this)(-1.0)));
  for (double v : vals) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> chebyshev_interpolate(double (*f)(double, const void*), const void* ctx,
                                          std::size_t n) {
  std::vector<double> in(n);
  for (std::size_t k = 0; k < n; ++k) {
    in[k] = f(std::cos(std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n)), ctx);
  }
  return chebyshev_coefficients(in);
}

std::vector<double> chebyshev_coefficients(const std::vector<double>& node_values) {
  const std::size_t n = node_values.size();
  if (n == 0) throw std::invalid_argument("chebyshev_coefficients: no nodes");
  std::vector<double> in(node_values), out(n);
  fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(n), in.data(), out.data(), FFTW_REDFT10,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  for (double& c : out) c /= static_cast<double>(n);
  out[0] /= 2.0;
  return out;
}

std::vector<double> chebyshev_values(const std::vector<double>& coeffs, std::size_t n) {
  // DCT-III: y_k = X_0 + 2 sum_j X_j cos(pi j (k+1/2) / n) with X_0 = c_0, X_j = c_j / 2.
  std::vector<double> in(n, 0.0), out(n);
  for (std::size_t j = 0; j < std::min(n, coeffs.size()); ++j) in[j] = j == 0 ? coeffs[0] : coeffs[j] / 2.0;
  if (coeffs.size() > n) throw std::invalid_argument("chebyshev_values: too few nodes for degree");
  fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(n), in.data(), out.data(), FFTW_REDFT01,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

double inverse_target(double x, double kappa, double eps) {
  const double c = std::sqrt(std::log(1.0 / eps));
  const double y = c * kappa * x;
  if (std::abs(y) < 1e-8) {
    // (1 - e^{-y^2}) / (2 kappa x) ~ c^2 kappa x / 2 near zero.
    return c * c * kappa * x / 2.0;
  }
  return -std::expm1(-y * y) / (2.0 * kappa * x);
}

ChebyshevSeries inverse_poly(const SolverConfig& config) {
  config.validate();
  struct Ctx {
    double kappa, eps;
  } ctx{config.kappa, config.eps};
  const double c = std::sqrt(std::log(1.0 / config.eps));
  // Node count well beyond the expected degree so aliasing stays negligible.
  std::size_t n = 1024;
  while (static_cast<double>(n) < 64.0 * c * config.kappa + 1024.0) n *= 2;
  auto coeffs = chebyshev_interpolate(
      [](double x, const void* p) {
        const auto* k = static_cast<const Ctx*>(p);
        return inverse_target(x, k->kappa, k->eps);
      },
      &ctx, n);
  for (std::size_t k = 0; k < coeffs.size(); k += 2) coeffs[k] = 0.0;

  std::vector<double> tail(coeffs.size() + 1, 0.0);
  for (std::size_t k = coeffs.size(); k-- > 0;) tail[k] = tail[k + 1] + std::abs(coeffs[k]);
  // tail[k + 1] is the error bound after truncating to degree k.
  std::size_t d = 1;
  while (d + 1 < tail.size() && tail[d + 1] > config.eps / 2.0) d += 2;
  if (d + 1 >= tail.size()) {
    throw DegreeError("inverse_poly: interpolation grid too small for kappa", static_cast<int>(n));
  }
  if (static_cast<int>(d) > config.max_degree) {
    throw DegreeError("inverse_poly: degree " + std::to_string(d) + " required for kappa=" +
                          std::to_string(config.kappa) + ", eps=" + std::to_string(config.eps) +
                          " exceeds max_degree=" + std::to_string(config.max_degree),
                      static_cast<int>(d));
  }
  coeffs.resize(d + 1);
  ChebyshevSeries p(std::move(coeffs));
  const double m = p.max_abs();
  if (m > 1.0) {
    throw std::runtime_error("inverse_poly: |p| reaches " + std::to_string(m) + " > 1");
  }
  return p;
}

}  // namespace vqls::qsvt
