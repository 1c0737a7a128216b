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

// Discretized 1-D driven Vlasov-Ampere problem in the frequency domain:
//
//   (i*omega0 + A) psi = b,   A = [ F   C^E ]
//                                 [ C^g  0  ]
//
// on a 2^n_x by 2^n_v phase-space grid. The state index is
//   index(x, v, e) = x + 2^n_x * v + 2^(n_x+n_v) * e
// (x least significant), with g_{x,v} at e=0 and E_x at (v=0, e=1). The
// remaining (v != 0, e=1) slots are unused and carry only i*omega0.

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vqls/linalg.hpp"

namespace vqls::problem {

// Piecewise-linear tabulated function of x, clamped outside the table.
class Profile {
 public:
  Profile() = default;
  static Profile constant(double value);
  static Profile table(std::vector<std::pair<double, double>> nodes);

  double operator()(double x) const;
  bool is_constant() const;
  const std::vector<std::pair<double, double>>& nodes() const { return nodes_; }

 private:
  std::vector<std::pair<double, double>> nodes_{{0.0, 1.0}};
};

// Drive current j(x) = amplitude * exp(-(x - center)^2 / (2 sigma^2)).
struct GaussianSource {
  Complex amplitude{1.0, 0.0};
  std::optional<double> center;  // x_max / 2 when unset
  std::optional<double> sigma;   // x_max / 8 when unset
};

struct PlasmaParams {
  double omega0 = 1.2;
  double x_max = 10.0;
  double v_max = 4.0;
  Profile density;
  Profile temperature;
  GaussianSource source;

  // Throws std::invalid_argument on omega0 <= 0, x_max <= 0 or v_max <= 0.
  void validate() const;
  Complex source_at(double x) const;
};

struct GridSpec {
  int n_x = 0;
  int n_v = 0;
  double dx = 0.0;
  double dv = 0.0;
  std::vector<double> x_points;  // ascending, x_points[i] = i * dx
  std::vector<double> v_points;  // two's-complement index order

  std::size_t num_x() const { return x_points.size(); }
  std::size_t num_v() const { return v_points.size(); }
  std::size_t dimension() const { return 2 * num_x() * num_v(); }
};

GridSpec make_grid(const PlasmaParams& params, int n_x, int n_v);

// Signed value of an n-bit two's-complement index.
long long twos_complement_value(std::size_t index, int bits);

struct StateLayout {
  int n_x = 0;
  int n_v = 0;

  explicit StateLayout(const GridSpec& grid) : n_x(grid.n_x), n_v(grid.n_v) {}
  StateLayout(int nx, int nv) : n_x(nx), n_v(nv) {}

  std::size_t num_x() const { return std::size_t{1} << n_x; }
  std::size_t num_v() const { return std::size_t{1} << n_v; }
  std::size_t dimension() const { return 2 * num_x() * num_v(); }

  std::size_t index(std::size_t x, std::size_t v, int e) const {
    return x + num_x() * (v + num_v() * static_cast<std::size_t>(e));
  }
  std::size_t x_of(std::size_t i) const { return i % num_x(); }
  std::size_t v_of(std::size_t i) const { return (i / num_x()) % num_v(); }
  int e_of(std::size_t i) const { return static_cast<int>(i / (num_x() * num_v())); }

  bool is_distribution(std::size_t i) const { return e_of(i) == 0; }
  bool is_field(std::size_t i) const { return e_of(i) == 1 && v_of(i) == 0; }
  bool is_unused(std::size_t i) const { return e_of(i) == 1 && v_of(i) != 0; }
};

double maxwellian(double x, double v, const PlasmaParams& params);
double dv_maxwellian(double x, double v, const PlasmaParams& params);

// Selects which parts of A are assembled. none() leaves M = i*omega0*I.
struct OperatorTerms {
  bool advection = true;
  bool force = true;
  bool current = true;

  static OperatorTerms all() { return {}; }
  static OperatorTerms none() { return {false, false, false}; }
};

// One-sided second-order stencils, in units of 1/(2 dx). The left one
// occupies columns (0, 1, 2) of row 0, the right one columns
// (N-3, N-2, N-1) of row N-1.
inline constexpr std::array<double, 3> kLeftBoundaryStencil = {-3.0, 4.0, -1.0};
inline constexpr std::array<double, 3> kRightBoundaryStencil = {1.0, -4.0, 3.0};

// d/dx on the x grid (N x N), and its bulk / boundary-correction split:
// bulk is (S+ - S-)/(2dx) on every row; boundary holds the difference on
// rows 0 and N-1.
ComplexMatrix derivative_matrix(const GridSpec& grid);
ComplexMatrix bulk_derivative_matrix(const GridSpec& grid);
ComplexMatrix boundary_derivative_matrix(const GridSpec& grid);

// Outflow mask: 0 at (x=0, v>0) and (x=N-1, v<=0), 1 elsewhere.
bool zeta(const GridSpec& grid, std::size_t x, std::size_t v);
ComplexMatrix zeta_matrix(const GridSpec& grid);     // diag over x (+) v
ComplexMatrix velocity_matrix(const GridSpec& grid); // diag(v) over v

// Advection block F = zeta * (v (x) I) * (I (x) d/dx) over x (+) v.
ComplexMatrix advection_matrix(const GridSpec& grid);

// -dF/dv at fixed x over the v grid (the column of C^E).
ComplexVector force_column(const GridSpec& grid, const PlasmaParams& params,
                           std::size_t x);
// v * dv over the v grid (the row of C^g).
ComplexVector current_row(const GridSpec& grid);

ComplexMatrix assemble_operator(const GridSpec& grid, const PlasmaParams& params,
                                OperatorTerms terms = {});

// Stencil-wise M*u without forming M.
ComplexVector apply_operator(const GridSpec& grid, const PlasmaParams& params,
                             const ComplexVector& u, OperatorTerms terms = {});

ComplexVector assemble_rhs(const GridSpec& grid, const PlasmaParams& params);

// Dense LU with partial pivoting. Throws SingularMatrixError when a pivot
// magnitude falls below 1e-14, and std::runtime_error if the relative
// residual exceeds 1e-10.
ComplexVector solve_classical(const ComplexMatrix& m, const ComplexVector& b);

struct ConditionReport {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double ratio = 0.0;   // sigma_max / sigma_min, +inf when singular
  double scaled = 0.0;  // scale / sigma_min, +inf when singular
};

ConditionReport condition_number(const ComplexMatrix& m, double scale = 1.0);

}  // namespace vqls::problem
