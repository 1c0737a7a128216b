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

#include "vqls/problem.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vqls::problem {

Profile Profile::constant(double value) {
  Profile p;
  p.nodes_ = {{0.0, value}};
  return p;
}

Profile Profile::table(std::vector<std::pair<double, double>> nodes) {
  if (nodes.empty()) throw std::invalid_argument("Profile::table: empty table");
  std::sort(nodes.begin(), nodes.end());
  Profile p;
  p.nodes_ = std::move(nodes);
  return p;
}

double Profile::operator()(double x) const {
  if (nodes_.size() == 1 || x <= nodes_.front().first) return nodes_.front().second;
  if (x >= nodes_.back().first) return nodes_.back().second;
  auto hi = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                             [](double v, const auto& n) { return v < n.first; });
  auto lo = hi - 1;
  const double t = (x - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

bool Profile::is_constant() const {
  return std::all_of(nodes_.begin(), nodes_.end(), [&](const auto& n) {
    return n.second == nodes_.front().second;
  });
}

void PlasmaParams::validate() const {
  if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
  if (!(x_max > 0.0)) throw std::invalid_argument("x_max must be positive");
  if (!(v_max > 0.0)) throw std::invalid_argument("v_max must be positive");
  if (source.sigma && !(*source.sigma > 0.0)) {
    throw std::invalid_argument("source sigma must be positive");
  }
}

Complex PlasmaParams::source_at(double x) const {
  const double c = source.center.value_or(x_max / 2.0);
  const double s = source.sigma.value_or(x_max / 8.0);
  return source.amplitude * std::exp(-(x - c) * (x - c) / (2.0 * s * s));
}

long long twos_complement_value(std::size_t index, int bits) {
  const auto half = std::size_t{1} << (bits - 1);
  const auto full = std::size_t{1} << bits;
  return index < half ? static_cast<long long>(index)
                      : static_cast<long long>(index) - static_cast<long long>(full);
}

GridSpec make_grid(const PlasmaParams& params, int n_x, int n_v) {
  if (n_x < 3) {
    throw std::invalid_argument("n_x must be at least 3 (boundary stencils need 3 points per side)");
  }
  if (n_v < 1) throw std::invalid_argument("n_v must be at least 1");
  if (n_x + n_v > 40) throw std::invalid_argument("grid too large");
  params.validate();

  GridSpec g;
  g.n_x = n_x;
  g.n_v = n_v;
  const std::size_t nx = std::size_t{1} << n_x;
  const std::size_t nv = std::size_t{1} << n_v;
  g.dx = params.x_max / static_cast<double>(nx);
  g.dv = 2.0 * params.v_max / static_cast<double>(nv);
  g.x_points.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) g.x_points[i] = static_cast<double>(i) * g.dx;
  g.v_points.resize(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    g.v_points[i] = static_cast<double>(twos_complement_value(i, n_v)) * g.dv;
  }
  for (double x : g.x_points) {
    if (!(params.density(x) > 0.0) || !(params.temperature(x) > 0.0)) {
      throw std::invalid_argument("density and temperature must be positive on the grid");
    }
  }
  return g;
}

double maxwellian(double x, double v, const PlasmaParams& params) {
  const double n = params.density(x);
  const double t = params.temperature(x);
  return n / std::sqrt(2.0 * std::numbers::pi * t) * std::exp(-v * v / (2.0 * t));
}

double dv_maxwellian(double x, double v, const PlasmaParams& params) {
  return -(v / params.temperature(x)) * maxwellian(x, v, params);
}

ComplexMatrix bulk_derivative_matrix(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.num_x());
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  const double w = 1.0 / (2.0 * grid.dx);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (r + 1 < n) d(r, r + 1) = w;
    if (r > 0) d(r, r - 1) = -w;
  }
  return d;
}

ComplexMatrix derivative_matrix(const GridSpec& grid) {
  ComplexMatrix d = bulk_derivative_matrix(grid);
  const auto n = d.rows();
  const double w = 1.0 / (2.0 * grid.dx);
  d.row(0).setZero();
  d.row(n - 1).setZero();
  for (Eigen::Index k = 0; k < 3; ++k) {
    d(0, k) = kLeftBoundaryStencil[static_cast<std::size_t>(k)] * w;
    d(n - 1, n - 3 + k) = kRightBoundaryStencil[static_cast<std::size_t>(k)] * w;
  }
  return d;
}

ComplexMatrix boundary_derivative_matrix(const GridSpec& grid) {
  return derivative_matrix(grid) - bulk_derivative_matrix(grid);
}

bool zeta(const GridSpec& grid, std::size_t x, std::size_t v) {
  const double vel = grid.v_points[v];
  if (x == 0 && vel > 0.0) return false;
  if (x == grid.num_x() - 1 && vel <= 0.0) return false;
  return true;
}

ComplexMatrix zeta_matrix(const GridSpec& grid) {
  const std::size_t nx = grid.num_x();
  const std::size_t nv = grid.num_v();
  ComplexMatrix z = ComplexMatrix::Zero(static_cast<Eigen::Index>(nx * nv),
                                        static_cast<Eigen::Index>(nx * nv));
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t x = 0; x < nx; ++x) {
      const auto i = static_cast<Eigen::Index>(x + nx * v);
      z(i, i) = zeta(grid, x, v) ? 1.0 : 0.0;
    }
  }
  return z;
}

ComplexMatrix velocity_matrix(const GridSpec& grid) {
  const auto nv = static_cast<Eigen::Index>(grid.num_v());
  ComplexMatrix m = ComplexMatrix::Zero(nv, nv);
  for (Eigen::Index i = 0; i < nv; ++i) m(i, i) = grid.v_points[static_cast<std::size_t>(i)];
  return m;
}

ComplexMatrix advection_matrix(const GridSpec& grid) {
  const ComplexMatrix ix = ComplexMatrix::Identity(static_cast<Eigen::Index>(grid.num_x()),
                                                   static_cast<Eigen::Index>(grid.num_x()));
  const ComplexMatrix iv = ComplexMatrix::Identity(static_cast<Eigen::Index>(grid.num_v()),
                                                   static_cast<Eigen::Index>(grid.num_v()));
  // x is the fast index, so (v-operator) (x) (x-operator) in Kronecker order.
  const ComplexMatrix vel = Eigen::kroneckerProduct(velocity_matrix(grid), ix);
  const ComplexMatrix der = Eigen::kroneckerProduct(iv, derivative_matrix(grid));
  return zeta_matrix(grid) * vel * der;
}

ComplexVector force_column(const GridSpec& grid, const PlasmaParams& params,
                           std::size_t x) {
  ComplexVector c(static_cast<Eigen::Index>(grid.num_v()));
  for (std::size_t v = 0; v < grid.num_v(); ++v) {
    c(static_cast<Eigen::Index>(v)) = -dv_maxwellian(grid.x_points[x], grid.v_points[v], params);
  }
  return c;
}

ComplexVector current_row(const GridSpec& grid) {
  ComplexVector r(static_cast<Eigen::Index>(grid.num_v()));
  for (std::size_t v = 0; v < grid.num_v(); ++v) {
    r(static_cast<Eigen::Index>(v)) = grid.v_points[v] * grid.dv;
  }
  return r;
}

ComplexMatrix assemble_operator(const GridSpec& grid, const PlasmaParams& params,
                                OperatorTerms terms) {
  const StateLayout layout(grid);
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  const auto block = static_cast<Eigen::Index>(grid.num_x() * grid.num_v());
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);

  if (terms.advection) m.topLeftCorner(block, block) = advection_matrix(grid);

  for (std::size_t x = 0; x < grid.num_x(); ++x) {
    const auto field = static_cast<Eigen::Index>(layout.index(x, 0, 1));
    if (terms.force) {
      const ComplexVector col = force_column(grid, params, x);
      for (std::size_t v = 0; v < grid.num_v(); ++v) {
        m(static_cast<Eigen::Index>(layout.index(x, v, 0)), field) = col(static_cast<Eigen::Index>(v));
      }
    }
    if (terms.current) {
      const ComplexVector row = current_row(grid);
      for (std::size_t v = 0; v < grid.num_v(); ++v) {
        m(field, static_cast<Eigen::Index>(layout.index(x, v, 0))) = row(static_cast<Eigen::Index>(v));
      }
    }
  }
  m.diagonal().array() += Complex(0.0, params.omega0);
  return m;
}

ComplexVector apply_operator(const GridSpec& grid, const PlasmaParams& params,
                             const ComplexVector& u, OperatorTerms terms) {
  const StateLayout layout(grid);
  if (static_cast<std::size_t>(u.size()) != layout.dimension()) {
    throw std::invalid_argument("apply_operator: dimension mismatch");
  }
  const std::size_t nx = grid.num_x();
  const std::size_t nv = grid.num_v();
  const double w = 1.0 / (2.0 * grid.dx);
  auto at = [&](std::size_t x, std::size_t v, int e) {
    return u(static_cast<Eigen::Index>(layout.index(x, v, e)));
  };

  ComplexVector out = Complex(0.0, params.omega0) * u;
  for (std::size_t v = 0; v < nv; ++v) {
    const double vel = grid.v_points[v];
    for (std::size_t x = 0; x < nx; ++x) {
      Complex acc = 0.0;
      if (terms.advection && zeta(grid, x, v)) {
        Complex dgdx;
        if (x == 0) {
          dgdx = w * (-3.0 * at(0, v, 0) + 4.0 * at(1, v, 0) - at(2, v, 0));
        } else if (x == nx - 1) {
          dgdx = w * (at(nx - 3, v, 0) - 4.0 * at(nx - 2, v, 0) + 3.0 * at(nx - 1, v, 0));
        } else {
          dgdx = w * (at(x + 1, v, 0) - at(x - 1, v, 0));
        }
        acc += vel * dgdx;
      }
      if (terms.force) {
        acc -= dv_maxwellian(grid.x_points[x], vel, params) * at(x, 0, 1);
      }
      out(static_cast<Eigen::Index>(layout.index(x, v, 0))) += acc;
    }
  }
  if (terms.current) {
    for (std::size_t x = 0; x < nx; ++x) {
      Complex integral = 0.0;
      for (std::size_t v = 0; v < nv; ++v) integral += grid.v_points[v] * grid.dv * at(x, v, 0);
      out(static_cast<Eigen::Index>(layout.index(x, 0, 1))) += integral;
    }
  }
  return out;
}

ComplexVector assemble_rhs(const GridSpec& grid, const PlasmaParams& params) {
  const StateLayout layout(grid);
  ComplexVector b = ComplexVector::Zero(static_cast<Eigen::Index>(layout.dimension()));
  for (std::size_t x = 0; x < grid.num_x(); ++x) {
    b(static_cast<Eigen::Index>(layout.index(x, 0, 1))) = -params.source_at(grid.x_points[x]);
  }
  return b;
}

ComplexVector solve_classical(const ComplexMatrix& m, const ComplexVector& b) {
  if (m.rows() != m.cols() || m.rows() != b.size()) {
    throw std::invalid_argument("solve_classical: dimension mismatch");
  }
  if (m.rows() == 0) return ComplexVector(0);
  const Eigen::PartialPivLU<ComplexMatrix> lu(m);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot < 1e-14) {
    throw SingularMatrixError("solve_classical: pivot magnitude " + std::to_string(min_pivot) +
                              " below 1e-14");
  }
  ComplexVector x = lu.solve(b);
  const double bn = b.norm();
  const double residual = (m * x - b).norm() / (bn > 0.0 ? bn : 1.0);
  if (residual > 1e-10) {
    throw std::runtime_error("solve_classical: residual " + std::to_string(residual) +
                             " exceeds 1e-10");
  }
  return x;
}

ConditionReport condition_number(const ComplexMatrix& m, double scale) {
  ConditionReport r;
  if (m.size() == 0) throw std::invalid_argument("condition_number: empty matrix");
  const Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  r.sigma_max = s(0);
  r.sigma_min = s(s.size() - 1);
  const double tiny = std::numeric_limits<double>::epsilon() * r.sigma_max *
                      static_cast<double>(std::max(m.rows(), m.cols()));
  if (r.sigma_min <= tiny) {
    r.ratio = std::numeric_limits<double>::infinity();
    r.scaled = std::numeric_limits<double>::infinity();
  } else {
    r.ratio = r.sigma_max / r.sigma_min;
    r.scaled = scale / r.sigma_min;
  }
  return r;
}

}  // namespace vqls::problem
