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
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "vqls/problem.hpp"

using namespace vqls;
using namespace vqls::problem;

namespace {

constexpr double kAnchorSigmaMin = 0.021516450725808222;
constexpr double kAnchorRatio = 578.75632554214508;

// Direct entry-by-entry construction of i*omega0 + A from the stencil
// rules, independent of the library's Kronecker assembly.
ComplexMatrix oracle_operator(int nx, int nv, const PlasmaParams& p) {
  const std::size_t N = std::size_t{1} << nx, Nv = std::size_t{1} << nv;
  const double dx = p.x_max / static_cast<double>(N);
  const double dv = 2.0 * p.v_max / static_cast<double>(Nv);
  const auto idx = [&](std::size_t x, std::size_t v, std::size_t e) { return x + N * v + N * Nv * e; };
  const auto vval = [&](std::size_t i) {
    const long long s = i >= Nv / 2 ? static_cast<long long>(i) - static_cast<long long>(Nv) : static_cast<long long>(i);
    return static_cast<double>(s) * dv;
  };
  ComplexMatrix m = ComplexMatrix::Zero(2 * N * Nv, 2 * N * Nv);
  for (std::size_t i = 0; i < 2 * N * Nv; ++i) m(i, i) = Complex(0.0, p.omega0);
  for (std::size_t x = 0; x < N; ++x) {
    const double xv = static_cast<double>(x) * dx;
    for (std::size_t v = 0; v < Nv; ++v) {
      const double vv = vval(v);
      const bool masked = (x == 0 && vv > 0) || (x == N - 1 && vv <= 0);
      if (!masked) {
        const double f = vv / (2.0 * dx);
        if (x == 0) {
          m(idx(0, v, 0), idx(0, v, 0)) += -3.0 * f;
          m(idx(0, v, 0), idx(1, v, 0)) += 4.0 * f;
          m(idx(0, v, 0), idx(2, v, 0)) += -1.0 * f;
        } else if (x == N - 1) {
          m(idx(x, v, 0), idx(x - 2, v, 0)) += 1.0 * f;
          m(idx(x, v, 0), idx(x - 1, v, 0)) += -4.0 * f;
          m(idx(x, v, 0), idx(x, v, 0)) += 3.0 * f;
        } else {
          m(idx(x, v, 0), idx(x + 1, v, 0)) += f;
          m(idx(x, v, 0), idx(x - 1, v, 0)) -= f;
        }
      }
      const double n = p.density(xv), T = p.temperature(xv);
      const double F = n / std::sqrt(2.0 * std::numbers::pi * T) * std::exp(-vv * vv / (2.0 * T));
      m(idx(x, v, 0), idx(x, 0, 1)) += (vv / T) * F;  // -dF/dv
      m(idx(x, 0, 1), idx(x, v, 0)) += vv * dv;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("make_grid spacing and two's-complement velocity order") {
  PlasmaParams p;
  p.x_max = 8.0;
  const auto g = make_grid(p, 3, 2);
  CHECK(g.num_x() == 8);
  CHECK(g.dx == doctest::Approx(1.0));
  for (std::size_t i = 0; i < 8; ++i) CHECK(g.x_points[i] == doctest::Approx(static_cast<double>(i)));

  PlasmaParams q;
  q.v_max = 1.0;
  const auto h = make_grid(q, 3, 2);
  const std::vector<double> expect = {0.0, 0.5, -1.0, -0.5};
  for (std::size_t i = 0; i < 4; ++i) CHECK(h.v_points[i] == doctest::Approx(expect[i]));
  CHECK(h.dimension() == 64);

  CHECK_THROWS_AS(make_grid(p, 2, 2), std::invalid_argument);
  PlasmaParams bad;
  bad.x_max = -1.0;
  CHECK_THROWS_AS(make_grid(bad, 3, 2), std::invalid_argument);
  bad = PlasmaParams{};
  bad.v_max = 0.0;
  CHECK_THROWS_AS(make_grid(bad, 3, 2), std::invalid_argument);
}

TEST_CASE("velocity table matches signed index times dv") {
  PlasmaParams p;
  for (int nv = 1; nv <= 5; ++nv) {
    const auto g = make_grid(p, 3, nv);
    const double dv = 2.0 * p.v_max / static_cast<double>(1 << nv);
    for (std::size_t i = 0; i < g.num_v(); ++i) {
      CHECK(g.v_points[i] == doctest::Approx(static_cast<double>(twos_complement_value(i, nv)) * dv));
    }
  }
}

TEST_CASE("maxwellian and its velocity derivative") {
  PlasmaParams p;
  CHECK(maxwellian(3.0, 0.0, p) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-12));
  double prev = maxwellian(1.0, 0.0, p);
  for (double v = 0.5; v < 12.0; v += 0.5) {
    const double f = maxwellian(1.0, v, p);
    CHECK(f < prev);
    CHECK(f >= 0.0);
    CHECK(maxwellian(1.0, -v, p) == doctest::Approx(f));
    prev = f;
  }
  CHECK(maxwellian(1.0, 40.0, p) < 1e-300);
  CHECK(dv_maxwellian(2.0, 0.0, p) == 0.0);

  p.density = Profile::table({{0.0, 1.0}, {10.0, 2.0}});
  p.temperature = Profile::table({{0.0, 0.5}, {10.0, 1.5}});
  const double h = 1e-4;
  for (double x : {0.0, 2.5, 7.0}) {
    for (double v : {-2.0, -0.3, 0.4, 1.7}) {
      const double fd = (maxwellian(x, v + h, p) - maxwellian(x, v - h, p)) / (2 * h);
      CHECK(std::abs(dv_maxwellian(x, v, p) - fd) <= 1e-6);
      if (v > 0) CHECK(dv_maxwellian(x, v, p) < 0.0);
    }
  }
}

TEST_CASE("assembled operator equals the entry-by-entry oracle") {
  for (auto [nx, nv] : {std::pair{3, 2}, {3, 3}, {4, 2}, {4, 3}}) {
    PlasmaParams p;
    const auto g = make_grid(p, nx, nv);
    const ComplexMatrix m = assemble_operator(g, p);
    CHECK(max_abs_diff(m, oracle_operator(nx, nv, p)) <= 1e-12);
  }
  PlasmaParams p;
  p.density = Profile::table({{0.0, 0.8}, {10.0, 1.3}});
  p.temperature = Profile::table({{0.0, 1.2}, {5.0, 0.9}, {10.0, 1.1}});
  const auto g = make_grid(p, 3, 2);
  CHECK(max_abs_diff(assemble_operator(g, p), oracle_operator(3, 2, p)) <= 1e-12);
}

TEST_CASE("operator structure") {
  PlasmaParams p;
  const auto g = make_grid(p, 3, 2);
  const StateLayout L(g);
  const ComplexMatrix m = assemble_operator(g, p);
  const ComplexMatrix a = m - Complex(0.0, p.omega0) * ComplexMatrix::Identity(m.rows(), m.cols());

  // E -> E block is zero.
  for (std::size_t i = 0; i < L.dimension(); ++i) {
    for (std::size_t j = 0; j < L.dimension(); ++j) {
      if (L.e_of(i) == 1 && L.e_of(j) == 1) CHECK(a(i, j) == Complex(0.0, 0.0));
      if (L.is_unused(i) || L.is_unused(j)) CHECK(a(i, j) == Complex(0.0, 0.0));
    }
  }
  // Interior superdiagonal entry v / (2 dx).
  for (std::size_t v = 0; v < L.num_v(); ++v) {
    for (std::size_t x = 1; x + 1 < L.num_x(); ++x) {
      CHECK(std::abs(a(L.index(x, v, 0), L.index(x + 1, v, 0)) - g.v_points[v] / (2.0 * g.dx)) < 1e-12);
    }
  }
  const ComplexMatrix none = assemble_operator(g, p, OperatorTerms::none());
  CHECK(max_abs_diff(none, Complex(0.0, p.omega0) * ComplexMatrix::Identity(m.rows(), m.cols())) == 0.0);
}

TEST_CASE("matrix-free apply agrees with the assembled matrix") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  for (auto [nx, nv] : {std::pair{3, 2}, {4, 3}}) {
    PlasmaParams p;
    p.temperature = Profile::table({{0.0, 1.0}, {10.0, 2.0}});
    const auto g = make_grid(p, nx, nv);
    const ComplexMatrix m = assemble_operator(g, p);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      ComplexVector u(m.cols());
      for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = Complex(n01(rng), n01(rng));
      worst = std::max(worst, (m * u - apply_operator(g, p, u)).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("outflow mask counts") {
  PlasmaParams p;
  for (int nv = 1; nv <= 4; ++nv) {
    const auto g = make_grid(p, 3, nv);
    std::size_t left = 0, right = 0;
    for (std::size_t v = 0; v < g.num_v(); ++v) {
      left += !zeta(g, 0, v);
      right += !zeta(g, g.num_x() - 1, v);
      for (std::size_t x = 1; x + 1 < g.num_x(); ++x) CHECK(zeta(g, x, v));
    }
    const std::size_t half = g.num_v() / 2;
    CHECK(left == half - 1);   // v > 0
    CHECK(right == half + 1);  // v <= 0, including v = 0
    CHECK(left + right == g.num_v());
  }
}

TEST_CASE("derivative annihilates constants, bulk plus boundary is the full stencil") {
  PlasmaParams p;
  for (int nx : {3, 4, 5}) {
    const auto g = make_grid(p, nx, 2);
    const ComplexMatrix d = derivative_matrix(g);
    const ComplexVector ones = ComplexVector::Ones(d.cols());
    CHECK((d * ones).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(max_abs_diff(bulk_derivative_matrix(g) + boundary_derivative_matrix(g), d) <= 1e-12);
    // Exact on linear functions, including the one-sided rows.
    ComplexVector lin(d.cols());
    for (Eigen::Index i = 0; i < lin.size(); ++i) lin(i) = g.x_points[i];
    CHECK(((d * lin).array() - 1.0).abs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("right-hand side") {
  PlasmaParams p;
  const auto g = make_grid(p, 3, 2);
  const StateLayout L(g);
  const ComplexVector b = assemble_rhs(g, p);
  double jn = 0.0;
  for (std::size_t i = 0; i < L.dimension(); ++i) {
    if (L.is_field(i)) {
      const std::size_t x = L.x_of(i);
      CHECK(std::abs(b(i) + p.source_at(g.x_points[x])) < 1e-15);
      jn += std::norm(p.source_at(g.x_points[x]));
    } else {
      CHECK(b(i) == Complex(0.0, 0.0));
    }
  }
  CHECK(b.norm() == doctest::Approx(std::sqrt(jn)).epsilon(1e-14));
  p.source.amplitude = 0.0;
  CHECK(assemble_rhs(g, p).norm() == 0.0);
}

TEST_CASE("classical solve") {
  const ComplexMatrix I = ComplexMatrix::Identity(8, 8);
  ComplexVector b(8);
  for (int i = 0; i < 8; ++i) b(i) = Complex(i + 1.0, -i);
  CHECK((solve_classical(I, b) - b).norm() <= 1e-15);
  const double w = 1.2;
  CHECK((solve_classical(Complex(0.0, w) * I, b) - b / Complex(0.0, w)).norm() <= 1e-14);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  ComplexMatrix m(16, 16);
  for (Eigen::Index i = 0; i < 16; ++i)
    for (Eigen::Index j = 0; j < 16; ++j) m(i, j) = Complex(n01(rng), n01(rng));
  m += 8.0 * ComplexMatrix::Identity(16, 16);
  ComplexVector r(16);
  for (Eigen::Index i = 0; i < 16; ++i) r(i) = Complex(n01(rng), n01(rng));
  const ComplexVector x = solve_classical(m, r);
  CHECK((m * x - r).norm() / r.norm() <= 1e-10);

  ComplexMatrix sing = ComplexMatrix::Identity(4, 4);
  sing(2, 2) = 0.0;
  CHECK_THROWS_AS(solve_classical(sing, ComplexVector::Ones(4)), SingularMatrixError);

  for (auto [nx, nv] : {std::pair{3, 2}, {3, 3}, {4, 2}, {4, 3}}) {
    PlasmaParams p;
    const auto g = make_grid(p, nx, nv);
    const ComplexMatrix mm = assemble_operator(g, p);
    const ComplexVector rhs = assemble_rhs(g, p);
    const ComplexVector psi = solve_classical(mm, rhs);
    CHECK((mm * psi - rhs).norm() / rhs.norm() <= 1e-10);
  }
}

TEST_CASE("condition numbers") {
  CHECK(condition_number(ComplexMatrix::Identity(5, 5)).ratio == doctest::Approx(1.0));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const auto r = condition_number(d, 3.0);
  CHECK(r.ratio == doctest::Approx(2.0));
  CHECK(r.scaled == doctest::Approx(3.0));
  d(1, 1) = 0.0;
  CHECK(std::isinf(condition_number(d).ratio));

  PlasmaParams p;
  const auto g = make_grid(p, 3, 2);
  const auto c = condition_number(assemble_operator(g, p));
  CHECK(std::isfinite(c.ratio));
  // Regression anchors for the default (3,2) instance.
  CHECK(c.sigma_min == doctest::Approx(kAnchorSigmaMin).epsilon(1e-9));
  CHECK(c.ratio == doctest::Approx(kAnchorRatio).epsilon(1e-9));
}

TEST_CASE("matrix dump round trip") {
  ComplexMatrix m(3, 2);
  m << Complex(1, 2), Complex(-0.5, 0), Complex(0, 1e-300), Complex(3, -4), Complex(7, 7), Complex(-1, -1);
  const std::string bytes = encode_dump(m);
  CHECK(bytes.size() == 16 + 16 * 6);
  CHECK(bytes.substr(0, 4) == "VQCM");
  CHECK(max_abs_diff(decode_dump(bytes), m) == 0.0);
  CHECK_THROWS(decode_dump(bytes.substr(0, 20)));
}
