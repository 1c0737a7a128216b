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

#include "vqls/phases.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace vqls::qsvt {

namespace {

// Im <0|U_W(x)|0> for symmetric phases given by their first half red[0..n-1]
// (degree 2n - 1). With A = e^{i red_0 Z} W e^{i red_1 Z} ... W e^{i red_{n-1} Z}
// the full product is A W A^T, so <0|U|0> = r W r^T with r = <0|A.
double reduced_im(const std::vector<double>& red, const std::vector<double>& cs,
                  const std::vector<double>& sn, double x, double s) {
  double r0re = cs[0], r0im = sn[0], r1re = 0.0, r1im = 0.0;
  for (std::size_t k = 1; k < red.size(); ++k) {
    // r <- r W
    const double a_re = r0re * x - r1im * s, a_im = r0im * x + r1re * s;
    const double b_re = r1re * x - r0im * s, b_im = r1im * x + r0re * s;
    // r <- r e^{i red_k Z}
    r0re = a_re * cs[k] - a_im * sn[k];
    r0im = a_re * sn[k] + a_im * cs[k];
    r1re = b_re * cs[k] + b_im * sn[k];
    r1im = b_im * cs[k] - b_re * sn[k];
  }
  // x r0^2 + 2 i s r0 r1 + x r1^2
  const double r00im = 2.0 * r0re * r0im;
  const double r11im = 2.0 * r1re * r1im;
  const double r01re = r0re * r1re - r0im * r1im;
  return x * (r00im + r11im) + 2.0 * s * r01re;
}

}  // namespace

std::vector<double> PhaseSequence::reflection_angles() const {
  const int d = degree();
  if (d < 1) return {};
  std::vector<double> phi(static_cast<std::size_t>(d));
  const double h = std::numbers::pi / 2.0;
  phi[0] = angles[0] + angles[static_cast<std::size_t>(d)] - h;
  for (int j = 1; j < d; ++j) phi[static_cast<std::size_t>(j)] = angles[static_cast<std::size_t>(j)] - h;
  return phi;
}

PhaseSequence qsvt_phases(const ChebyshevSeries& poly, const PhaseOptions& options,
                          PhaseReport* report) {
  const int d = poly.degree();
  if (d < 1 || d % 2 == 0) throw PhaseError("qsvt_phases: degree must be odd", 0.0);
  if (!poly.is_odd()) throw PhaseError("qsvt_phases: polynomial is not odd", 0.0);
  const std::size_t n = static_cast<std::size_t>(d + 1) / 2;

  // Reflection and W_x transforms differ by (-i)^d; pick the W_x target so
  // that Re <0|U_R|0> = p.
  const double sign = (d % 4 == 3) ? -1.0 : 1.0;
  std::vector<double> target(n);  // target[j] = coefficient of T_{d-2j}
  for (std::size_t j = 0; j < n; ++j) {
    target[j] = sign * poly.coeffs()[static_cast<std::size_t>(d) - 2 * j];
  }

  // Degree 1: Im <0|U|0> = sin(2 psi) x, solved directly. The iteration
  // stalls here when |c_1| = 1.
  if (d == 1) {
    if (std::abs(target[0]) > 1.0) throw PhaseError("qsvt_phases: |p| exceeds 1", std::abs(target[0]) - 1.0);
    const double psi = 0.5 * std::asin(target[0]);
    if (report) *report = {0, 0.0};
    return PhaseSequence{{psi, psi}};
  }

  // K = d + 1 first-kind nodes recover degree-d coefficients exactly; the
  // first n nodes are positive and oddness gives the rest.
  const std::size_t nodes = 2 * n;
  std::vector<double> xs(n), ss(n);
  for (std::size_t k = 0; k < n; ++k) {
    xs[k] = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(nodes));
    ss[k] = std::sqrt(std::max(0.0, 1.0 - xs[k] * xs[k]));
  }

  std::vector<double> red(n, 0.0), cs(n), sn(n), vals(nodes);
  double residual = 0.0;
  for (int it = 0; it <= options.max_iterations; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      cs[k] = std::cos(red[k]);
      sn[k] = std::sin(red[k]);
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double g = reduced_im(red, cs, sn, xs[k], ss[k]);
      vals[k] = g;
      vals[nodes - 1 - k] = -g;
    }
    const std::vector<double> coeffs = chebyshev_coefficients(vals);
    residual = 0.0;
    std::vector<double> r(n);
    for (std::size_t j = 0; j < n; ++j) {
      r[j] = coeffs[static_cast<std::size_t>(d) - 2 * j] - target[j];
      residual = std::max(residual, std::abs(r[j]));
    }
    if (residual < options.tolerance) {
      if (report) *report = {it, residual};
      PhaseSequence out;
      out.angles.resize(static_cast<std::size_t>(d) + 1);
      for (std::size_t j = 0; j < n; ++j) {
        out.angles[j] = red[j];
        out.angles[static_cast<std::size_t>(d) - j] = red[j];
      }
      return out;
    }
    for (std::size_t j = 0; j < n; ++j) red[j] -= 0.5 * r[j];
  }
  throw PhaseError("qsvt_phases: no convergence after " + std::to_string(options.max_iterations) +
                       " iterations (residual " + std::to_string(residual) + ")",
                   residual);
}

Complex qsp_wx(const std::vector<double>& angles, double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  const Complex i(0.0, 1.0);
  // Column vector U|0>, built right to left.
  Complex a = std::exp(i * angles.back()), b = 0.0;
  for (std::size_t k = angles.size() - 1; k-- > 0;) {
    const Complex na = x * a + i * s * b;
    const Complex nb = i * s * a + x * b;
    a = na * std::exp(i * angles[k]);
    b = nb * std::exp(-i * angles[k]);
  }
  return a;
}

double qsvt_scalar(const PhaseSequence& phases, double x) {
  const auto phi = phases.reflection_angles();
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  const Complex i(0.0, 1.0);
  // U|0> right to left: R first, then e^{i phi_d Z}, ..., R, e^{i phi_1 Z}.
  Complex a = 1.0, b = 0.0;
  for (std::size_t k = phi.size(); k-- > 0;) {
    const Complex na = x * a + s * b;
    const Complex nb = s * a - x * b;
    a = na * std::exp(i * phi[k]);
    b = nb * std::exp(-i * phi[k]);
  }
  return a.real();
}

double reconstruction_error(const PhaseSequence& phases, const ChebyshevSeries& poly, double a,
                            double b, int n) {
  double err = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = n == 1 ? a : a + (b - a) * k / (n - 1);
    err = std::max(err, std::abs(qsvt_scalar(phases, x) - poly(x)));
  }
  return err;
}

std::string phases_to_text(const PhaseSequence& phases) {
  std::string out;
  char buf[40];
  for (double a : phases.angles) {
    std::snprintf(buf, sizeof buf, "%.17g\n", a);
    out += buf;
  }
  return out;
}

PhaseSequence phases_from_text(const std::string& text) {
  PhaseSequence p;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      p.angles.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw std::runtime_error("phase file: bad line '" + line + "'");
    }
  }
  return p;
}

void write_phases(const std::filesystem::path& path, const PhaseSequence& phases) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << phases_to_text(phases);
}

PhaseSequence read_phases(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return phases_from_text(ss.str());
}

}  // namespace vqls::qsvt
