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

#include "vqls/blockenc.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "vqls/builders.hpp"
#include "vqls/sim.hpp"

namespace vqls::blockenc {

using circuit::Control;
using circuit::Numeric;
using circuit::RegisterKind;
using problem::GridSpec;
using problem::PlasmaParams;

namespace {

Register join(const Register& a, Qubit q) {
  Register r = a;
  r.qubits.push_back(q);
  r.numeric = Numeric::Unsigned;
  return r;
}

Register single(Qubit q, const std::string& name = "q") {
  Register r;
  r.name = name;
  r.qubits = {q};
  return r;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

std::vector<double> scaled(const std::vector<double>& v, double f) {
  std::vector<double> out(v);
  for (double& a : out) a *= f;
  return out;
}

void require_constant_profiles(const PlasmaParams& params) {
  if (!params.density.is_constant() || !params.temperature.is_constant()) {
    throw BlockEncodingError(
        "the coupling block encodings need x-independent density and temperature profiles");
  }
}

// Standalone circuits start with the data registers so data index = layout index.
struct Alloc {
  Circuit c;
  Register x, v, e;

  Alloc(const GridSpec& g, bool with_x, bool with_v, bool with_e) {
    if (with_x) x = c.add_register("x", static_cast<std::size_t>(g.n_x), RegisterKind::Data);
    if (with_v) {
      v = c.add_register("v", static_cast<std::size_t>(g.n_v), RegisterKind::Data,
                         Numeric::TwosComplement);
    }
    if (with_e) e = c.add_register("e", 1, RegisterKind::Data);
  }
  Qubit block(const std::string& name) { return c.add_register(name, 1, RegisterKind::Block)[0]; }
};

ComplexMatrix advection_reference(const GridSpec& grid) {
  const problem::StateLayout layout(grid);
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  const auto half = dim / 2;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m.topLeftCorner(half, half) = problem::advection_matrix(grid);
  return m;
}

ComplexMatrix coupling_reference(const GridSpec& grid, const PlasmaParams& params,
                                 problem::OperatorTerms terms) {
  const auto nv = static_cast<Eigen::Index>(grid.num_v());
  ComplexMatrix m = ComplexMatrix::Zero(2 * nv, 2 * nv);
  const auto fe = force_table(grid, params);
  const auto cg = current_table(grid);
  for (Eigen::Index v = 0; v < nv; ++v) {
    if (terms.force) m(v, nv) = fe[static_cast<std::size_t>(v)];
    if (terms.current) m(nv, v) = cg[static_cast<std::size_t>(v)];
  }
  return m;
}

}  // namespace

DerivativeDecomp DerivativeDecomp::standard() {
  DerivativeDecomp d;
  d.table = {-1.5, 1.5, -0.5, 0.0};
  d.alpha = norm(d.table);
  d.theta_prep = 2.0 * std::acos(std::sqrt(d.alpha / (1.0 + d.alpha)));
  return d;
}

double raw_stencil_norm() { return std::sqrt(26.0); }

std::vector<Qubit> BlockEncoding::block_qubits() const {
  return circuit.qubits_of_kind(RegisterKind::Block);
}

std::vector<Qubit> BlockEncoding::data_qubits() const {
  return sim::data_qubits(circuit, block_qubits());
}

ComplexMatrix BlockEncoding::extract() const {
  return sim::extract_block(circuit, block_qubits(), scale);
}

double BlockEncoding::verify() const {
  if (!reference) throw BlockEncodingError("encoding '" + name + "' has no reference matrix");
  const ComplexMatrix b = extract();
  if (b.rows() != reference->rows() || b.cols() != reference->cols()) {
    throw BlockEncodingError("encoding '" + name + "': reference shape mismatch");
  }
  return max_abs_diff(b, *reference);
}

std::vector<double> force_table(const GridSpec& grid, const PlasmaParams& params) {
  require_constant_profiles(params);
  std::vector<double> t(grid.num_v());
  for (std::size_t v = 0; v < grid.num_v(); ++v) {
    t[v] = -problem::dv_maxwellian(grid.x_points[0], grid.v_points[v], params);
  }
  return t;
}

std::vector<double> current_table(const GridSpec& grid) {
  std::vector<double> t(grid.num_v());
  for (std::size_t v = 0; v < grid.num_v(); ++v) t[v] = grid.v_points[v] * grid.dv;
  return t;
}

Scales compute_scales(const GridSpec& grid, const PlasmaParams& params,
                      problem::OperatorTerms terms) {
  Scales s;
  s.alpha = DerivativeDecomp::standard().alpha;
  s.omega0 = params.omega0;
  s.s_F = terms.advection ? params.v_max * (1.0 + s.alpha) / grid.dx : 0.0;
  if (terms.force || terms.current) {
    s.beta_E = norm(force_table(grid, params));
    s.beta_g = norm(current_table(grid));
  }
  s.s_C = std::max(terms.force ? s.beta_E : 0.0, terms.current ? s.beta_g : 0.0);
  s.s = s.s_F + s.s_C + s.omega0;
  return s;
}

CouplingTables coupling_tables(const GridSpec& grid, const PlasmaParams& params,
                               problem::OperatorTerms terms) {
  const Scales s = compute_scales(grid, params, terms);
  CouplingTables t;
  const auto fe = force_table(grid, params);
  const auto cg = current_table(grid);
  t.eta_E = scaled(fe, 1.0 / norm(fe));
  t.eta_g = scaled(cg, 1.0 / norm(cg));
  t.weight_E = terms.force && s.s_C > 0.0 ? s.beta_E / s.s_C : 0.0;
  t.weight_g = terms.current && s.s_C > 0.0 ? s.beta_g / s.s_C : 0.0;
  return t;
}

Circuit zeta_circuit(const Register& x, const Register& v, Qubit flag) {
  if (v.numeric != Numeric::TwosComplement) {
    throw BlockEncodingError("zeta_circuit: v must be a two's-complement register");
  }
  const long long last = (1LL << x.width()) - 1;
  Circuit c = circuit::xor_predicate({circuit::eq(x, 0), circuit::gt0(v)}, flag);
  c.append(circuit::xor_predicate({circuit::eq(x, last), circuit::le0(v)}, flag));
  return c;
}

Circuit v_diag_circuit(const Register& v, Qubit flag) {
  const std::size_t nv = std::size_t{1} << v.width();
  const double half = static_cast<double>(nv / 2);
  std::vector<double> eta(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    eta[i] = static_cast<double>(problem::twos_complement_value(i, static_cast<int>(v.width()))) / half;
  }
  Circuit c = circuit::amplitude_assign(eta, v, flag);
  c.x(flag);
  return c;
}

Circuit d_bulk_circuit(const Register& x, Qubit b1, Qubit b2, AdderStyle style) {
  const Register ext = join(x, b1);
  Circuit outer;
  outer.h(b2);
  Circuit inner;
  inner.z(b2);
  inner.append(circuit::control_on({{b2, false}}, circuit::inplace_add_const(-1, ext, style)));
  inner.append(circuit::control_on({{b2, true}}, circuit::inplace_add_const(1, ext, style)));
  return circuit::conjugate(outer, inner);
}

Circuit d_boundary_side_circuit(const Register& x_low, Qubit b, Side side,
                                const DerivativeDecomp& decomp) {
  if (x_low.width() < 2) throw BlockEncodingError("boundary encoding needs n_x >= 3");
  Circuit left = circuit::invert(circuit::state_prep(scaled(decomp.table, 1.0 / decomp.alpha),
                                                     x_low.slice(0, 2)));
  left.append(circuit::xor_predicate({circuit::ne(x_low, 0)}, b));
  if (side == Side::Left) return left;

  Circuit flip;
  for (Qubit q : x_low.qubits) flip.x(q);
  Circuit inner;
  inner.ry(b, 2.0 * std::numbers::pi);  // -1 phase
  inner.append(left);
  return circuit::conjugate(flip, inner);
}

Circuit d_boundary_circuit(const Register& x, Qubit b, const DerivativeDecomp& decomp) {
  if (x.width() < 3) throw BlockEncodingError("boundary encoding needs n_x >= 3");
  const Register low = x.slice(0, x.width() - 1);
  const Qubit top = x.msb();
  Circuit c = circuit::control_on({{top, false}}, d_boundary_side_circuit(low, b, Side::Left, decomp));
  c.append(circuit::control_on({{top, true}}, d_boundary_side_circuit(low, b, Side::Right, decomp)));
  return c;
}

Circuit d_full_circuit(const Register& x, const DerivativeQubits& q, const DerivativeDecomp& decomp,
                       AdderStyle style) {
  Circuit c;
  c.ry(q.lcu, decomp.theta_prep);
  c.append(circuit::control_on({{q.lcu, false}}, d_boundary_circuit(x, q.b_bc, decomp)));
  c.append(circuit::control_on({{q.lcu, true}}, d_bulk_circuit(x, q.b1, q.b2, style)));
  c.ry(q.lcu, -decomp.theta_prep);
  return c;
}

Circuit f_circuit(const Register& x, const Register& v, Qubit e, const AdvectionQubits& q,
                  const DerivativeDecomp& decomp, AdderStyle style) {
  Circuit c = d_full_circuit(x, q.derivative, decomp, style);
  c.append(circuit::control_on({{e, false}}, zeta_circuit(x, v, q.zeta)));
  c.append(v_diag_circuit(v, q.vflag));
  c.cx(e, q.zeta);  // e = 1 leaves the block
  return c;
}

Circuit ce_circuit(const Register& v, Qubit b, const std::vector<double>& eta) {
  Circuit c = circuit::xor_predicate({circuit::ne(v, 0)}, b);
  c.append(circuit::state_prep(eta, v));
  return c;
}

Circuit cg_circuit(const Register& v, Qubit b, const std::vector<double>& eta) {
  Circuit c = circuit::invert(circuit::state_prep(eta, v));
  c.append(circuit::xor_predicate({circuit::ne(v, 0)}, b));
  return c;
}

Circuit off_diag_circuit(Qubit e, const Register& v, Qubit b0, Qubit b1, const CouplingTables& t) {
  Circuit c = circuit::control_on({{e, true}}, ce_circuit(v, b0, t.eta_E));
  c.append(circuit::control_on({{e, false}}, cg_circuit(v, b0, t.eta_g)));
  // Equalize the two branches to the common scale s_C.
  c.append(circuit::amplitude_assign({t.weight_g, t.weight_E}, single(e, "e"), b1));
  c.x(b1);
  c.x(e);
  return c;
}

BlockEncoding zeta_be(const GridSpec& grid) {
  Alloc a(grid, true, true, false);
  const Qubit f = a.block("zeta");
  a.c.append(zeta_circuit(a.x, a.v, f));
  return {"zeta", a.c, 1.0, problem::zeta_matrix(grid)};
}

BlockEncoding v_diag_be(const GridSpec& grid, const PlasmaParams& params) {
  Alloc a(grid, false, true, false);
  const Qubit f = a.block("vflag");
  a.c.append(v_diag_circuit(a.v, f));
  return {"v_diag", a.c, params.v_max, problem::velocity_matrix(grid)};
}

BlockEncoding d_bulk_be(const GridSpec& grid, AdderStyle style) {
  Alloc a(grid, true, false, false);
  const Qubit b1 = a.block("b1");
  const Qubit b2 = a.block("b2");
  a.c.append(d_bulk_circuit(a.x, b1, b2, style));
  return {"d_bulk", a.c, 1.0 / grid.dx, problem::bulk_derivative_matrix(grid)};
}

BlockEncoding d_boundary_be(const GridSpec& grid, Side side) {
  if (grid.n_x < 3) throw BlockEncodingError("boundary encoding needs n_x >= 3");
  const auto decomp = DerivativeDecomp::standard();
  Circuit c;
  const Register low = c.add_register("x_low", static_cast<std::size_t>(grid.n_x - 1), RegisterKind::Data);
  const Qubit b = c.add_register("b_bc", 1, RegisterKind::Block)[0];
  c.append(d_boundary_side_circuit(low, b, side, decomp));
  const ComplexMatrix full = problem::boundary_derivative_matrix(grid);
  const auto m = static_cast<Eigen::Index>(grid.num_x() / 2);
  ComplexMatrix ref = side == Side::Left ? ComplexMatrix(full.topLeftCorner(m, m))
                                         : ComplexMatrix(full.bottomRightCorner(m, m));
  return {side == Side::Left ? "d_boundary_left" : "d_boundary_right", c,
          decomp.alpha / grid.dx, ref};
}

BlockEncoding d_boundary_be(const GridSpec& grid) {
  const auto decomp = DerivativeDecomp::standard();
  Alloc a(grid, true, false, false);
  const Qubit b = a.block("b_bc");
  a.c.append(d_boundary_circuit(a.x, b, decomp));
  return {"d_boundary", a.c, decomp.alpha / grid.dx, problem::boundary_derivative_matrix(grid)};
}

BlockEncoding d_full_be(const GridSpec& grid, AdderStyle style) {
  const auto decomp = DerivativeDecomp::standard();
  Alloc a(grid, true, false, false);
  DerivativeQubits q;
  q.lcu = a.block("lcu_dx");
  q.b1 = a.block("b1");
  q.b2 = a.block("b2");
  q.b_bc = a.block("b_bc");
  a.c.append(d_full_circuit(a.x, q, decomp, style));
  return {"d_full", a.c, (1.0 + decomp.alpha) / grid.dx, problem::derivative_matrix(grid)};
}

namespace {

AdvectionQubits alloc_advection(Alloc& a) {
  AdvectionQubits q;
  q.derivative.lcu = a.block("lcu_dx");
  q.derivative.b1 = a.block("b1");
  q.derivative.b2 = a.block("b2");
  q.derivative.b_bc = a.block("b_bc");
  q.zeta = a.block("zeta");
  q.vflag = a.block("vflag");
  return q;
}

}  // namespace

BlockEncoding F_be(const GridSpec& grid, const PlasmaParams& params, AdderStyle style) {
  const auto decomp = DerivativeDecomp::standard();
  Alloc a(grid, true, true, true);
  const AdvectionQubits q = alloc_advection(a);
  a.c.append(f_circuit(a.x, a.v, a.e[0], q, decomp, style));
  return {"F", a.c, params.v_max * (1.0 + decomp.alpha) / grid.dx, advection_reference(grid)};
}

BlockEncoding cE_be(const GridSpec& grid, const PlasmaParams& params) {
  const auto t = force_table(grid, params);
  Alloc a(grid, false, true, false);
  const Qubit b = a.block("b");
  a.c.append(ce_circuit(a.v, b, scaled(t, 1.0 / norm(t))));
  const auto nv = static_cast<Eigen::Index>(grid.num_v());
  ComplexMatrix ref = ComplexMatrix::Zero(nv, nv);
  for (Eigen::Index v = 0; v < nv; ++v) ref(v, 0) = t[static_cast<std::size_t>(v)];
  return {"cE", a.c, norm(t), ref};
}

BlockEncoding cG_be(const GridSpec& grid, const PlasmaParams& params) {
  (void)params;
  const auto t = current_table(grid);
  Alloc a(grid, false, true, false);
  const Qubit b = a.block("b");
  a.c.append(cg_circuit(a.v, b, scaled(t, 1.0 / norm(t))));
  const auto nv = static_cast<Eigen::Index>(grid.num_v());
  ComplexMatrix ref = ComplexMatrix::Zero(nv, nv);
  for (Eigen::Index v = 0; v < nv; ++v) ref(0, v) = t[static_cast<std::size_t>(v)];
  return {"cG", a.c, norm(t), ref};
}

BlockEncoding off_diag_be(const GridSpec& grid, const PlasmaParams& params,
                          problem::OperatorTerms terms) {
  const Scales s = compute_scales(grid, params, terms);
  if (!(s.s_C > 0.0)) throw BlockEncodingError("off_diag_be: both couplings are disabled");
  Alloc a(grid, false, true, true);
  const Qubit b0 = a.block("b0");
  const Qubit b1 = a.block("b1");
  a.c.append(off_diag_circuit(a.e[0], a.v, b0, b1, coupling_tables(grid, params, terms)));
  return {"off_diag", a.c, s.s_C, coupling_reference(grid, params, terms)};
}

BlockEncoding full_be(const GridSpec& grid, const PlasmaParams& params, const FullOptions& options) {
  const auto decomp = DerivativeDecomp::standard();
  const Scales s = compute_scales(grid, params, options.terms);
  Alloc a(grid, true, true, true);
  const AdvectionQubits q = alloc_advection(a);
  const Register lcu = a.c.add_register("lcu", 2, RegisterKind::Block);
  Qubit c0 = q.derivative.b1;
  Qubit c1 = q.derivative.b2;
  if (!options.share_coupling_blocks) {
    c0 = a.block("c0");
    c1 = a.block("c1");
  }

  const Circuit prep = circuit::state_prep(
      {std::sqrt(s.s_F / s.s), std::sqrt(s.s_C / s.s), std::sqrt(s.omega0 / s.s), 0.0}, lcu);
  Circuit& c = a.c;
  c.append(prep);
  if (s.s_F > 0.0) {
    c.append(circuit::control_on(lcu, 0,
                                 f_circuit(a.x, a.v, a.e[0], q, decomp, options.adder)));
  }
  if (s.s_C > 0.0) {
    c.append(circuit::control_on(
        lcu, 1, off_diag_circuit(a.e[0], a.v, c0, c1, coupling_tables(grid, params, options.terms))));
  }
  Circuit phase;
  phase.global_phase(std::numbers::pi / 2.0);
  c.append(circuit::control_on(lcu, 2, phase));
  c.append(circuit::invert(prep));
  BlockEncoding be{"full", c, s.s, std::nullopt};
  if (options.attach_reference) be.reference = problem::assemble_operator(grid, params, options.terms);
  return be;
}

std::vector<BlockEncoding> all_encodings(const GridSpec& grid, const PlasmaParams& params) {
  std::vector<BlockEncoding> out;
  out.push_back(zeta_be(grid));
  out.push_back(v_diag_be(grid, params));
  out.push_back(d_bulk_be(grid));
  out.push_back(d_boundary_be(grid, Side::Left));
  out.push_back(d_boundary_be(grid, Side::Right));
  out.push_back(d_boundary_be(grid));
  out.push_back(d_full_be(grid));
  out.push_back(F_be(grid, params));
  out.push_back(cE_be(grid, params));
  out.push_back(cG_be(grid, params));
  out.push_back(off_diag_be(grid, params));
  out.push_back(full_be(grid, params));
  return out;
}

std::string manifest_json(const BlockEncoding& be) {
  const auto decomp = DerivativeDecomp::standard();
  nlohmann::ordered_json j;
  j["name"] = be.name;
  j["scale"] = be.scale;
  j["width"] = be.circuit.num_qubits();
  j["block_width"] = be.block_width();
  j["data_width"] = be.data_width();
  nlohmann::ordered_json regs = nlohmann::ordered_json::array();
  for (const Register& r : be.circuit.registers()) {
    regs.push_back({{"name", r.name},
                    {"kind", circuit::to_string(r.kind)},
                    {"numeric", circuit::to_string(r.numeric)},
                    {"qubits", r.qubits}});
  }
  j["registers"] = regs;
  if (be.reference) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(matrix_hash(*be.reference)));
    j["reference_hash"] = buf;
  } else {
    j["reference_hash"] = nullptr;
  }
  j["alpha"] = decomp.alpha;
  j["alpha_raw_stencil"] = raw_stencil_norm();
  j["theta_prep"] = decomp.theta_prep;
  return j.dump(2);
}

}  // namespace vqls::blockenc
