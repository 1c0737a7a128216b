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

#include "vqls/circuit_text.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <string_view>

namespace vqls::circuit {

namespace {

std::string fmt_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& v, F f) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += f(v[i]);
  }
  return s;
}

std::string controls_field(const std::vector<Control>& cs) {
  if (cs.empty()) return "";
  return " c=" + join(cs, [](const Control& c) {
           return (c.on_one ? "" : "~") + std::to_string(c.qubit);
         });
}

void write_ops(const Circuit& c, std::ostringstream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const Op& op : c.ops()) {
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, Gate>) {
            os << pad << to_string(b.kind);
            if (b.kind != GateKind::GlobalPhase) os << " t=" << b.target;
            if (b.kind != GateKind::X && b.kind != GateKind::H && b.kind != GateKind::Z) {
              os << " a=" << fmt_angle(b.angle);
            }
            os << controls_field(op.controls) << '\n';
          } else if constexpr (std::is_same_v<T, AddConst>) {
            os << pad << "ADD t=" << join(b.target, [](Qubit q) { return std::to_string(q); })
               << " k=" << b.addend << " style=" << (b.style == AdderStyle::Qft ? "qft" : "ripple")
               << controls_field(op.controls) << '\n';
          } else if constexpr (std::is_same_v<T, MultiplexedRY>) {
            os << pad << "MUXRY t=" << b.target;
            if (!b.select.empty()) {
              os << " s=" << join(b.select, [](Qubit q) { return std::to_string(q); });
            }
            os << " a=" << join(b.angles, fmt_angle) << controls_field(op.controls) << '\n';
          } else {
            os << pad << "WITHIN" << controls_field(op.controls) << '\n';
            write_ops(*b.outer, os, indent + 1);
            os << pad << "APPLY\n";
            write_ops(*b.inner, os, indent + 1);
            os << pad << "END\n";
          }
        },
        op.body);
  }
}

struct Parser {
  std::vector<std::string> lines;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw CircuitError("circuit text line " + std::to_string(pos) + ": " + why);
  }

  static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
  }

  static std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
  }

  long long to_int(const std::string& s) const {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size()) fail("bad integer '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad integer '" + s + "'");
    }
  }

  double to_double(const std::string& s) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) fail("bad number '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad number '" + s + "'");
    }
  }

  std::vector<Qubit> qubit_list(const std::string& s) const {
    std::vector<Qubit> out;
    for (const auto& p : split(s, ',')) out.push_back(static_cast<Qubit>(to_int(p)));
    return out;
  }

  std::vector<Control> control_list(const std::string& s) const {
    std::vector<Control> out;
    for (const auto& p : split(s, ',')) {
      if (!p.empty() && p[0] == '~') {
        out.push_back({static_cast<Qubit>(to_int(p.substr(1))), false});
      } else {
        out.push_back({static_cast<Qubit>(to_int(p)), true});
      }
    }
    return out;
  }

  // Parses ops until a line equal to one of the stop words (returned) or EOF.
  std::string parse_ops(Circuit& c, std::initializer_list<std::string_view> stops) {
    while (pos < lines.size()) {
      const auto w = words(lines[pos++]);
      if (w.empty()) continue;
      for (auto s : stops) {
        if (w[0] == s) return w[0];
      }
      std::map<std::string, std::string> kv;
      for (std::size_t i = 1; i < w.size(); ++i) {
        const auto eqp = w[i].find('=');
        if (eqp == std::string::npos) fail("expected key=value, got '" + w[i] + "'");
        kv[w[i].substr(0, eqp)] = w[i].substr(eqp + 1);
      }
      auto need = [&](const char* k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) fail(std::string("missing field '") + k + "'");
        return it->second;
      };
      Op op;
      if (kv.count("c")) op.controls = control_list(kv["c"]);
      const std::string& kind = w[0];
      if (kind == "WITHIN") {
        Circuit outer, inner;
        if (parse_ops(outer, {"APPLY"}) != "APPLY") fail("WITHIN without APPLY");
        if (parse_ops(inner, {"END"}) != "END") fail("WITHIN without END");
        outer.ensure_qubits(c.num_qubits());
        inner.ensure_qubits(c.num_qubits());
        op.body = Within{std::make_shared<const Circuit>(std::move(outer)),
                         std::make_shared<const Circuit>(std::move(inner))};
      } else if (kind == "ADD") {
        AddConst a;
        a.target = qubit_list(need("t"));
        a.addend = to_int(need("k"));
        if (kv.count("style")) {
          if (kv["style"] == "qft") a.style = AdderStyle::Qft;
          else if (kv["style"] == "ripple") a.style = AdderStyle::Ripple;
          else fail("unknown adder style '" + kv["style"] + "'");
        }
        op.body = std::move(a);
      } else if (kind == "MUXRY") {
        MultiplexedRY m;
        m.target = static_cast<Qubit>(to_int(need("t")));
        if (kv.count("s")) m.select = qubit_list(kv["s"]);
        for (const auto& p : split(need("a"), ',')) m.angles.push_back(to_double(p));
        op.body = std::move(m);
      } else {
        Gate g;
        if (kind == "X") g.kind = GateKind::X;
        else if (kind == "H") g.kind = GateKind::H;
        else if (kind == "Z") g.kind = GateKind::Z;
        else if (kind == "RY") g.kind = GateKind::RY;
        else if (kind == "RZ") g.kind = GateKind::RZ;
        else if (kind == "PHASE") g.kind = GateKind::Phase;
        else if (kind == "GPHASE") g.kind = GateKind::GlobalPhase;
        else fail("unknown op '" + kind + "'");
        if (g.kind != GateKind::GlobalPhase) g.target = static_cast<Qubit>(to_int(need("t")));
        if (g.kind != GateKind::X && g.kind != GateKind::H && g.kind != GateKind::Z) {
          g.angle = to_double(need("a"));
        }
        op.body = g;
      }
      c.push(std::move(op));
    }
    return "";
  }
};

}  // namespace

std::string to_text(const Circuit& c) {
  std::ostringstream os;
  os << "vqls-circuit 1\n";
  os << "qubits " << c.num_qubits() << '\n';
  for (const Register& r : c.registers()) {
    os << "register " << r.name << ' ' << to_string(r.kind) << ' ' << to_string(r.numeric);
    for (Qubit q : r.qubits) os << ' ' << q;
    os << '\n';
  }
  write_ops(c, os, 0);
  return os.str();
}

Circuit from_text(const std::string& text) {
  Parser p;
  p.lines = Parser::split(text, '\n');
  if (p.lines.empty() || Parser::words(p.lines[0]) != std::vector<std::string>{"vqls-circuit", "1"}) {
    throw CircuitError("circuit text: missing 'vqls-circuit 1' header");
  }
  p.pos = 1;
  Circuit c;
  while (p.pos < p.lines.size()) {
    const auto w = Parser::words(p.lines[p.pos]);
    if (w.empty()) {
      ++p.pos;
      continue;
    }
    if (w[0] == "qubits" && w.size() == 2) {
      c.ensure_qubits(static_cast<std::size_t>(p.to_int(w[1])));
    } else if (w[0] == "register" && w.size() >= 5) {
      Register r;
      r.name = w[1];
      if (w[2] == "data") r.kind = RegisterKind::Data;
      else if (w[2] == "block") r.kind = RegisterKind::Block;
      else if (w[2] == "ancilla") r.kind = RegisterKind::Ancilla;
      else p.fail("unknown register kind '" + w[2] + "'");
      if (w[3] == "unsigned") r.numeric = Numeric::Unsigned;
      else if (w[3] == "twos") r.numeric = Numeric::TwosComplement;
      else p.fail("unknown numeric kind '" + w[3] + "'");
      for (std::size_t i = 4; i < w.size(); ++i) r.qubits.push_back(static_cast<Qubit>(p.to_int(w[i])));
      c.declare_register(std::move(r));
    } else {
      break;
    }
    ++p.pos;
  }
  const std::string stop = p.parse_ops(c, {"APPLY", "END"});
  if (!stop.empty()) p.fail("unexpected " + stop);
  c.validate();
  return c;
}

}  // namespace vqls::circuit
