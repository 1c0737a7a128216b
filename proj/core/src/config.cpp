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
#include "vqls/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vqls::config {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw ConfigError("'" + key + "' must be true or false");
  return j.get<bool>();
}

problem::Profile profile(const json& j, const std::string& key) {
  if (j.is_number()) return problem::Profile::constant(j.get<double>());
  if (!j.is_array() || j.empty()) throw ConfigError("'" + key + "' must be a number or [[x, value], ...]");
  std::vector<std::pair<double, double>> nodes;
  for (const json& node : j) {
    if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
      throw ConfigError("'" + key + "' nodes must be [x, value] pairs");
    }
    nodes.emplace_back(node[0].get<double>(), node[1].get<double>());
  }
  try {
    return problem::Profile::table(std::move(nodes));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("'" + key + "': " + e.what());
  }
}

json profile_json(const problem::Profile& p) {
  if (p.is_constant()) return p.nodes().front().second;
  json arr = json::array();
  for (const auto& [x, y] : p.nodes()) arr.push_back({x, y});
  return arr;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

std::vector<std::pair<int, int>> RunSettings::default_sizes() {
  std::vector<std::pair<int, int>> s;
  for (int nx = 3; nx <= 6; ++nx) {
    for (int nv = 2; nv <= 4; ++nv) s.emplace_back(nx, nv);
  }
  return s;
}

static RunSettings parse_object(const json& j, RunSettings s) {
  if (!j.is_object()) throw ConfigError("settings must be a JSON object");
  check_keys(j,
             {"n_x", "n_v", "omega0", "x_max", "v_max", "density", "temperature", "source", "terms",
              "kappa", "eps", "max_degree", "strategy", "ancillas", "sizes"},
             "settings");
  if (j.contains("n_x")) s.n_x = integer(j["n_x"], "n_x");
  if (j.contains("n_v")) s.n_v = integer(j["n_v"], "n_v");
  if (j.contains("omega0")) s.params.omega0 = number(j["omega0"], "omega0");
  if (j.contains("x_max")) s.params.x_max = number(j["x_max"], "x_max");
  if (j.contains("v_max")) s.params.v_max = number(j["v_max"], "v_max");
  if (j.contains("density")) s.params.density = profile(j["density"], "density");
  if (j.contains("temperature")) s.params.temperature = profile(j["temperature"], "temperature");
  if (j.contains("source")) {
    const json& src = j["source"];
    if (!src.is_object()) throw ConfigError("'source' must be an object");
    check_keys(src, {"amplitude", "center", "sigma"}, "source");
    if (src.contains("amplitude")) {
      const json& a = src["amplitude"];
      if (a.is_number()) {
        s.params.source.amplitude = {a.get<double>(), 0.0};
      } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
        s.params.source.amplitude = {a[0].get<double>(), a[1].get<double>()};
      } else {
        throw ConfigError("'source.amplitude' must be a number or [re, im]");
      }
    }
    if (src.contains("center")) s.params.source.center = number(src["center"], "source.center");
    if (src.contains("sigma")) s.params.source.sigma = number(src["sigma"], "source.sigma");
  }
  if (j.contains("terms")) {
    const json& t = j["terms"];
    if (!t.is_object()) throw ConfigError("'terms' must be an object");
    check_keys(t, {"advection", "force", "current"}, "terms");
    if (t.contains("advection")) s.terms.advection = boolean(t["advection"], "terms.advection");
    if (t.contains("force")) s.terms.force = boolean(t["force"], "terms.force");
    if (t.contains("current")) s.terms.current = boolean(t["current"], "terms.current");
  }
  if (j.contains("kappa")) s.solver.kappa = number(j["kappa"], "kappa");
  if (j.contains("eps")) s.solver.eps = number(j["eps"], "eps");
  if (j.contains("max_degree")) s.solver.max_degree = integer(j["max_degree"], "max_degree");
  if (j.contains("strategy")) {
    if (!j["strategy"].is_string()) throw ConfigError("'strategy' must be a string");
    try {
      s.strategy = lower::strategy_from_string(j["strategy"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("ancillas")) {
    const int a = integer(j["ancillas"], "ancillas");
    if (a < 0) throw ConfigError("'ancillas' must be non-negative");
    s.ancillas = static_cast<std::size_t>(a);
  }
  if (j.contains("sizes")) {
    const json& sz = j["sizes"];
    if (!sz.is_array()) throw ConfigError("'sizes' must be [[n_x, n_v], ...]");
    s.sizes.clear();
    for (const json& p : sz) {
      if (!p.is_array() || p.size() != 2) throw ConfigError("'sizes' entries must be [n_x, n_v]");
      s.sizes.emplace_back(integer(p[0], "sizes"), integer(p[1], "sizes"));
    }
  }
  return s;
}

RunSettings parse_settings(const std::string& json_text, RunSettings base) {
  json j;
  try {
    j = json::parse(json_text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(e.what());
  }
  return parse_object(j, std::move(base));
}

RunSettings load_settings(const std::filesystem::path& path, RunSettings base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_settings(text.str(), std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError("config file '" + path.string() + "': " + e.what());
  }
}

std::string settings_json(const RunSettings& s) {
  nlohmann::ordered_json j;
  j["n_x"] = s.n_x;
  j["n_v"] = s.n_v;
  j["omega0"] = s.params.omega0;
  j["x_max"] = s.params.x_max;
  j["v_max"] = s.params.v_max;
  j["density"] = profile_json(s.params.density);
  j["temperature"] = profile_json(s.params.temperature);
  nlohmann::ordered_json src;
  src["amplitude"] = {s.params.source.amplitude.real(), s.params.source.amplitude.imag()};
  src["center"] = s.params.source.center.value_or(s.params.x_max / 2.0);
  src["sigma"] = s.params.source.sigma.value_or(s.params.x_max / 8.0);
  j["source"] = src;
  j["terms"] = {{"advection", s.terms.advection}, {"force", s.terms.force}, {"current", s.terms.current}};
  j["kappa"] = s.solver.kappa;
  j["eps"] = s.solver.eps;
  j["max_degree"] = s.solver.max_degree;
  j["strategy"] = lower::to_string(s.strategy);
  j["ancillas"] = s.ancillas;
  return j.dump();
}

}  // namespace vqls::config
