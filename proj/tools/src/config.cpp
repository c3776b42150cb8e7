// Copyright 2026 The spinnet Authors
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
#include "spinnet_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <yaml-cpp/yaml.h>

#include "spinnet/spectral.hpp"

namespace spinnet::cli {

const char* to_string(Task task) {
  switch (task) {
    case Task::spectrum: return "spectrum";
    case Task::simulate: return "simulate";
    case Task::calibrate: return "calibrate";
    case Task::route: return "route";
    case Task::plan: return "plan";
    case Task::entangle: return "entangle";
  }
  return "?";
}

std::optional<Task> parse_task(const std::string& name) {
  for (Task t : {Task::spectrum, Task::simulate, Task::calibrate, Task::route, Task::plan,
                 Task::entangle}) {
    if (name == to_string(t)) return t;
  }
  return std::nullopt;
}

namespace {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t next = std::min({row[j] + 1, row[j - 1] + 1,
                                         diagonal + (a[i - 1] == b[j - 1] ? 0u : 1u)});
      diagonal = row[j];
      row[j] = next;
    }
  }
  return row[b.size()];
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& field,
                         const std::string& message) const {
    std::ostringstream out;
    out << source_;
    if (at.IsDefined() && at.Mark().line >= 0) out << ':' << at.Mark().line + 1;
    out << ": " << field << ": " << message;
    throw ConfigError(out.str());
  }

  void require_map(const YAML::Node& node, const std::string& field) const {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
  }

  void check_keys(const YAML::Node& map, const std::string& field,
                  std::initializer_list<std::string_view> allowed) const {
    require_map(map, field);
    for (const auto& item : map) {
      const auto key = item.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
      std::string hint;
      for (auto candidate : allowed) {
        if (edit_distance(key, candidate) <= 2) {
          hint = " (did you mean '" + std::string(candidate) + "'?)";
          break;
        }
      }
      fail(item.first, field.empty() ? key : field + "." + key, "unknown key" + hint);
    }
  }

  double real(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a number");
    try {
      const double value = node.as<double>();
      if (!std::isfinite(value)) fail(node, field, "must be finite");
      return value;
    } catch (const YAML::BadConversion&) {
      fail(node, field, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  std::size_t count(const YAML::Node& node, const std::string& field, long long minimum) const {
    if (!node.IsScalar()) fail(node, field, "expected an integer");
    long long value = 0;
    try {
      value = node.as<long long>();
    } catch (const YAML::BadConversion&) {
      fail(node, field, "expected an integer, got '" + node.Scalar() + "'");
    }
    if (value < minimum) fail(node, field, "must be at least " + std::to_string(minimum));
    return static_cast<std::size_t>(value);
  }

  std::string text(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a string");
    return node.Scalar();
  }

  bool flag(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected true or false");
    try {
      return node.as<bool>();
    } catch (const YAML::BadConversion&) {
      fail(node, field, "expected true or false, got '" + node.Scalar() + "'");
    }
  }

  Complex complex(const YAML::Node& node, const std::string& field) const {
    if (node.IsSequence()) {
      if (node.size() != 2) fail(node, field, "complex values are written [re, im]");
      return {real(node[0], field + "[0]"), real(node[1], field + "[1]")};
    }
    return {real(node, field), 0.0};
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

SpinNetwork read_network(const Reader& r, const YAML::Node& node) {
  if (!node.IsDefined()) r.fail(node, "network", "missing required section");
  r.check_keys(node, "network", {"kind", "size", "edges"});
  if (!node["kind"]) r.fail(node, "network.kind", "missing (chain, cycle or edge_list)");
  if (!node["size"]) r.fail(node, "network.size", "missing");
  const auto kind = r.text(node["kind"], "network.kind");
  const auto size = r.count(node["size"], "network.size", 1);
  try {
    if (kind == "chain" || kind == "cycle") {
      if (node["edges"]) r.fail(node["edges"], "network.edges", "only allowed for edge_list");
      return kind == "chain" ? SpinNetwork::chain(size) : SpinNetwork::cycle(size);
    }
    if (kind != "edge_list") {
      r.fail(node["kind"], "network.kind", "expected chain, cycle or edge_list, got '" + kind + "'");
    }
    const auto& list = node["edges"];
    if (!list || !list.IsSequence()) r.fail(node, "network.edges", "expected a list of [a, b(, w)]");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto field = "network.edges[" + std::to_string(i) + "]";
      const auto& e = list[i];
      if (!e.IsSequence() || e.size() < 2 || e.size() > 3) r.fail(e, field, "expected [a, b] or [a, b, w]");
      Edge edge{r.count(e[0], field, 1), r.count(e[1], field, 1), 1.0};
      if (e.size() == 3) edge.weight = r.real(e[2], field);
      if (edge.first > size || edge.second > size) {
        r.fail(e, field, "endpoint outside network of " + std::to_string(size) + " nodes");
      }
      edges.push_back(edge);
    }
    return SpinNetwork::from_edge_list(size, std::move(edges));
  } catch (const ConstructionError& error) {
    r.fail(node, "network", error.what());
  }
}

FieldSetting read_field(const Reader& r, const YAML::Node& node, const std::string& field) {
  FieldSetting setting;
  if (node.IsMap()) {
    r.check_keys(node, field, {"mode"});
    if (!node["mode"]) r.fail(node, field + ".mode", "missing");
    setting.mode = r.count(node["mode"], field + ".mode", 1);
  } else {
    setting.value = r.real(node, field);
  }
  return setting;
}

std::vector<TerminalConfig> read_terminals(const Reader& r, const YAML::Node& node,
                                           const SpinNetwork& network) {
  std::vector<TerminalConfig> terminals;
  if (!node) return terminals;
  if (!node.IsSequence()) r.fail(node, "terminals", "expected a list");
  for (std::size_t i = 0; i < node.size(); ++i) {
    const auto& t = node[i];
    const auto field = "terminals[" + std::to_string(i) + "]";
    r.check_keys(t, field, {"label", "node", "epsilon_xi", "omega"});
    for (const char* key : {"label", "node", "epsilon_xi", "omega"}) {
      if (!t[key]) r.fail(t, field + "." + key, "missing");
    }
    TerminalConfig term;
    term.label = r.text(t["label"], field + ".label");
    if (term.label.empty()) r.fail(t["label"], field + ".label", "must not be empty");
    if (term.label.rfind("node", 0) == 0) {
      r.fail(t["label"], field + ".label", "labels starting with 'node' are reserved");
    }
    for (const auto& other : terminals) {
      if (other.label == term.label) r.fail(t["label"], field + ".label", "duplicate label '" + term.label + "'");
    }
    term.node = r.count(t["node"], field + ".node", 1);
    if (term.node > network.node_count()) {
      r.fail(t["node"], field + ".node",
             "node " + std::to_string(term.node) + " outside network of " +
                 std::to_string(network.node_count()) + " nodes");
    }
    term.epsilon_xi = r.complex(t["epsilon_xi"], field + ".epsilon_xi");
    if (std::abs(term.epsilon_xi) == 0.0) {
      r.fail(t["epsilon_xi"], field + ".epsilon_xi", "coupling must be nonzero");
    }
    term.omega = read_field(r, t["omega"], field + ".omega");
    if (term.omega.mode && *term.omega.mode > network.node_count()) {
      r.fail(t["omega"], field + ".omega.mode", "network has only " +
                                                  std::to_string(network.node_count()) + " modes");
    }
    terminals.push_back(std::move(term));
  }
  return terminals;
}

bool is_terminal(const std::vector<TerminalConfig>& terminals, const std::string& label) {
  return std::any_of(terminals.begin(), terminals.end(),
                     [&](const auto& t) { return t.label == label; });
}

TaskParams read_params(const Reader& r, const YAML::Node& node, const ScenarioConfig& config) {
  TaskParams p;
  if (!node) return p;
  r.check_keys(node, "task_params",
               {"t_max", "n_points", "coarse_points", "source", "target", "lambda_mode_index",
                "calibrate", "free_field", "protocol", "constraints", "sweep"});
  if (node["t_max"]) {
    p.t_max = r.real(node["t_max"], "task_params.t_max");
    if (p.t_max <= 0) r.fail(node["t_max"], "task_params.t_max", "must be positive");
  }
  if (node["n_points"]) p.n_points = r.count(node["n_points"], "task_params.n_points", 2);
  if (node["coarse_points"]) {
    p.coarse_points = r.count(node["coarse_points"], "task_params.coarse_points", 2);
  }
  for (const char* key : {"source", "target"}) {
    if (!node[key]) continue;
    const auto field = std::string("task_params.") + key;
    auto label = r.text(node[key], field);
    if (!is_terminal(config.terminals, label)) r.fail(node[key], field, "no terminal labelled '" + label + "'");
    (key == std::string("source") ? p.source : p.target) = std::move(label);
  }
  if (node["lambda_mode_index"]) {
    p.lambda_mode_index = r.count(node["lambda_mode_index"], "task_params.lambda_mode_index", 1);
    if (*p.lambda_mode_index > config.network.node_count()) {
      r.fail(node["lambda_mode_index"], "task_params.lambda_mode_index",
             "network has only " + std::to_string(config.network.node_count()) + " modes");
    }
  }
  if (const auto& c = node["calibrate"]) {
    const auto value = r.text(c, "task_params.calibrate");
    if (value == "resonant") {
      p.calibrate = CalibrationMode::resonant;
    } else if (value == "nonresonant") {
      p.calibrate = CalibrationMode::nonresonant;
    } else if (value == "none" || value == "false") {
      p.calibrate = CalibrationMode::none;
    } else if (value == "true") {
      p.calibrate = node["lambda_mode_index"] ? CalibrationMode::resonant : CalibrationMode::nonresonant;
    } else {
      r.fail(c, "task_params.calibrate", "expected resonant, nonresonant, true or false");
    }
    if (p.calibrate == CalibrationMode::resonant && !p.lambda_mode_index) {
      r.fail(c, "task_params.calibrate", "resonant calibration needs lambda_mode_index");
    }
  }
  if (const auto& f = node["free_field"]) {
    const auto value = r.text(f, "task_params.free_field");
    if (value == "source") {
      p.free_field = FreeField::source;
    } else if (value == "destination") {
      p.free_field = FreeField::destination;
    } else {
      r.fail(f, "task_params.free_field", "expected source or destination");
    }
  }
  if (const auto& pr = node["protocol"]) {
    const auto value = r.text(pr, "task_params.protocol");
    for (auto candidate : {EntanglementProtocol::bell, EntanglementProtocol::w_nonresonant,
                           EntanglementProtocol::w_resonant}) {
      if (value == to_string(candidate)) p.protocol = candidate;
    }
    if (!p.protocol) r.fail(pr, "task_params.protocol", "expected bell, w_nonresonant or w_resonant");
  }
  if (const auto& c = node["constraints"]) {
    r.check_keys(c, "task_params.constraints",
                 {"min_mutual_separation", "min_spectrum_separation", "max_time"});
    auto positive = [&](const char* key, double& out) {
      if (!c[key]) return;
      const auto field = std::string("task_params.constraints.") + key;
      out = r.real(c[key], field);
      if (out < 0) r.fail(c[key], field, "must not be negative");
    };
    positive("min_mutual_separation", p.constraints.min_mutual_separation);
    positive("min_spectrum_separation", p.constraints.min_spectrum_separation);
    positive("max_time", p.constraints.max_time);
  }
  if (const auto& s = node["sweep"]) {
    r.check_keys(s, "task_params.sweep", {"terminal", "omega"});
    if (!s["terminal"]) r.fail(s, "task_params.sweep.terminal", "missing");
    if (!s["omega"] || !s["omega"].IsSequence() || s["omega"].size() == 0) {
      r.fail(s, "task_params.sweep.omega", "expected a non-empty list of fields");
    }
    SweepConfig sweep;
    sweep.terminal = r.text(s["terminal"], "task_params.sweep.terminal");
    if (!is_terminal(config.terminals, sweep.terminal)) {
      r.fail(s["terminal"], "task_params.sweep.terminal", "no terminal labelled '" + sweep.terminal + "'");
    }
    for (std::size_t i = 0; i < s["omega"].size(); ++i) {
      sweep.omega.push_back(r.real(s["omega"][i], "task_params.sweep.omega[" + std::to_string(i) + "]"));
    }
    p.sweep = std::move(sweep);
  }
  return p;
}

OutputConfig read_output(const Reader& r, const YAML::Node& node) {
  OutputConfig out;
  if (!node) return out;
  r.check_keys(node, "output", {"path", "format", "include_amplitudes", "plot"});
  if (node["path"]) out.path = r.text(node["path"], "output.path");
  if (node["format"]) {
    out.format = r.text(node["format"], "output.format");
    if (out.format != "csv" && out.format != "json") {
      r.fail(node["format"], "output.format", "expected csv or json");
    }
  }
  if (node["include_amplitudes"]) {
    out.include_amplitudes = r.flag(node["include_amplitudes"], "output.include_amplitudes");
  }
  if (node["plot"]) out.plot = r.flag(node["plot"], "output.plot");
  return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& source_name) {
  const Reader r(source_name);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& error) {
    throw ConfigError(source_name + ":" + std::to_string(error.mark.line + 1) + ": " + error.msg);
  }
  r.check_keys(root, "", {"network", "terminals", "task", "task_params", "output"});

  ScenarioConfig config;
  config.source_name = source_name;
  config.network = read_network(r, root["network"]);
  config.terminals = read_terminals(r, root["terminals"], config.network);
  if (const auto& t = root["task"]) {
    const auto name = r.text(t, "task");
    config.task = parse_task(name);
    if (!config.task) r.fail(t, "task", "unknown task '" + name + "'");
  }
  config.params = read_params(r, root["task_params"], config);
  config.output = read_output(r, root["output"]);
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot read config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

SystemSpec ScenarioConfig::build_spec() const {
  std::optional<SpectralDecomposition> spectrum;
  std::vector<Terminal> built;
  for (const auto& t : terminals) {
    double omega = 0.0;
    if (t.omega.mode) {
      if (!spectrum) spectrum = network_spectrum(network);
      omega = spectrum->eigenvalues[static_cast<Eigen::Index>(mode_from_top(*spectrum, *t.omega.mode))];
    } else {
      omega = *t.omega.value;
    }
    built.emplace_back(t.label, t.node, t.epsilon_xi, omega);
  }
  return SystemSpec(network, std::move(built));
}

}  // namespace spinnet::cli
