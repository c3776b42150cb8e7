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
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spinnet/errors.hpp"
#include "spinnet/network.hpp"
#include "spinnet/protocol.hpp"

namespace spinnet::cli {

/// Schema violation. The message starts with "<file>:<line>: <field>:".
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Task { spectrum, simulate, calibrate, route, plan, entangle };
const char* to_string(Task task);
std::optional<Task> parse_task(const std::string& name);

enum class CalibrationMode { none, resonant, nonresonant };

/// A terminal field is either a number or a network mode counted from the top.
struct FieldSetting {
  std::optional<double> value;
  std::optional<std::size_t> mode;
};

struct TerminalConfig {
  std::string label;
  std::size_t node = 0;
  Complex epsilon_xi{0.0, 0.0};
  FieldSetting omega;
};

struct SweepConfig {
  std::string terminal;
  std::vector<double> omega;
};

struct TaskParams {
  double t_max = 0.0;  ///< 0 picks a default from the predicted transfer time
  std::size_t n_points = 2001;
  std::size_t coarse_points = 4000;
  std::optional<std::string> source;
  std::optional<std::string> target;
  std::optional<std::size_t> lambda_mode_index;
  CalibrationMode calibrate = CalibrationMode::none;
  FreeField free_field = FreeField::source;
  std::optional<EntanglementProtocol> protocol;
  PlanConstraints constraints;
  std::optional<SweepConfig> sweep;
};

struct OutputConfig {
  std::string path;  ///< file stem, relative to --output
  std::string format = "csv";
  bool include_amplitudes = false;
  bool plot = false;
};

struct ScenarioConfig {
  std::string source_name;
  SpinNetwork network = SpinNetwork::chain(1);
  std::vector<TerminalConfig> terminals;
  std::optional<Task> task;
  TaskParams params;
  OutputConfig output;

  /// Resolves mode-valued fields against the network spectrum.
  SystemSpec build_spec() const;
};

/// Parses and validates YAML text. Unknown keys, wrong types and out of
/// range nodes raise ConfigError naming the line and field.
ScenarioConfig parse_config(const std::string& text, const std::string& source_name);
ScenarioConfig load_config(const std::string& path);

}  // namespace spinnet::cli
