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

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "spinnet/network.hpp"
#include "spinnet_cli/cli.hpp"

namespace spinnet::cli {

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum state transfer through XX spin networks with weakly coupled terminals"};
  app.name("spinnet");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions options;
  std::string output_dir = ".";
  app.add_option("--output", output_dir, "directory for output files")->capture_default_str();
  app.add_option("--seed", options.seed, "seed for randomized selftest graphs")->capture_default_str();
  app.add_flag("--quiet", options.quiet, "suppress the summary on stdout");

  std::string config_path;
  std::map<CLI::App*, std::optional<Task>> tasks;
  auto* run = app.add_subcommand("run", "run the task named in a config file");
  run->add_option("--config", config_path, "scenario file (YAML)")->required();
  tasks[run] = std::nullopt;

  std::size_t chain_size = 0;
  std::size_t cycle_size = 0;
  for (Task task : {Task::spectrum, Task::simulate, Task::calibrate, Task::route, Task::plan,
                    Task::entangle}) {
    auto* sub = app.add_subcommand(to_string(task), std::string("run the ") + to_string(task) + " task");
    auto* config = sub->add_option("--config", config_path, "scenario file (YAML)");
    if (task == Task::spectrum) {
      auto* chain = sub->add_option("--chain", chain_size, "spectrum of a chain of N nodes");
      auto* cycle = sub->add_option("--cycle", cycle_size, "spectrum of a cycle of N nodes");
      chain->excludes(cycle)->excludes(config);
      cycle->excludes(config);
    } else {
      config->required();
    }
    tasks[sub] = task;
  }
  auto* selftest = app.add_subcommand("selftest", "spectral and Schrieffer-Wolff self checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run 'spinnet --help' for usage\n";
    return kExitUsage;
  }
  options.output_dir = output_dir;

  if (selftest->parsed()) return run_selftest(options, out, err);
  for (const auto& [sub, task] : tasks) {
    if (!sub->parsed()) continue;
    if (task == Task::spectrum && config_path.empty()) {
      if (chain_size == 0 && cycle_size == 0) {
        err << "error: spectrum needs --config, --chain N or --cycle N\n";
        return kExitUsage;
      }
      ScenarioConfig config;
      config.source_name = "command line";
      config.task = Task::spectrum;
      try {
        config.network = chain_size ? SpinNetwork::chain(chain_size) : SpinNetwork::cycle(cycle_size);
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
      }
      config.output.path = chain_size ? "chain" + std::to_string(chain_size)
                                      : "cycle" + std::to_string(cycle_size);
      return run_scenario(config, options, out, err);
    }
    return run_config(config_path, task, options, out, err);
  }
  return kExitUsage;
}

}  // namespace spinnet::cli
