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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "spinnet_cli/config.hpp"

namespace spinnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPhysics = 3;

struct GlobalOptions {
  std::filesystem::path output_dir{"."};
  std::uint64_t seed = 20260418;
  bool quiet = false;
};

/// Executes one scenario, printing a summary to `out` and diagnostics to `err`.
/// Exceptions are mapped to exit codes: schema and construction errors give 2,
/// physics errors give 3.
int run_scenario(const ScenarioConfig& config, const GlobalOptions& options, std::ostream& out,
                 std::ostream& err);

/// Loads `path` and runs it. A non-empty `task` replaces the task named in the file.
int run_config(const std::string& path, std::optional<Task> task, const GlobalOptions& options,
               std::ostream& out, std::ostream& err);

/// Closed-form spectra against the eigensolver, and the Schrieffer-Wolff
/// condition on seeded random specs. Returns 0 when every check passes.
int run_selftest(const GlobalOptions& options, std::ostream& out, std::ostream& err);

/// Full command line entry point, used by main() and by the tests.
int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinnet::cli
