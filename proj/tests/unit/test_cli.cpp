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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "spinnet/io.hpp"
#include "spinnet_cli/cli.hpp"
#include "spinnet_cli/config.hpp"

namespace spinnet::cli {
namespace {

const std::filesystem::path kScenarios = std::filesystem::path(SPINNET_SOURCE_DIR) / "scenarios";

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "spinnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("spinnet_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path write_config(const std::filesystem::path& dir, const std::string& text) {
  const auto path = dir / "config.yaml";
  std::ofstream(path) << text;
  return path;
}

const char* kMinimal = R"(network:
  kind: chain
  size: 4
terminals:
  - {label: s, node: 1, epsilon_xi: 0.01, omega: 0.0}
  - {label: d, node: 4, epsilon_xi: [0.0, 0.01], omega: 0.0}
task: simulate
task_params:
  t_max: 100
  n_points: 11
)";

TEST(Config, ParsesMinimalScenario) {
  const auto config = parse_config(kMinimal, "mem");
  EXPECT_EQ(config.network.node_count(), 4u);
  ASSERT_EQ(config.terminals.size(), 2u);
  EXPECT_EQ(config.terminals[1].epsilon_xi, Complex(0.0, 0.01));
  EXPECT_EQ(config.task, Task::simulate);
  EXPECT_EQ(config.params.n_points, 11u);
  EXPECT_EQ(config.output.format, "csv");
}

TEST(Config, ModeFieldsResolveAgainstSpectrum) {
  const auto config = load_config((kScenarios / "fig1" / "calibrated.yaml").string());
  const auto spec = config.build_spec();
  EXPECT_NEAR(spec.terminal(0).field(), testing::chain_eigenvalue(30, 5), 1e-12);
  EXPECT_EQ(config.params.calibrate, CalibrationMode::resonant);
}

TEST(Config, UnknownKeyIsRejectedWithLine) {
  std::string text = kMinimal;
  text.replace(text.find("n_points"), 8, "npoints");
  try {
    parse_config(text, "cfg.yaml");
    FAIL();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("cfg.yaml:10"), std::string::npos) << what;
    EXPECT_NE(what.find("task_params.npoints"), std::string::npos) << what;
    EXPECT_NE(what.find("n_points"), std::string::npos) << what;
  }
}

TEST(Config, NodeOutsideNetworkNamesField) {
  std::string text = kMinimal;
  text.replace(text.find("node: 4"), 7, "node: 31");
  try {
    parse_config(text, "cfg.yaml");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("terminals[1].node"), std::string::npos) << e.what();
  }
}

TEST(Config, TypeErrors) {
  std::string text = kMinimal;
  text.replace(text.find("t_max: 100"), 10, "t_max: soon");
  EXPECT_THROW(parse_config(text, "x"), ConfigError);
  EXPECT_THROW(parse_config("network: {kind: torus, size: 3}\n", "x"), ConfigError);
  EXPECT_THROW(parse_config("network: {kind: chain, size: 3\n", "x"), ConfigError);
  EXPECT_THROW(parse_config("terminals: []\n", "x"), ConfigError);
}

TEST(Cli, BadNodeExitsTwo) {
  const auto dir = scratch("bad_node");
  std::string text = kMinimal;
  text.replace(text.find("node: 4"), 7, "node: 31");
  const auto r = run({"run", "--config", write_config(dir, text).string(), "--output", dir.string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("terminals[1].node"), std::string::npos) << r.err;
}

TEST(Cli, DegenerateModeExitsThree) {
  const auto dir = scratch("degenerate");
  const auto path = write_config(dir, R"(network: {kind: cycle, size: 21}
terminals:
  - {label: s, node: 3, epsilon_xi: 0.01, omega: {mode: 2}}
  - {label: d, node: 18, epsilon_xi: 0.01, omega: {mode: 2}}
task: calibrate
task_params: {lambda_mode_index: 2}
)");
  const auto r = run({"run", "--config", path.string(), "--output", dir.string()});
  EXPECT_EQ(r.code, kExitPhysics) << r.err;
  EXPECT_NE(r.err.find("degenera"), std::string::npos) << r.err;
}

TEST(Cli, SpectrumOfRing) {
  const auto dir = scratch("spectrum");
  const auto r = run({"spectrum", "--cycle", "21", "--output", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto parsed = parse_csv(slurp(dir / "cycle21_spectrum.csv"));
  ASSERT_EQ(parsed.rows.size(), 21u);
  EXPECT_NEAR(parsed.rows[0][1], 2.0, 1e-12);
  EXPECT_EQ(parsed.rows[0][3], 1.0);
  EXPECT_EQ(parsed.rows[1][3], 2.0);
}

TEST(Cli, CalibrateFig1PrintsRatio) {
  const auto dir = scratch("calibrate");
  const auto r = run({"calibrate", "--config", (kScenarios / "fig1" / "calibrated.yaml").string(), "--output",
                      dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("|xi_d / xi_s| = 2.8348"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("predicted transfer time"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "fig1_calibrated_calibration.csv"));
}

TEST(Cli, Fig1WritesFullColumnSet) {
  const auto dir = scratch("fig1");
  const auto r = run({"run", "--config", (kScenarios / "fig1" / "calibrated.yaml").string(), "--output",
                      dir.string(), "--quiet"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto parsed = parse_csv(slurp(dir / "fig1_calibrated.csv"));
  ASSERT_EQ(parsed.header.size(), 33u);
  EXPECT_EQ(parsed.header[1], "p_s");
  EXPECT_EQ(parsed.header[2], "p_d");
  EXPECT_EQ(parsed.header[3], "p_node1");
  EXPECT_EQ(parsed.header[32], "p_node30");
  EXPECT_TRUE(std::filesystem::exists(dir / "fig1_calibrated.svg"));
}

TEST(Cli, Fig2SweepWritesOneFilePerField) {
  const auto dir = scratch("fig2");
  const auto r = run({"run", "--config", (kScenarios / "fig2" / "route.yaml").string(), "--output",
                      dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* value : {"-0.85", "-0.87", "-0.89"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string("fig2_route_u_") + value + ".csv"))) << value;
  }
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    const auto r = run({"run", "--config", (kScenarios / "fig3" / "w_state.yaml").string(), "--output",
                        dir.string(), "--quiet"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }
  for (const char* name : {"fig3_w_state.csv", "fig3_w_state_report.csv", "fig3_w_state.svg"}) {
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
}

TEST(Cli, JsonOutput) {
  const auto dir = scratch("json");
  std::string text = kMinimal;
  text += "output: {path: mini, format: json, include_amplitudes: true}\n";
  const auto r = run({"run", "--config", write_config(dir, text).string(), "--output", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto body = slurp(dir / "mini.json");
  EXPECT_NE(body.find("\"re_node4\""), std::string::npos);
}

TEST(Cli, PlanAndEntangle) {
  const auto dir = scratch("plan");
  const auto plan = write_config(dir, R"(network: {kind: cycle, size: 21}
terminals:
  - {label: s, node: 3, epsilon_xi: 0.1, omega: 0}
  - {label: a, node: 10, epsilon_xi: 0.1, omega: 0}
  - {label: b, node: 15, epsilon_xi: 0.1, omega: 0}
task: plan
task_params:
  source: s
  constraints: {min_mutual_separation: 0.05, min_spectrum_separation: 0.05}
)");
  auto r = run({"run", "--config", plan.string(), "--output", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "spinnet_plan.csv"));

  r = run({"entangle", "--config", (kScenarios / "fig3" / "w_state.yaml").string(), "--output", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("w_nonresonant protocol: success"), std::string::npos) << r.out;
}

TEST(Cli, Selftest) {
  const auto r = run({"selftest", "--seed", "7"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"simulate"}).code, kExitUsage);
  EXPECT_EQ(run({"run", "--config", "/nonexistent/file.yaml"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace spinnet::cli
