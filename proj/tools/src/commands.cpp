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

#include <algorithm>
#include <cmath>
#include <exception>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "spinnet/dynamics.hpp"
#include "spinnet/io.hpp"
#include "spinnet/protocol.hpp"
#include "spinnet/spectral.hpp"
#include "spinnet_cli/cli.hpp"

namespace spinnet::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string num(double value, int digits = 6) { return format_number(value, digits); }

std::string complex_text(Complex z) {
  if (z.imag() == 0.0) return num(z.real(), 8);
  return "(" + num(z.real(), 8) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag()), 8) + "i)";
}

[[noreturn]] void config_fail(const ScenarioConfig& config, const std::string& field,
                              const std::string& message) {
  throw ConfigError(config.source_name + ": " + field + ": " + message);
}

class Outputs {
 public:
  Outputs(const ScenarioConfig& config, const GlobalOptions& options)
      : config_(config), options_(options) {}

  std::filesystem::path path(const std::string& suffix, const std::string& extension) const {
    const std::string stem = config_.output.path.empty() ? "spinnet" : config_.output.path;
    const std::filesystem::path base(stem);
    return options_.output_dir / base.parent_path() /
           (base.stem().string() + suffix + "." + extension);
  }

  std::vector<std::filesystem::path> trajectory(const Trajectory& traj, const std::string& suffix,
                                                const std::string& title,
                                                const std::vector<PlotSeries>& series) const {
    std::vector<std::filesystem::path> written;
    const CsvOptions csv{config_.output.include_amplitudes, 12};
    if (config_.output.format == "json") {
      written.push_back(path(suffix, "json"));
      write_text_file(written.back(), trajectory_json(traj, csv));
    } else {
      written.push_back(path(suffix, "csv"));
      emit_trajectory_csv(traj, written.back(), csv);
    }
    if (config_.output.plot) {
      written.push_back(path(suffix, "svg"));
      write_text_file(written.back(), trajectory_svg(traj, series, title));
    }
    return written;
  }

  // Reports go out as JSON verbatim, or as flattened key,value rows.
  std::filesystem::path report(const Json& report, const std::string& suffix = "") const {
    if (config_.output.format == "json") {
      auto file = path(suffix, "json");
      write_text_file(file, report.dump(2) + "\n");
      return file;
    }
    std::string text = "key,value\n";
    flatten(report, "", text);
    auto file = path(suffix, "csv");
    write_text_file(file, text);
    return file;
  }

 private:
  static void flatten(const Json& node, const std::string& key, std::string& text) {
    if (node.is_object()) {
      for (const auto& [k, v] : node.items()) flatten(v, key.empty() ? k : key + "." + k, text);
    } else if (node.is_array()) {
      for (std::size_t i = 0; i < node.size(); ++i) {
        flatten(node[i], key + "[" + std::to_string(i) + "]", text);
      }
    } else if (node.is_number()) {
      text += key + "," + format_number(node.get<double>(), 12) + "\n";
    } else if (node.is_string()) {
      text += key + "," + node.get<std::string>() + "\n";
    } else {
      text += key + "," + node.dump() + "\n";
    }
  }

  const ScenarioConfig& config_;
  const GlobalOptions& options_;
};

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

void print_files(const std::vector<std::filesystem::path>& files, std::ostream& out) {
  for (const auto& f : files) out << "wrote " << f.generic_string() << '\n';
}

std::string default_source(const ScenarioConfig& config, const SystemSpec& spec) {
  if (config.params.source) return *config.params.source;
  if (spec.terminal_count() == 0) {
    config_fail(config, "terminals", "this task needs at least one terminal");
  }
  return spec.terminal(0).label();
}

std::string required_target(const ScenarioConfig& config) {
  if (!config.params.target) config_fail(config, "task_params.target", "required for this task");
  return *config.params.target;
}

std::size_t required_mode(const ScenarioConfig& config, const SystemSpec& spec) {
  if (!config.params.lambda_mode_index) {
    config_fail(config, "task_params.lambda_mode_index", "required for this task");
  }
  return mode_from_top(network_spectrum(spec.network()), *config.params.lambda_mode_index);
}

std::optional<CalibrationResult> maybe_calibrate(const ScenarioConfig& config,
                                                 const SystemSpec& spec) {
  const auto& p = config.params;
  if (p.calibrate == CalibrationMode::none) return std::nullopt;
  if (spec.terminal_count() != 2) {
    config_fail(config, "task_params.calibrate", "calibration needs exactly two terminals");
  }
  if (p.calibrate == CalibrationMode::resonant) {
    return calibrate_resonant(spec, required_mode(config, spec));
  }
  return calibrate_nonresonant(spec, p.free_field);
}

void describe_calibration(const CalibrationResult& c, std::ostream& out) {
  const auto& spec = c.adjusted_spec;
  out << "calibration: " << to_string(c.regime);
  if (c.resonance_mode) {
    const auto spectrum = network_spectrum(spec.network());
    out << " on lambda = "
        << num(spectrum.eigenvalues[static_cast<Eigen::Index>(*c.resonance_mode)], 10);
  }
  out << '\n';
  for (const auto& t : spec.terminals()) {
    out << "  " << t.label() << ": node " << t.attach_node() << ", epsilon_xi "
        << complex_text(t.coupling()) << ", omega " << num(t.field(), 12) << '\n';
  }
  if (spec.terminal_count() == 2) {
    out << "  |xi_d / xi_s| = "
        << num(std::abs(spec.terminal(1).coupling()) / std::abs(spec.terminal(0).coupling()), 8)
        << '\n';
  }
  out << "  predicted transfer time " << num(c.predicted_time, 8) << '\n';
  out << "  diagonal residual " << num(c.diagnostics.diagonal_residual, 3) << '\n';
}

Json calibration_json(const CalibrationResult& c) {
  Json j;
  j["regime"] = to_string(c.regime);
  if (c.resonance_mode) j["resonance_mode_index"] = *c.resonance_mode;
  j["predicted_time"] = c.predicted_time;
  j["diagonal_residual"] = c.diagnostics.diagonal_residual;
  j["off_diagonal_magnitudes"] = c.diagnostics.off_diagonal_magnitudes;
  Json terms = Json::array();
  for (const auto& t : c.adjusted_spec.terminals()) {
    terms.push_back({{"label", t.label()},
                     {"node", t.attach_node()},
                     {"epsilon_xi", Json::array({t.coupling().real(), t.coupling().imag()})},
                     {"omega", t.field()}});
  }
  j["terminals"] = std::move(terms);
  return j;
}

// One exact run from a terminal, plus the refined peak of every other terminal.
struct CaseResult {
  std::string summary;
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> files;
};

struct SimulationSummary {
  Trajectory trajectory;
  std::vector<std::pair<std::string, Peak>> peaks;
  double norm_drift = 0.0;
  double energy_drift = 0.0;
};

SimulationSummary simulate(const SystemSpec& spec, const std::string& source, double t_max,
                           const TaskParams& params) {
  const CMatrix h = full_hamiltonian(spec);
  const Propagator propagator(h);
  const CVector psi0 = basis_state(spec.dimension(), spec.index_of(source));
  SimulationSummary s;
  s.trajectory = trajectory(propagator, psi0, t_max, params.n_points, spec.basis_labels());
  for (const auto& t : spec.terminals()) {
    if (t.label() == source) continue;
    s.peaks.emplace_back(t.label(), peak_population(propagator, psi0, spec.index_of(t.label()),
                                                    t_max, params.coarse_points));
  }
  s.norm_drift = s.trajectory.norm_drift();
  s.energy_drift = s.trajectory.energy_drift(h);
  return s;
}

std::vector<PlotSeries> terminal_series(const SystemSpec& spec) {
  std::vector<PlotSeries> series;
  for (std::size_t i = 0; i < spec.terminal_count(); ++i) {
    series.push_back({"p_" + spec.terminal(i).label(), i, i == 0});
  }
  return series;
}

void describe_simulation(const SimulationSummary& s, const std::string& source, double t_max,
                         std::ostream& out) {
  out << "exact dynamics from " << source << " over [0, " << num(t_max, 8) << "], "
      << s.trajectory.size() << " points\n";
  for (const auto& [label, peak] : s.peaks) {
    out << "  peak p_" << label << " = " << num(peak.value, 9) << " at t = " << num(peak.time, 9)
        << '\n';
  }
  out << "  norm drift " << num(s.norm_drift, 3) << ", energy drift " << num(s.energy_drift, 3)
      << '\n';
}

std::string sweep_suffix(const std::string& terminal, double omega) {
  return "_" + terminal + "_" + format_number(omega, 6);
}

/// Runs `one` for each sweep value in parallel; results come back in input order.
template <typename F>
std::vector<CaseResult> for_each_case(const ScenarioConfig& config, const SystemSpec& spec, F one) {
  if (!config.params.sweep) return {one(spec, std::string())};
  const auto& sweep = *config.params.sweep;
  const auto index = spec.index_of(sweep.terminal);
  std::vector<std::future<CaseResult>> jobs;
  for (double omega : sweep.omega) {
    auto variant = spec.with_terminal(index, spec.terminal(index).with_field(omega));
    jobs.push_back(std::async(std::launch::async, [one, variant = std::move(variant),
                                                   suffix = sweep_suffix(sweep.terminal, omega)] {
      return one(variant, suffix);
    }));
  }
  std::vector<CaseResult> results;
  std::exception_ptr first_error;
  for (auto& job : jobs) {
    try {
      results.push_back(job.get());
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

void emit_cases(const std::vector<CaseResult>& cases, const GlobalOptions& options,
                std::ostream& out, std::ostream& err) {
  for (const auto& c : cases) {
    print_warnings(c.warnings, err);
    if (!options.quiet) {
      out << c.summary;
      print_files(c.files, out);
    }
  }
}

// ---------------------------------------------------------------------------

int task_spectrum(const ScenarioConfig& config, const GlobalOptions& options, std::ostream& out) {
  const auto spectrum = network_spectrum(config.network);
  const auto n = spectrum.size();
  Json rows = Json::array();
  std::ostringstream table;
  table << "spectrum of " << n << "-node network (mode 1 is the top)\n";
  table << "  mode  eigenvalue        class  multiplicity\n";
  for (std::size_t k = 1; k <= n; ++k) {
    const auto idx = mode_from_top(spectrum, k);
    const auto cls = spectrum.class_of(idx);
    // Classes are numbered from the top as well, so labels read like modes.
    const auto class_label = spectrum.degeneracy_classes.size() - cls;
    const auto multiplicity = spectrum.degeneracy_classes[cls].size();
    const double lambda = spectrum.eigenvalues[static_cast<Eigen::Index>(idx)];
    char line[96];
    std::snprintf(line, sizeof(line), "  %4zu  %+.12f  %5zu  %zu\n", k, lambda, class_label,
                  multiplicity);
    table << line;
    rows.push_back({{"mode", k},
                    {"eigenvalue", lambda},
                    {"class", class_label},
                    {"multiplicity", multiplicity}});
  }
  Json report;
  report["node_count"] = n;
  report["modes"] = std::move(rows);
  if (!options.quiet) out << table.str();

  std::vector<std::filesystem::path> files;
  const Outputs outputs(config, options);
  if (config.output.format == "json") {
    files.push_back(outputs.report(report, "_spectrum"));
  } else {
    std::string csv = "mode,eigenvalue,class,multiplicity\n";
    for (const auto& row : report["modes"]) {
      csv += std::to_string(row["mode"].get<std::size_t>()) + "," +
             format_number(row["eigenvalue"].get<double>(), 12) + "," +
             std::to_string(row["class"].get<std::size_t>()) + "," +
             std::to_string(row["multiplicity"].get<std::size_t>()) + "\n";
    }
    files.push_back(outputs.path("_spectrum", "csv"));
    write_text_file(files.back(), csv);
  }
  if (!options.quiet) print_files(files, out);
  return kExitOk;
}

int task_simulate(const ScenarioConfig& config, const GlobalOptions& options, std::ostream& out,
                  std::ostream& err) {
  const SystemSpec base = config.build_spec();
  const std::string source = default_source(config, base);
  const Outputs outputs(config, options);

  auto one = [&](const SystemSpec& spec, const std::string& suffix) {
    CaseResult result;
    std::ostringstream summary;
    const auto calibration = maybe_calibrate(config, spec);
    const SystemSpec& run_spec = calibration ? calibration->adjusted_spec : spec;
    if (calibration) {
      describe_calibration(*calibration, summary);
      result.warnings = calibration->warnings;
    }
    double t_max = config.params.t_max;
    if (t_max <= 0.0) {
      if (!calibration) {
        config_fail(config, "task_params.t_max", "required unless the scenario is calibrated");
      }
      t_max = 2.5 * calibration->predicted_time;
    }
    const auto sim = simulate(run_spec, source, t_max, config.params);
    describe_simulation(sim, source, t_max, summary);
    result.files = outputs.trajectory(sim.trajectory, suffix, "populations from " + source,
                                      terminal_series(run_spec));
    result.summary = summary.str();
    return result;
  };
  emit_cases(for_each_case(config, base, one), options, out, err);
  return kExitOk;
}

int task_calibrate(const ScenarioConfig& config, const GlobalOptions& options, std::ostream& out,
                   std::ostream& err) {
  SystemSpec spec = config.build_spec();
  if (config.params.source && config.params.target) {
    const std::vector<std::string> pair{*config.params.source, *config.params.target};
    spec = spec.restricted_to(pair);
  }
  if (spec.terminal_count() != 2) {
    config_fail(config, "terminals", "calibrate needs exactly two terminals (or source and target)");
  }
  const bool resonant = config.params.calibrate == CalibrationMode::resonant ||
                        (config.params.calibrate == CalibrationMode::none &&
                         config.params.lambda_mode_index.has_value());
  const auto result = resonant ? calibrate_resonant(spec, required_mode(config, spec))
                               : calibrate_nonresonant(spec, config.params.free_field);
  print_warnings(result.warnings, err);
  if (!options.quiet) describe_calibration(result, out);
  const auto file = Outputs(config, options).report(calibration_json(result), "_calibration");
  if (!options.quiet) print_files({file}, out);
  return kExitOk;
}

int task_route(const ScenarioConfig& config, const GlobalOptions& options, std::ostream& out,
               std::ostream& err) {
  const SystemSpec base = config.build_spec();
  const std::string source = default_source(config, base);
  const std::string target = required_target(config);
  const Outputs outputs(config, options);

  auto one = [&](const SystemSpec& spec, const std::string& suffix) {
    CaseResult result;
    std::ostringstream summary;
    const auto routed = route(spec, source, target);
    result.warnings = routed.calibration.warnings;
    summary << "route " << source << " -> " << target << '\n';
    for (const auto& t : routed.calibration.adjusted_spec.terminals()) {
      summary << "  " << t.label() << ": node " << t.attach_node() << ", epsilon_xi "
              << complex_text(t.coupling()) << ", omega " << num(t.field(), 12) << '\n';
    }
    summary << "  effective coupling " << num(routed.effective_coupling, 8)
            << ", predicted time " << num(routed.calibration.predicted_time, 8) << '\n';
    summary << "  nearest rival user detuning " << num(routed.min_user_detuning, 6)
            << ", nearest eigenvalue detuning " << num(routed.min_spectrum_detuning, 6) << '\n';
    const double t_max =
        config.params.t_max > 0 ? config.params.t_max : 2.0 * routed.calibration.predicted_time;
    const auto sim = simulate(routed.calibration.adjusted_spec, source, t_max, config.params);
    describe_simulation(sim, source, t_max, summary);
    result.files = outputs.trajectory(sim.trajectory, suffix, "route " + source + " -> " + target,
                                      terminal_series(routed.calibration.adjusted_spec));
    result.summary = summary.str();
    return result;
  };
  emit_cases(for_each_case(config, base, one), options, out, err);
  return kExitOk;
}

int task_plan(const ScenarioConfig& config, const GlobalOptions& options, std::ostream& out) {
  const SystemSpec spec = config.build_spec();
  const std::string source = default_source(config, spec);
  PlanRequest request{config.network, spec.terminal(source).attach_node(), {},
                      spec.terminal(source).coupling(), config.params.constraints};
  for (const auto& t : spec.terminals()) {
    if (t.label() != source) request.users.emplace_back(t.label(), t.attach_node());
  }
  if (request.users.empty()) config_fail(config, "terminals", "plan needs at least one user besides the source");
  const auto plan = frequency_plan(request);

  Json report;
  report["source"] = source;
  Json users = Json::array();
  if (!options.quiet) out << "frequency plan for source " << source << '\n';
  for (const auto& [label, omega] : plan.assignments) {
    users.push_back({{"label", label}, {"omega", omega}, {"predicted_time", plan.predicted_times.at(label)}});
    if (!options.quiet) {
      out << "  " << label << ": omega " << num(omega, 10) << ", predicted time "
          << num(plan.predicted_times.at(label), 8) << '\n';
    }
  }
  report["users"] = std::move(users);
  report["min_eigenvalue_separation"] = plan.min_eigenvalue_separation;
  report["min_mutual_separation"] = plan.min_mutual_separation;
  report["worst_predicted_time"] = plan.worst_predicted_time;
  if (!options.quiet) {
    out << "  achieved separations: spectrum " << num(plan.min_eigenvalue_separation, 6)
        << ", mutual " << num(plan.min_mutual_separation, 6) << "; worst time "
        << num(plan.worst_predicted_time, 8) << '\n';
  }
  const auto file = Outputs(config, options).report(report, "_plan");
  if (!options.quiet) print_files({file}, out);
  return kExitOk;
}

int task_entangle(const ScenarioConfig& config, const GlobalOptions& options, std::ostream& out,
                  std::ostream& err) {
  if (!config.params.protocol) config_fail(config, "task_params.protocol", "required for entangle");
  SystemSpec spec = config.build_spec();
  std::optional<CalibrationResult> calibration;
  EntanglementReport report;
  switch (*config.params.protocol) {
    case EntanglementProtocol::bell:
      calibration = maybe_calibrate(config, spec);
      if (calibration) spec = calibration->adjusted_spec;
      report = bell_protocol(spec);
      break;
    case EntanglementProtocol::w_nonresonant: {
      WNonresonantOptions w;
      w.t_max = config.params.t_max;
      w.n_points = std::max<std::size_t>(config.params.n_points, 2);
      report = w_nonresonant_protocol(spec, w);
      break;
    }
    case EntanglementProtocol::w_resonant:
      report = w_resonant_protocol(spec, required_mode(config, spec));
      break;
  }
  if (calibration) {
    print_warnings(calibration->warnings, err);
    if (!options.quiet) describe_calibration(*calibration, out);
  }

  Json j;
  j["protocol"] = to_string(report.protocol);
  j["success"] = report.success;
  j["target_times"] = report.target_times;
  j["achieved_fidelity"] = report.achieved_fidelity;
  j["optimal_phases"] = report.optimal_phases;
  j["terminal_populations"] = report.terminal_populations;
  if (!report.message.empty()) j["message"] = report.message;

  if (!options.quiet) {
    out << to_string(report.protocol) << " protocol: " << (report.success ? "success" : "FAILED")
        << '\n';
    out << "  times";
    for (double t : report.target_times) out << ' ' << num(t, 9);
    out << "\n  fidelity " << num(report.achieved_fidelity, 9) << "\n  populations";
    for (std::size_t i = 0; i < report.terminal_populations.size(); ++i) {
      out << ' ' << spec.terminal(i).label() << '=' << num(report.terminal_populations[i], 6);
    }
    out << "\n  phases";
    for (double phi : report.optimal_phases) out << ' ' << num(phi, 6);
    out << '\n';
    if (!report.message.empty()) out << "  " << report.message << '\n';
  }

  const Outputs outputs(config, options);
  std::vector<std::filesystem::path> files{outputs.report(j, "_report")};
  // Trajectory for the single-Hamiltonian protocols; the resonant W schedule
  // switches couplings, so only its report is written.
  if (report.protocol != EntanglementProtocol::w_resonant && !report.target_times.empty()) {
    const double t_max =
        config.params.t_max > 0 ? config.params.t_max : 2.0 * report.target_times.back();
    const auto traj = trajectory(spec, spec.terminal(0).label(), t_max, config.params.n_points);
    auto written = outputs.trajectory(traj, "", to_string(report.protocol), terminal_series(spec));
    files.insert(files.end(), written.begin(), written.end());
  }
  if (!options.quiet) print_files(files, out);
  if (!report.success) {
    err << "error: " << to_string(report.protocol) << " protocol failed: " << report.message << '\n';
    return kExitPhysics;
  }
  return kExitOk;
}

}  // namespace

int run_scenario(const ScenarioConfig& config, const GlobalOptions& options, std::ostream& out,
                 std::ostream& err) {
  try {
    if (!config.task) {
      throw ConfigError(config.source_name + ": task: missing (or pass it as a subcommand)");
    }
    switch (*config.task) {
      case Task::spectrum: return task_spectrum(config, options, out);
      case Task::simulate: return task_simulate(config, options, out, err);
      case Task::calibrate: return task_calibrate(config, options, out, err);
      case Task::route: return task_route(config, options, out, err);
      case Task::plan: return task_plan(config, options, out);
      case Task::entangle: return task_entangle(config, options, out, err);
    }
    return kExitFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConstructionError& e) {
    err << "error: " << config.source_name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << config.source_name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const PhysicsError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPhysics;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run_config(const std::string& path, std::optional<Task> task, const GlobalOptions& options,
               std::ostream& out, std::ostream& err) {
  ScenarioConfig config;
  try {
    config = load_config(path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (task) config.task = task;
  return run_scenario(config, options, out, err);
}

}  // namespace spinnet::cli
