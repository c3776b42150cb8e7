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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinnet/effective.hpp"
#include "spinnet/network.hpp"
#include "spinnet/spectral.hpp"

namespace spinnet {

// ---------------------------------------------------------------------------
// Channels

struct ChannelWitness {
  double eigenvalue = 0.0;
  std::vector<std::size_t> modes;  ///< ascending indices of the degeneracy class
  double overlap = 0.0;            ///< |<n_s| P_lambda |n_d>|
};

struct ChannelReport {
  bool exists = false;
  std::vector<ChannelWitness> witnesses;  ///< ascending eigenvalue
};

/// Eigen-classes with |<n_s|P_lambda|n_d>| > tolerance. Projectors make the
/// answer independent of the basis chosen inside degenerate classes.
ChannelReport channel_exists(const SpinNetwork& network, std::size_t source_node,
                             std::size_t dest_node, double tolerance = 1e-10);

// ---------------------------------------------------------------------------
// Calibration

struct CalibrationDiagnostics {
  std::vector<double> off_diagonal_magnitudes;
  double diagonal_residual = 0.0;
};

struct CalibrationResult {
  explicit CalibrationResult(SystemSpec spec) : adjusted_spec(std::move(spec)) {}

  SystemSpec adjusted_spec;
  Regime regime = Regime::nonresonant;
  std::optional<std::size_t> resonance_mode;
  double predicted_time = 0.0;
  CalibrationDiagnostics diagnostics;
  std::vector<std::string> warnings;
};

/// Two-terminal resonant calibration on simple mode `mode`: both fields set
/// to lambda', destination coupling rescaled so that both couplings into
/// the mode have equal magnitude.
CalibrationResult calibrate_resonant(const SystemSpec& spec, std::size_t mode,
                                     const EffectiveOptions& options = {});

enum class FreeField { source, destination };

/// Two-terminal non-resonant calibration: solves for the free field that
/// equalizes the diagonal of the second-order 2x2 matrix.
CalibrationResult calibrate_nonresonant(const SystemSpec& spec,
                                        FreeField free_field = FreeField::source,
                                        const EffectiveOptions& options = {});

// ---------------------------------------------------------------------------
// Multiuser routing

struct RouteOptions {
  EffectiveOptions effective;
  /// Rival users closer than this multiple of |effective coupling| trigger a warning.
  double separation_factor = 5.0;
};

struct RouteResult {
  CalibrationResult calibration;
  double min_user_detuning = 0.0;      ///< infinity with a single user
  double min_spectrum_detuning = 0.0;
  double effective_coupling = 0.0;     ///< |off-diagonal| of the (s, d_k) pair
};

/// Tunes the source to user `target_label`: omega_s <- omega_target, then
/// |xi_s| chosen so the pair's second-order diagonals match.
RouteResult route(const SystemSpec& spec, const std::string& source_label,
                  const std::string& target_label, const RouteOptions& options = {});

// ---------------------------------------------------------------------------
// Frequency planning

struct PlanConstraints {
  double min_mutual_separation = 0.05;
  double min_spectrum_separation = 0.05;
  double max_time = 0.0;  ///< 0 disables the transfer-time ceiling
};

struct PlanRequest {
  SpinNetwork network;
  std::size_t source_node = 1;
  std::vector<std::pair<std::string, std::size_t>> users;  ///< label, node
  Complex coupling{0.01, 0.0};  ///< eps*xi for the source and every user
  PlanConstraints constraints;
};

struct FrequencyPlan {
  std::map<std::string, double> assignments;
  std::map<std::string, double> predicted_times;
  double min_eigenvalue_separation = 0.0;
  double min_mutual_separation = 0.0;
  double worst_predicted_time = 0.0;
};

/// Non-resonant transfer time pi/(2|off|) between a source and a user
/// sharing field omega, both with the same coupling.
double predicted_transfer_time(const SpectralDecomposition& spectrum, std::size_t source_node,
                               std::size_t user_node, Complex coupling, double omega);

/// Greedy assignment: each user in turn receives the fastest admissible
/// field that keeps both separations. Throws PlanningError naming the
/// binding constraint when a user cannot be placed.
FrequencyPlan frequency_plan(const PlanRequest& request);

// ---------------------------------------------------------------------------
// Entanglement

enum class EntanglementProtocol { bell, w_nonresonant, w_resonant };

const char* to_string(EntanglementProtocol protocol);

struct EntanglementReport {
  EntanglementProtocol protocol = EntanglementProtocol::bell;
  std::vector<double> target_times;
  double achieved_fidelity = 0.0;
  std::vector<double> optimal_phases;  ///< arg psi_j - arg psi_1, j >= 2
  std::vector<double> terminal_populations;
  bool success = true;
  std::string message;
};

/// max_phi |<(|s> + e^{i phi}|d>)/sqrt(2) | psi>|^2 = (|a_s| + |a_d|)^2 / 2.
double bell_family_fidelity(Complex amplitude_s, Complex amplitude_d);
/// max_phases |<W_phases|psi>|^2 = (sum_j |a_j|)^2 / m.
double w_family_fidelity(std::span<const Complex> amplitudes);

/// Evolves a calibrated two-terminal spec for half of its numerically
/// located transfer time.
EntanglementReport bell_protocol(const SystemSpec& spec, const EffectiveOptions& options = {});

struct WNonresonantOptions {
  EffectiveOptions effective;
  double population_tolerance = 0.02;
  double t_max = 0.0;  ///< 0 selects two beat periods of the effective model
  std::size_t n_points = 4000;
};

/// Starts in the first terminal and looks for the time at which every
/// terminal population is closest to 1/m.
EntanglementReport w_nonresonant_protocol(const SystemSpec& spec,
                                          const WNonresonantOptions& options = {});

struct WResonantOptions {
  EffectiveOptions effective;
  /// Offsets the terminal fields by their second-order shift from the
  /// non-resonant modes so the effective terminal energy sits on lambda'.
  bool compensate_lamb_shift = true;
  /// Chooses both stage durations from exact dynamics in windows around
  /// the star-model times; otherwise the analytic times are used.
  bool refine_schedule = true;
  std::size_t stage1_points = 241;
  std::size_t stage2_points = 401;
  /// Sets EntanglementReport::success.
  double population_tolerance = 0.02;
};

/// Two-stage resonant W protocol: the first terminal loads mode lambda',
/// then every terminal couples to it until the excitation is shared.
EntanglementReport w_resonant_protocol(const SystemSpec& spec, std::size_t mode,
                                       const WResonantOptions& options = {});

}  // namespace spinnet
