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
#include <span>
#include <string>
#include <vector>

#include "spinnet/network.hpp"
#include "spinnet/spectral.hpp"
#include "spinnet/types.hpp"

namespace spinnet {

enum class Regime { resonant, nonresonant };

const char* to_string(Regime regime);

/// Small Hermitian matrix acting on terminal and/or eigenmode states.
///
/// Off-diagonal entries carry the powers of epsilon; beta() and
/// beta_prime() divide them back out.
struct EffectiveHamiltonian {
  CMatrix matrix;
  std::vector<std::string> basis_labels;
  Regime regime = Regime::nonresonant;
  int order_in_epsilon = 2;
  std::optional<std::size_t> resonance_mode;
  std::vector<std::string> warnings;

  std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
  /// Largest off-diagonal magnitude divided by epsilon (resonant scale).
  double beta(double epsilon) const;
  /// Largest off-diagonal magnitude divided by epsilon squared (non-resonant scale).
  double beta_prime(double epsilon) const;
};

struct EffectiveOptions {
  /// Minimum |omega - lambda| for non-resonant constructions.
  double detuning_floor = 1e-6;
  /// Warn when |coupling| exceeds this fraction of the relevant spectral gap.
  double weakness_factor = 0.2;
  /// Tolerance used to test omega == lambda' in resonant constructions.
  double resonance_tolerance = 1e-9;
};

/// Schrieffer-Wolff generator coefficients s_{alpha lambda}, with
/// S_{alpha lambda} = coupling_alpha * s_{alpha lambda}, chosen so that
/// V + i[S, H0] = 0.
struct SWGenerator {
  CMatrix coefficients;  ///< terminals x modes
  SpectralDecomposition spectrum;
  std::vector<std::string> warnings;

  /// The full generator S in the {terminals, eigenmodes} basis.
  CMatrix generator(const SystemSpec& spec) const;
};

/// 3x3 matrix on {s, lambda', d}: diagonal lambda', couplings eps*xi*g.
EffectiveHamiltonian effective_resonant(const SystemSpec& spec, std::size_t mode,
                                        const EffectiveOptions& options = {});

SWGenerator sw_generator(const SystemSpec& spec, const EffectiveOptions& options = {});

/// max |V + i[S, H0]| with H0 and V obtained by rotating the full
/// Hamiltonian into the {terminals, eigenmodes} basis.
double sw_condition_residual(const SystemSpec& spec, const SWGenerator& generator);

/// Second-order 2x2 matrix on {s, d}.
EffectiveHamiltonian effective_nonresonant(const SystemSpec& spec,
                                           const EffectiveOptions& options = {});

/// Second-order m x m matrix on all terminals.
EffectiveHamiltonian effective_multiuser(const SystemSpec& spec,
                                         const EffectiveOptions& options = {});

/// (m+1) x (m+1) star: mode lambda' (first) coupled to every terminal.
EffectiveHamiltonian effective_resonant_multiuser(const SystemSpec& spec, std::size_t mode,
                                                  const EffectiveOptions& options = {});

/// pi/(sqrt(2) b) for a calibrated 3x3 resonant matrix, pi/(2 b') for a
/// 2x2 non-resonant one. Throws NotCalibratedError when resonant
/// off-diagonals differ by more than 1%.
double transfer_time_estimate(const EffectiveHamiltonian& hamiltonian);

/// Lamb-shift sum sum_lambda |g|^2 / (lambda - omega) over the modes not in `skip`.
double resolvent_diagonal(const SpectralDecomposition& spectrum, const CVector& amplitudes,
                          double omega, std::span<const std::size_t> skip = {});

}  // namespace spinnet
