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
#include "spinnet/effective.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "spinnet/errors.hpp"

namespace spinnet {
namespace {

std::string mode_label(std::size_t mode) { return "mode" + std::to_string(mode); }

void require_terminal_count(const SystemSpec& spec, std::size_t count, const char* what) {
  if (spec.terminal_count() != count) {
    std::ostringstream msg;
    msg << what << ": expected " << count << " terminals, got " << spec.terminal_count();
    throw ConstructionError(msg.str());
  }
}

void require_mode(const SpectralDecomposition& spectrum, std::size_t mode) {
  if (mode >= spectrum.size()) {
    std::ostringstream msg;
    msg << "mode index " << mode << " is outside [0, " << spectrum.size() << ")";
    throw ConstructionError(msg.str());
  }
  if (!spectrum.is_simple(mode)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "eigenvalue " << spectrum.eigenvalues(static_cast<Eigen::Index>(mode))
        << " is degenerate (multiplicity "
        << spectrum.degeneracy_classes[spectrum.class_of(mode)].size()
        << "); the resonant projection exceeds three levels and no choice of couplings "
           "guarantees perfect transfer";
    throw DegeneracyError(msg.str());
  }
}

void require_on_resonance(const SystemSpec& spec, double lambda, const EffectiveOptions& options) {
  for (const auto& t : spec.terminals()) {
    if (std::abs(t.field() - lambda) > options.resonance_tolerance) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "terminal '" << t.label() << "': field " << t.field()
          << " is not tuned to the resonance " << lambda;
      throw NotResonantError(msg.str());
    }
  }
}

// Rejects fields inside the detuning floor and collects weak-coupling warnings.
std::vector<std::string> check_detuning(const SystemSpec& spec,
                                        const SpectralDecomposition& spectrum,
                                        const EffectiveOptions& options) {
  std::vector<std::string> warnings;
  for (const auto& t : spec.terminals()) {
    const auto nearest = nearest_eigenvalue(spectrum, t.field());
    const double lambda = spectrum.eigenvalues(static_cast<Eigen::Index>(nearest.index));
    if (nearest.distance < options.detuning_floor) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "terminal '" << t.label() << "': field " << t.field() << " collides with mode "
          << nearest.index << " (eigenvalue " << lambda << ", detuning " << nearest.distance
          << " < floor " << options.detuning_floor << ")";
      throw ResonantCollisionError(msg.str());
    }
    if (std::abs(t.coupling()) > options.weakness_factor * nearest.distance) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "terminal '" << t.label() << "': |coupling| " << std::abs(t.coupling())
          << " exceeds " << options.weakness_factor << " x detuning " << nearest.distance
          << " from eigenvalue " << lambda << "; second-order theory may be inaccurate";
      warnings.push_back(msg.str());
    }
  }
  return warnings;
}

Complex pair_sum(const SpectralDecomposition& spectrum, const CVector& gi, const CVector& gj,
                 double omega) {
  Complex sum = 0.0;
  for (Eigen::Index k = 0; k < spectrum.eigenvalues.size(); ++k) {
    sum += gi(k) * std::conj(gj(k)) / (spectrum.eigenvalues(k) - omega);
  }
  return sum;
}

}  // namespace

const char* to_string(Regime regime) {
  return regime == Regime::resonant ? "resonant" : "nonresonant";
}

double EffectiveHamiltonian::beta(double epsilon) const {
  double largest = 0.0;
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < matrix.cols(); ++j) {
      largest = std::max(largest, std::abs(matrix(i, j)));
    }
  }
  return largest / epsilon;
}

double EffectiveHamiltonian::beta_prime(double epsilon) const {
  return beta(epsilon) / epsilon;
}

double resolvent_diagonal(const SpectralDecomposition& spectrum, const CVector& amplitudes,
                          double omega, std::span<const std::size_t> skip) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < spectrum.eigenvalues.size(); ++k) {
    if (std::find(skip.begin(), skip.end(), static_cast<std::size_t>(k)) != skip.end()) continue;
    sum += std::norm(amplitudes(k)) / (spectrum.eigenvalues(k) - omega);
  }
  return sum;
}

EffectiveHamiltonian effective_resonant(const SystemSpec& spec, std::size_t mode,
                                        const EffectiveOptions& options) {
  require_terminal_count(spec, 2, "effective_resonant");
  const auto spectrum = network_spectrum(spec.network());
  require_mode(spectrum, mode);
  const double lambda = spectrum.eigenvalues(static_cast<Eigen::Index>(mode));
  require_on_resonance(spec, lambda, options);

  const auto& s = spec.terminal(0);
  const auto& d = spec.terminal(1);
  const Complex gs = coupling_profile(spectrum, s).amplitudes(static_cast<Eigen::Index>(mode));
  const Complex gd = coupling_profile(spectrum, d).amplitudes(static_cast<Eigen::Index>(mode));

  EffectiveHamiltonian h;
  h.matrix = CMatrix::Identity(3, 3) * lambda;
  h.matrix(0, 1) = s.coupling() * gs;
  h.matrix(1, 0) = std::conj(h.matrix(0, 1));
  h.matrix(2, 1) = d.coupling() * gd;
  h.matrix(1, 2) = std::conj(h.matrix(2, 1));
  h.basis_labels = {s.label(), mode_label(mode), d.label()};
  h.regime = Regime::resonant;
  h.order_in_epsilon = 1;
  h.resonance_mode = mode;

  const double gap = adjacent_gap(spectrum, mode);
  for (const auto* t : {&s, &d}) {
    if (std::abs(t->coupling()) > options.weakness_factor * gap) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "terminal '" << t->label() << "': |coupling| " << std::abs(t->coupling())
          << " exceeds " << options.weakness_factor << " x gap " << gap
          << " adjacent to the resonant mode";
      h.warnings.push_back(msg.str());
    }
  }
  return h;
}

SWGenerator sw_generator(const SystemSpec& spec, const EffectiveOptions& options) {
  SWGenerator g;
  g.spectrum = network_spectrum(spec.network());
  g.warnings = check_detuning(spec, g.spectrum, options);
  const auto m = static_cast<Eigen::Index>(spec.terminal_count());
  const auto n = static_cast<Eigen::Index>(g.spectrum.size());
  g.coefficients = CMatrix::Zero(m, n);
  // V_{a,l} + i S_{a,l} (l - w_a) = 0 element by element.
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto& t = spec.terminal(static_cast<std::size_t>(a));
    const CVector amplitudes = coupling_profile(g.spectrum, t).amplitudes;
    for (Eigen::Index k = 0; k < n; ++k) {
      g.coefficients(a, k) =
          Complex(0.0, 1.0) * amplitudes(k) / (g.spectrum.eigenvalues(k) - t.field());
    }
  }
  return g;
}

CMatrix SWGenerator::generator(const SystemSpec& spec) const {
  const auto m = coefficients.rows();
  const auto dim = m + coefficients.cols();
  CMatrix s = CMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < m; ++a) {
    const Complex c = spec.terminal(static_cast<std::size_t>(a)).coupling();
    for (Eigen::Index k = 0; k < coefficients.cols(); ++k) {
      s(a, m + k) = c * coefficients(a, k);
      s(m + k, a) = std::conj(s(a, m + k));
    }
  }
  return s;
}

double sw_condition_residual(const SystemSpec& spec, const SWGenerator& generator) {
  const auto m = static_cast<Eigen::Index>(spec.terminal_count());
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  CMatrix rotation = CMatrix::Zero(dim, dim);
  rotation.topLeftCorner(m, m).setIdentity();
  rotation.bottomRightCorner(dim - m, dim - m) = generator.spectrum.eigenvectors;
  const CMatrix rotated = rotation.adjoint() * full_hamiltonian(spec) * rotation;

  CMatrix h0 = CMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < m; ++a) h0(a, a) = spec.terminal(static_cast<std::size_t>(a)).field();
  for (Eigen::Index k = 0; k < dim - m; ++k) h0(m + k, m + k) = generator.spectrum.eigenvalues(k);
  const CMatrix v = rotated - h0;
  const CMatrix s = generator.generator(spec);
  const CMatrix residual = v + Complex(0.0, 1.0) * (s * h0 - h0 * s);
  return residual.cwiseAbs().maxCoeff();
}

EffectiveHamiltonian effective_multiuser(const SystemSpec& spec, const EffectiveOptions& options) {
  if (spec.terminal_count() == 0) throw ConstructionError("effective_multiuser: no terminals");
  const auto spectrum = network_spectrum(spec.network());
  EffectiveHamiltonian h;
  h.warnings = check_detuning(spec, spectrum, options);
  const auto m = static_cast<Eigen::Index>(spec.terminal_count());
  std::vector<CVector> g;
  for (const auto& t : spec.terminals()) g.push_back(coupling_profile(spectrum, t).amplitudes);

  h.matrix = CMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& ti = spec.terminal(static_cast<std::size_t>(i));
    h.matrix(i, i) = ti.field() - std::norm(ti.coupling()) *
                                      resolvent_diagonal(spectrum, g[static_cast<std::size_t>(i)],
                                                         ti.field());
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const auto& tj = spec.terminal(static_cast<std::size_t>(j));
      const auto& gi = g[static_cast<std::size_t>(i)];
      const auto& gj = g[static_cast<std::size_t>(j)];
      // Symmetrized second-order exchange through every eigenmode.
      const Complex sum = pair_sum(spectrum, gi, gj, ti.field()) +
                          pair_sum(spectrum, gi, gj, tj.field());
      h.matrix(i, j) = -0.5 * ti.coupling() * std::conj(tj.coupling()) * sum;
      h.matrix(j, i) = std::conj(h.matrix(i, j));
    }
    h.basis_labels.push_back(ti.label());
  }
  h.regime = Regime::nonresonant;
  h.order_in_epsilon = 2;
  return h;
}

EffectiveHamiltonian effective_nonresonant(const SystemSpec& spec,
                                           const EffectiveOptions& options) {
  require_terminal_count(spec, 2, "effective_nonresonant");
  return effective_multiuser(spec, options);
}

EffectiveHamiltonian effective_resonant_multiuser(const SystemSpec& spec, std::size_t mode,
                                                  const EffectiveOptions& options) {
  if (spec.terminal_count() == 0) {
    throw ConstructionError("effective_resonant_multiuser: no terminals");
  }
  const auto spectrum = network_spectrum(spec.network());
  require_mode(spectrum, mode);
  const double lambda = spectrum.eigenvalues(static_cast<Eigen::Index>(mode));
  require_on_resonance(spec, lambda, options);

  const auto m = static_cast<Eigen::Index>(spec.terminal_count());
  EffectiveHamiltonian h;
  h.matrix = CMatrix::Identity(m + 1, m + 1) * lambda;
  h.basis_labels.push_back(mode_label(mode));
  const double gap = adjacent_gap(spectrum, mode);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& t = spec.terminal(static_cast<std::size_t>(i));
    const Complex g = coupling_profile(spectrum, t).amplitudes(static_cast<Eigen::Index>(mode));
    h.matrix(i + 1, 0) = t.coupling() * g;
    h.matrix(0, i + 1) = std::conj(h.matrix(i + 1, 0));
    h.basis_labels.push_back(t.label());
    if (std::abs(t.coupling()) > options.weakness_factor * gap) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "terminal '" << t.label() << "': |coupling| " << std::abs(t.coupling())
          << " exceeds " << options.weakness_factor << " x gap " << gap
          << " adjacent to the resonant mode";
      h.warnings.push_back(msg.str());
    }
  }
  h.regime = Regime::resonant;
  h.order_in_epsilon = 1;
  h.resonance_mode = mode;
  return h;
}

double transfer_time_estimate(const EffectiveHamiltonian& hamiltonian) {
  const auto& h = hamiltonian.matrix;
  if (hamiltonian.regime == Regime::nonresonant && h.rows() == 2) {
    const double b = std::abs(h(0, 1));
    if (b == 0.0) throw NoChannelError("effective coupling vanishes; no transfer");
    return kPi / (2.0 * b);
  }
  if (hamiltonian.regime == Regime::resonant && h.rows() == 3) {
    // The two uncoupled ends are the pair with the smallest entry.
    std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    auto ends = *std::min_element(pairs.begin(), pairs.end(), [&](auto a, auto b) {
      return std::abs(h(a.first, a.second)) < std::abs(h(b.first, b.second));
    });
    const int centre = 3 - ends.first - ends.second;
    const double a = std::abs(h(ends.first, centre));
    const double b = std::abs(h(ends.second, centre));
    const double larger = std::max(a, b);
    if (larger == 0.0) throw NoChannelError("resonant couplings vanish; no transfer");
    if (std::abs(a - b) > 0.01 * larger) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "resonant couplings " << a << " and " << b
          << " differ by more than 1%; calibrate before estimating the transfer time";
      throw NotCalibratedError(msg.str());
    }
    return kPi / (std::sqrt(2.0) * 0.5 * (a + b));
  }
  throw ContractViolation(
      "transfer_time_estimate: expects a 3x3 resonant or 2x2 non-resonant effective Hamiltonian");
}

}  // namespace spinnet
