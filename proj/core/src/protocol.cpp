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
#include "spinnet/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "spinnet/dynamics.hpp"
#include "spinnet/errors.hpp"

namespace spinnet {
namespace {

constexpr double kZeroAmplitude = 1e-12;

void require_two_terminals(const SystemSpec& spec, const char* what) {
  if (spec.terminal_count() != 2) {
    std::ostringstream msg;
    msg << what << ": expected 2 terminals, got " << spec.terminal_count();
    throw ConstructionError(msg.str());
  }
}

void require_simple_mode(const SpectralDecomposition& spectrum, std::size_t mode) {
  if (mode >= spectrum.size()) {
    std::ostringstream msg;
    msg << "mode index " << mode << " is outside [0, " << spectrum.size() << ")";
    throw ConstructionError(msg.str());
  }
  if (!spectrum.is_simple(mode)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "eigenvalue " << spectrum.eigenvalues(static_cast<Eigen::Index>(mode))
        << " is degenerate; resonant calibration needs a simple mode";
    throw DegeneracyError(msg.str());
  }
}

Complex amplitude_at(const SpectralDecomposition& spectrum, const Terminal& t, std::size_t mode) {
  return coupling_profile(spectrum, t).amplitudes(static_cast<Eigen::Index>(mode));
}

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * kPi);
  return phi <= -kPi ? phi + 2.0 * kPi : phi;
}

std::vector<double> relative_phases(std::span<const Complex> amplitudes) {
  std::vector<double> phases;
  for (std::size_t j = 1; j < amplitudes.size(); ++j) {
    phases.push_back(wrap_phase(std::arg(amplitudes[j]) - std::arg(amplitudes[0])));
  }
  return phases;
}

double max_deviation(std::span<const double> populations, double target) {
  double dev = 0.0;
  for (double p : populations) dev = std::max(dev, std::abs(p - target));
  return dev;
}

}  // namespace

// ---------------------------------------------------------------------------

ChannelReport channel_exists(const SpinNetwork& network, std::size_t source_node,
                             std::size_t dest_node, double tolerance) {
  for (auto node : {source_node, dest_node}) {
    if (node < 1 || node > network.node_count()) {
      std::ostringstream msg;
      msg << "channel_exists: node " << node << " is outside [1, " << network.node_count() << "]";
      throw ConstructionError(msg.str());
    }
  }
  const auto spectrum = network_spectrum(network);
  const auto s = static_cast<Eigen::Index>(source_node - 1);
  const auto d = static_cast<Eigen::Index>(dest_node - 1);
  ChannelReport report;
  for (const auto& cls : spectrum.degeneracy_classes) {
    Complex element = 0.0;
    for (auto k : cls) {
      const auto col = static_cast<Eigen::Index>(k);
      element += spectrum.eigenvectors(s, col) * std::conj(spectrum.eigenvectors(d, col));
    }
    if (std::abs(element) > tolerance) {
      report.witnesses.push_back(
          {spectrum.eigenvalues(static_cast<Eigen::Index>(cls.front())), cls, std::abs(element)});
    }
  }
  report.exists = !report.witnesses.empty();
  return report;
}

// ---------------------------------------------------------------------------

CalibrationResult calibrate_resonant(const SystemSpec& spec, std::size_t mode,
                                     const EffectiveOptions& options) {
  require_two_terminals(spec, "calibrate_resonant");
  const auto spectrum = network_spectrum(spec.network());
  require_simple_mode(spectrum, mode);
  const double lambda = spectrum.eigenvalues(static_cast<Eigen::Index>(mode));

  const auto& s = spec.terminal(0);
  const auto& d = spec.terminal(1);
  const Complex gs = amplitude_at(spectrum, s, mode);
  const Complex gd = amplitude_at(spectrum, d, mode);
  for (const auto& [t, g] : {std::pair{&s, gs}, std::pair{&d, gd}}) {
    if (std::abs(g) <= kZeroAmplitude) {
      std::ostringstream msg;
      msg << "terminal '" << t->label() << "': node " << t->attach_node()
          << " has no overlap with mode " << mode << "; the mode is not a channel";
      throw NoChannelError(msg.str());
    }
  }

  CalibrationResult result{spec};
  std::vector<std::string> warnings;
  Complex cs = s.coupling();
  Complex cd = cs * gs / gd;
  const double threshold = options.weakness_factor * adjacent_gap(spectrum, mode);
  const double smaller = std::min(std::abs(cs), std::abs(cd));
  if (smaller > threshold) {
    const double scale = threshold / smaller;
    cs *= scale;
    cd *= scale;
    std::ostringstream msg;
    msg.precision(6);
    msg << "couplings rescaled by " << scale << " to respect the weak-coupling threshold "
        << threshold;
    warnings.push_back(msg.str());
  }

  result.adjusted_spec =
      SystemSpec(spec.network(), {s.with_coupling(cs).with_field(lambda),
                                  d.with_coupling(cd).with_field(lambda)});
  const auto eff = effective_resonant(result.adjusted_spec, mode, options);
  warnings.insert(warnings.end(), eff.warnings.begin(), eff.warnings.end());

  result.regime = Regime::resonant;
  result.resonance_mode = mode;
  result.diagnostics.off_diagonal_magnitudes = {std::abs(eff.matrix(0, 1)),
                                                std::abs(eff.matrix(1, 2))};
  result.diagnostics.diagonal_residual = 0.0;
  result.predicted_time = kPi / (std::sqrt(2.0) * std::abs(cs * gs));
  result.warnings = std::move(warnings);
  return result;
}

CalibrationResult calibrate_nonresonant(const SystemSpec& spec, FreeField free_field,
                                        const EffectiveOptions& options) {
  require_two_terminals(spec, "calibrate_nonresonant");
  // Validates both fields against the detuning floor.
  (void)effective_nonresonant(spec, options);

  const auto spectrum = network_spectrum(spec.network());
  const std::size_t free_index = free_field == FreeField::source ? 0 : 1;
  const auto& free = spec.terminal(free_index);
  const auto& other = spec.terminal(1 - free_index);
  const CVector g_free = coupling_profile(spectrum, free).amplitudes;
  const CVector g_other = coupling_profile(spectrum, other).amplitudes;

  auto diagonal = [&](const Terminal& t, const CVector& g, double omega) {
    return omega - std::norm(t.coupling()) * resolvent_diagonal(spectrum, g, omega);
  };
  const double target = diagonal(other, g_other, other.field());
  auto residual = [&](double omega) { return diagonal(free, g_free, omega) - target; };

  const double centre = other.field();
  double root = centre;
  const double at_centre = residual(centre);
  if (std::abs(at_centre) > 1e-13) {
    const double lamb = std::max(
        std::norm(free.coupling()) * std::abs(resolvent_diagonal(spectrum, g_free, centre)),
        std::norm(other.coupling()) * std::abs(resolvent_diagonal(spectrum, g_other, centre)));
    const double room = nearest_eigenvalue(spectrum, centre).distance - options.detuning_floor;
    const double half_width = std::min(10.0 * lamb, 0.5 * room);
    const double lo = centre - half_width;
    const double hi = centre + half_width;
    const double f_lo = residual(lo);
    const double f_hi = residual(hi);
    if (!(half_width > 0.0) || f_lo * f_hi > 0.0) {
      std::ostringstream msg;
      msg.precision(10);
      msg << "calibrate_nonresonant: no root of the diagonal mismatch in [" << lo << ", " << hi
          << "] for terminal '" << free.label() << "'";
      throw CalibrationError(msg.str());
    }
    std::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        residual, lo, hi, f_lo, f_hi,
        [](double x, double y) { return std::abs(x - y) <= 1e-12; }, iterations);
    root = 0.5 * (a + b);
  }

  CalibrationResult result{spec.with_terminal(free_index, free.with_field(root))};
  const auto eff = effective_nonresonant(result.adjusted_spec, options);
  const double off = std::abs(eff.matrix(0, 1));
  if (!(off > 1e-15)) {
    throw NoChannelError(
        "calibrate_nonresonant: the effective s-d coupling vanishes; this pair admits no "
        "non-resonant channel");
  }
  result.regime = Regime::nonresonant;
  result.diagnostics.off_diagonal_magnitudes = {off};
  result.diagnostics.diagonal_residual = std::abs(eff.matrix(0, 0) - eff.matrix(1, 1));
  result.predicted_time = kPi / (2.0 * off);
  result.warnings = eff.warnings;
  return result;
}

// ---------------------------------------------------------------------------

RouteResult route(const SystemSpec& spec, const std::string& source_label,
                  const std::string& target_label, const RouteOptions& options) {
  if (source_label == target_label) {
    throw ConstructionError("route: source and target must differ");
  }
  const auto source_index = spec.index_of(source_label);
  const auto target_index = spec.index_of(target_label);
  const auto& source = spec.terminal(source_index);
  const auto& target = spec.terminal(target_index);
  const double omega = target.field();
  const auto spectrum = network_spectrum(spec.network());

  const double rs = resolvent_diagonal(spectrum, coupling_profile(spectrum, source).amplitudes, omega);
  const double rt = resolvent_diagonal(spectrum, coupling_profile(spectrum, target).amplitudes, omega);

  Terminal tuned = source.with_field(omega);
  std::vector<std::string> warnings;
  if (rs * rt > 0.0) {
    // |c_s|^2 R_s = |c_t|^2 R_t equalizes the pair's second-order diagonals.
    const double magnitude = std::abs(target.coupling()) * std::sqrt(rt / rs);
    tuned = tuned.with_coupling(std::polar(magnitude, std::arg(source.coupling())));
  } else {
    const std::vector<std::string> pair_labels{source_label, target_label};
    const SystemSpec pair =
        spec.with_terminal(source_index, tuned).restricted_to(pair_labels);
    const auto calibrated = calibrate_nonresonant(pair, FreeField::source, options.effective);
    tuned = calibrated.adjusted_spec.terminal(0);
    warnings.push_back("Lamb shifts of source and target have opposite signs; source field "
                       "shifted instead of its coupling");
  }

  RouteResult out{CalibrationResult{spec.with_terminal(source_index, tuned)}};
  auto& result = out.calibration;
  const std::vector<std::string> pair_labels{source_label, target_label};
  const auto eff =
      effective_nonresonant(result.adjusted_spec.restricted_to(pair_labels), options.effective);
  const double off = std::abs(eff.matrix(0, 1));
  if (!(off > 1e-15)) {
    throw NoChannelError("route: effective coupling between '" + source_label + "' and '" +
                         target_label + "' vanishes");
  }
  warnings.insert(warnings.end(), eff.warnings.begin(), eff.warnings.end());

  out.effective_coupling = off;
  out.min_user_detuning = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.terminal_count(); ++i) {
    if (i == source_index || i == target_index) continue;
    const auto& rival = spec.terminal(i);
    const double detuning = std::abs(rival.field() - tuned.field());
    out.min_user_detuning = std::min(out.min_user_detuning, detuning);
    if (detuning < options.separation_factor * off) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "routing ambiguity: user '" << rival.label() << "' sits " << detuning
          << " from the channel frequency (< " << options.separation_factor
          << " x effective coupling " << off << ")";
      warnings.push_back(msg.str());
    }
  }
  out.min_spectrum_detuning = nearest_eigenvalue(spectrum, tuned.field()).distance;

  result.regime = Regime::nonresonant;
  result.diagnostics.off_diagonal_magnitudes = {off};
  result.diagnostics.diagonal_residual = std::abs(eff.matrix(0, 0) - eff.matrix(1, 1));
  result.predicted_time = kPi / (2.0 * off);
  result.warnings = std::move(warnings);
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(EntanglementProtocol protocol) {
  switch (protocol) {
    case EntanglementProtocol::bell:
      return "bell";
    case EntanglementProtocol::w_nonresonant:
      return "w_nonresonant";
    case EntanglementProtocol::w_resonant:
      return "w_resonant";
  }
  return "unknown";
}

double bell_family_fidelity(Complex amplitude_s, Complex amplitude_d) {
  const double sum = std::abs(amplitude_s) + std::abs(amplitude_d);
  return std::clamp(0.5 * sum * sum, 0.0, 1.0);
}

double w_family_fidelity(std::span<const Complex> amplitudes) {
  if (amplitudes.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::abs(a);
  return std::clamp(sum * sum / static_cast<double>(amplitudes.size()), 0.0, 1.0);
}

EntanglementReport bell_protocol(const SystemSpec& spec, const EffectiveOptions& options) {
  require_two_terminals(spec, "bell_protocol");
  const auto spectrum = network_spectrum(spec.network());
  const auto& s = spec.terminal(0);
  const auto& d = spec.terminal(1);
  const auto near_s = nearest_eigenvalue(spectrum, s.field());
  const auto near_d = nearest_eigenvalue(spectrum, d.field());

  double estimate = 0.0;
  const bool resonant = near_s.distance <= options.resonance_tolerance &&
                        near_d.distance <= options.resonance_tolerance;
  if (resonant) {
    const auto eff = effective_resonant(spec, near_s.index, options);
    try {
      estimate = transfer_time_estimate(eff);
    } catch (const NotCalibratedError& e) {
      throw NotCalibratedError(std::string("bell_protocol: ") + e.what());
    }
  } else {
    const auto eff = effective_nonresonant(spec, options);
    const double off = std::abs(eff.matrix(0, 1));
    if (!(off > 1e-15)) throw NoChannelError("bell_protocol: effective coupling vanishes");
    const double mismatch = std::abs(eff.matrix(0, 0) - eff.matrix(1, 1));
    if (mismatch > 0.01 * off) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "bell_protocol: effective diagonals differ by " << mismatch
          << ", more than 1% of the coupling " << off << "; calibrate first";
      throw NotCalibratedError(msg.str());
    }
    estimate = kPi / (2.0 * off);
  }

  const Propagator propagator(full_hamiltonian(spec));
  const CVector psi0 = basis_state(spec.dimension(), 0);
  const auto peak = peak_population(propagator, psi0, 1, 2.0 * estimate);
  const double half = 0.5 * peak.time;
  const CVector psi = propagator.evolve(psi0, half);

  EntanglementReport report;
  report.protocol = EntanglementProtocol::bell;
  report.target_times = {half};
  report.achieved_fidelity = bell_family_fidelity(psi(0), psi(1));
  const std::array<Complex, 2> amplitudes{psi(0), psi(1)};
  report.optimal_phases = relative_phases(amplitudes);
  report.terminal_populations = {std::norm(psi(0)), std::norm(psi(1))};
  std::ostringstream msg;
  msg.precision(8);
  msg << "transfer peak " << peak.value << " at t = " << peak.time << " (estimate " << estimate
      << ")";
  if (resonant) {
    // The s - lambda' - d chain never splits the excitation evenly between
    // s and d: at half the transfer time half of it sits in the mode.
    report.success = false;
    msg << "; resonant regime: mode population " << 1.0 - psi.head(2).squaredNorm()
        << " at half time, no Bell state forms";
  }
  report.message = msg.str();
  return report;
}

EntanglementReport w_nonresonant_protocol(const SystemSpec& spec,
                                          const WNonresonantOptions& options) {
  const std::size_t m = spec.terminal_count();
  if (m < 2) throw ConstructionError("w_nonresonant_protocol: needs at least 2 terminals");
  const double omega = spec.terminal(0).field();
  for (const auto& t : spec.terminals()) {
    if (std::abs(t.field() - omega) > 1e-12 * std::max(1.0, std::abs(omega))) {
      throw ContractViolation("w_nonresonant_protocol: all terminal fields must be equal");
    }
  }
  const auto eff = effective_multiuser(spec, options.effective);

  EntanglementReport report;
  report.protocol = EntanglementProtocol::w_nonresonant;

  double t_max = options.t_max;
  if (!(t_max > 0.0)) {
    const RVector levels = eigendecompose(eff.matrix).eigenvalues;
    const double scale = std::max(1e-300, levels.cwiseAbs().maxCoeff());
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 1; k < levels.size(); ++k) {
      const double g = levels(k) - levels(k - 1);
      if (g > 1e-12 * scale) gap = std::min(gap, g);
    }
    if (!std::isfinite(gap)) {
      report.success = false;
      report.message = "effective multiuser Hamiltonian has no level splitting; nothing evolves";
      return report;
    }
    t_max = 2.0 * 2.0 * kPi / gap;
  }

  const Propagator propagator(full_hamiltonian(spec));
  const CVector coefficients = propagator.to_eigenbasis(basis_state(spec.dimension(), 0));
  const double share = 1.0 / static_cast<double>(m);
  std::vector<double> populations(m);
  auto deviation = [&](double t) {
    const CVector psi = propagator.evolve_coefficients(coefficients, t);
    for (std::size_t j = 0; j < m; ++j) populations[j] = std::norm(psi(static_cast<Eigen::Index>(j)));
    return max_deviation(populations, share);
  };
  const auto best = maximize_on_interval([&](double t) { return -deviation(t); }, 0.0, t_max,
                                         std::max<std::size_t>(options.n_points, 2));
  const CVector psi = propagator.evolve_coefficients(coefficients, best.time);
  std::vector<Complex> amplitudes(psi.data(), psi.data() + m);

  report.target_times = {best.time};
  report.achieved_fidelity = w_family_fidelity(amplitudes);
  report.optimal_phases = relative_phases(amplitudes);
  for (const auto& a : amplitudes) report.terminal_populations.push_back(std::norm(a));
  const double dev = -best.value;
  std::ostringstream msg;
  msg.precision(6);
  if (dev <= options.population_tolerance) {
    msg << "populations within " << dev << " of 1/" << m << " at t = " << best.time;
  } else {
    report.success = false;
    msg << "no time in [0, " << t_max << "] brings every population within "
        << options.population_tolerance << " of 1/" << m << " (closest " << dev << ")";
  }
  report.message = msg.str();
  return report;
}

EntanglementReport w_resonant_protocol(const SystemSpec& spec, std::size_t mode,
                                       const WResonantOptions& options) {
  const std::size_t m = spec.terminal_count();
  if (m == 0) throw ConstructionError("w_resonant_protocol: needs at least 1 terminal");
  const auto spectrum = network_spectrum(spec.network());
  require_simple_mode(spectrum, mode);
  const double lambda = spectrum.eigenvalues(static_cast<Eigen::Index>(mode));

  std::vector<CVector> g;
  for (const auto& t : spec.terminals()) {
    g.push_back(coupling_profile(spectrum, t).amplitudes);
    if (std::abs(g.back()(static_cast<Eigen::Index>(mode))) <= kZeroAmplitude) {
      throw NoChannelError("terminal '" + t.label() + "' has no overlap with mode " +
                           std::to_string(mode));
    }
  }
  const auto mi = static_cast<Eigen::Index>(mode);

  // Equalize xi_i g_i against the first user.
  std::vector<Complex> couplings(m);
  couplings[0] = spec.terminal(0).coupling();
  for (std::size_t i = 1; i < m; ++i) couplings[i] = couplings[0] * g[0](mi) / g[i](mi);

  // Second-order terminal block from every mode except lambda'.
  CMatrix shift = CMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Complex sum = 0.0;
      for (Eigen::Index k = 0; k < spectrum.eigenvalues.size(); ++k) {
        if (k == mi) continue;
        sum += g[i](k) * std::conj(g[j](k)) / (spectrum.eigenvalues(k) - lambda);
      }
      shift(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          -couplings[i] * std::conj(couplings[j]) * sum;
    }
  }
  CVector bright(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) bright(static_cast<Eigen::Index>(i)) = couplings[i] * g[i](mi);
  const double bright_rate = bright.norm();
  bright.normalize();

  double field_one = lambda;
  double field_all = lambda;
  if (options.compensate_lamb_shift) {
    field_one = lambda - shift(0, 0).real();
    field_all = lambda - bright.dot(shift * bright).real();
  }

  std::vector<Terminal> stage2_terminals;
  for (std::size_t i = 0; i < m; ++i) {
    stage2_terminals.push_back(spec.terminal(i).with_coupling(couplings[i]).with_field(field_all));
  }
  const SystemSpec stage2_spec(spec.network(), stage2_terminals);
  const CMatrix h2 = full_hamiltonian(stage2_spec);

  stage2_terminals[0] = stage2_terminals[0].with_field(field_one);
  CMatrix h1 = full_hamiltonian(SystemSpec(spec.network(), stage2_terminals));
  for (std::size_t i = 1; i < m; ++i) {
    const auto a = static_cast<Eigen::Index>(i);
    const auto n = static_cast<Eigen::Index>(stage2_spec.node_index(spec.terminal(i).attach_node()));
    h1(a, n) = 0.0;
    h1(n, a) = 0.0;
  }

  const Propagator stage1(h1);
  const Propagator stage2(h2);
  const double t1_analytic = kPi / (2.0 * std::abs(couplings[0] * g[0](mi)));
  const double t2_analytic = kPi / (2.0 * bright_rate);
  const double share = 1.0 / static_cast<double>(m);
  const CVector start = stage1.to_eigenbasis(basis_state(stage2_spec.dimension(), 0));

  double t1 = t1_analytic;
  double t2 = t2_analytic;
  if (options.refine_schedule) {
    const auto n1 = std::max<std::size_t>(options.stage1_points, 2);
    const auto n2 = std::max<std::size_t>(options.stage2_points, 2);
    const RVector& w2 = stage2.spectrum().eigenvalues;
    const CMatrix terminal_rows =
        stage2.spectrum().eigenvectors.topRows(static_cast<Eigen::Index>(m));
    CMatrix phases(w2.size(), static_cast<Eigen::Index>(n2));
    std::vector<double> t2_grid(n2);
    for (std::size_t j = 0; j < n2; ++j) {
      t2_grid[j] = t2_analytic * (0.5 + static_cast<double>(j) / static_cast<double>(n2 - 1));
      for (Eigen::Index k = 0; k < w2.size(); ++k) {
        phases(k, static_cast<Eigen::Index>(j)) = std::polar(1.0, -w2(k) * t2_grid[j]);
      }
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n1; ++i) {
      const double t1_candidate =
          t1_analytic * (0.7 + 0.6 * static_cast<double>(i) / static_cast<double>(n1 - 1));
      const CVector mid = stage1.evolve_coefficients(start, t1_candidate);
      const CVector c = stage2.spectrum().eigenvectors.adjoint() * mid;
      const CMatrix amps = terminal_rows * c.asDiagonal() * phases;
      for (std::size_t j = 0; j < n2; ++j) {
        const double dev =
            (amps.col(static_cast<Eigen::Index>(j)).cwiseAbs2().array() - share).abs().maxCoeff();
        if (dev < best) {
          best = dev;
          t1 = t1_candidate;
          t2 = t2_grid[j];
        }
      }
    }
  }

  const CVector loaded = stage1.evolve_coefficients(start, t1);
  const CVector psi =
      stage2.evolve_coefficients(stage2.spectrum().eigenvectors.adjoint() * loaded, t2);
  std::vector<Complex> amplitudes(psi.data(), psi.data() + m);

  EntanglementReport report;
  report.protocol = EntanglementProtocol::w_resonant;
  report.target_times = {t1, t2};
  report.achieved_fidelity = w_family_fidelity(amplitudes);
  report.optimal_phases = relative_phases(amplitudes);
  for (const auto& a : amplitudes) report.terminal_populations.push_back(std::norm(a));
  const double dev = max_deviation(report.terminal_populations, share);
  const double mode_population =
      std::norm(spectrum.eigenvectors.col(mi).dot(loaded.tail(spectrum.eigenvectors.rows())));
  std::ostringstream msg;
  msg.precision(6);
  msg << "stage 1 " << t1 << " (analytic " << t1_analytic << ", mode population "
      << mode_population << "), stage 2 " << t2 << " (analytic " << t2_analytic
      << "), max |p - 1/" << m << "| = " << dev;
  report.message = msg.str();
  report.success = dev <= options.population_tolerance;
  return report;
}

}  // namespace spinnet
