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
#include "spinnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string_view>

#include <boost/math/tools/minima.hpp>

#include "spinnet/errors.hpp"

namespace spinnet {
namespace {

void require_state(const CVector& psi0, std::size_t dimension) {
  if (static_cast<std::size_t>(psi0.size()) != dimension) {
    std::ostringstream msg;
    msg << "state has dimension " << psi0.size() << " but the Hamiltonian has " << dimension;
    throw ContractViolation(msg.str());
  }
  const double norm = psi0.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "state is not normalized (norm " << norm << ")";
    throw ContractViolation(msg.str());
  }
}

std::size_t matrix_hash(const CMatrix& m) {
  const std::string_view bytes(reinterpret_cast<const char*>(m.data()),
                               static_cast<std::size_t>(m.size()) * sizeof(Complex));
  return std::hash<std::string_view>{}(bytes) ^ (static_cast<std::size_t>(m.rows()) << 1);
}

}  // namespace

Propagator::Propagator(const CMatrix& hamiltonian)
    : hamiltonian_(hamiltonian), spectrum_(eigendecompose(hamiltonian)) {}

CVector Propagator::to_eigenbasis(const CVector& psi0) const {
  require_state(psi0, dimension());
  return spectrum_.eigenvectors.adjoint() * psi0;
}

CVector Propagator::evolve_coefficients(const CVector& coefficients, double t) const {
  CVector phased(coefficients.size());
  for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
    phased(k) = std::polar(1.0, -spectrum_.eigenvalues(k) * t) * coefficients(k);
  }
  return spectrum_.eigenvectors * phased;
}

CVector Propagator::evolve(const CVector& psi0, double t) const {
  const CVector coefficients = to_eigenbasis(psi0);  // validates psi0
  if (t == 0.0) return psi0;
  return evolve_coefficients(coefficients, t);
}

double Propagator::energy(const CVector& psi) const {
  return psi.dot(hamiltonian_ * psi).real();
}

std::shared_ptr<const Propagator> PropagatorCache::get(const CMatrix& hamiltonian) {
  const auto key = matrix_hash(hamiltonian);
  auto lookup = [&]() -> std::shared_ptr<const Propagator> {
    auto [first, last] = entries_.equal_range(key);
    for (auto it = first; it != last; ++it) {
      const auto& h = it->second->hamiltonian();
      if (h.rows() == hamiltonian.rows() && h.cols() == hamiltonian.cols() && h == hamiltonian) {
        return it->second;
      }
    }
    return nullptr;
  };
  {
    std::shared_lock lock(mutex_);
    if (auto hit = lookup()) return hit;
  }
  auto fresh = std::make_shared<const Propagator>(hamiltonian);
  std::unique_lock lock(mutex_);
  if (auto hit = lookup()) return hit;
  entries_.emplace(key, fresh);
  return fresh;
}

std::size_t PropagatorCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

CVector evolve(const CMatrix& hamiltonian, const CVector& psi0, double t) {
  return Propagator(hamiltonian).evolve(psi0, t);
}

std::size_t Trajectory::column(const std::string& label) const {
  auto it = std::find(basis_labels.begin(), basis_labels.end(), label);
  if (it == basis_labels.end()) throw ConstructionError("trajectory has no column '" + label + "'");
  return static_cast<std::size_t>(it - basis_labels.begin());
}

double Trajectory::norm_drift() const {
  double drift = 0.0;
  for (Eigen::Index k = 0; k < states.cols(); ++k) {
    drift = std::max(drift, std::abs(states.col(k).norm() - 1.0));
  }
  return drift;
}

double Trajectory::energy_drift(const CMatrix& hamiltonian) const {
  if (states.cols() == 0) return 0.0;
  const double e0 = states.col(0).dot(hamiltonian * states.col(0)).real();
  double drift = 0.0;
  for (Eigen::Index k = 1; k < states.cols(); ++k) {
    drift = std::max(drift, std::abs(states.col(k).dot(hamiltonian * states.col(k)).real() - e0));
  }
  return drift;
}

Trajectory trajectory(const Propagator& propagator, const CVector& psi0, double t_max,
                      std::size_t n_points, std::vector<std::string> basis_labels) {
  if (n_points < 2) throw ContractViolation("trajectory: n_points must be at least 2");
  if (!(t_max > 0.0)) throw ContractViolation("trajectory: t_max must be positive");
  const auto dim = static_cast<Eigen::Index>(propagator.dimension());
  if (basis_labels.empty()) {
    for (Eigen::Index i = 0; i < dim; ++i) basis_labels.push_back("b" + std::to_string(i));
  }
  if (static_cast<Eigen::Index>(basis_labels.size()) != dim) {
    throw ContractViolation("trajectory: one basis label per dimension is required");
  }
  const CVector coefficients = propagator.to_eigenbasis(psi0);

  Trajectory traj;
  traj.basis_labels = std::move(basis_labels);
  traj.times.resize(n_points);
  traj.states.resize(dim, static_cast<Eigen::Index>(n_points));
  traj.populations.resize(static_cast<Eigen::Index>(n_points), dim);
  const double step = t_max / static_cast<double>(n_points - 1);
  for (std::size_t k = 0; k < n_points; ++k) {
    const double t = k + 1 == n_points ? t_max : step * static_cast<double>(k);
    traj.times[k] = t;
    const auto col = static_cast<Eigen::Index>(k);
    traj.states.col(col) = k == 0 ? psi0 : propagator.evolve_coefficients(coefficients, t);
    traj.populations.row(col) = traj.states.col(col).cwiseAbs2().transpose();
  }
  return traj;
}

Trajectory trajectory(const SystemSpec& spec, const std::string& source_label, double t_max,
                      std::size_t n_points) {
  const Propagator propagator(full_hamiltonian(spec));
  return trajectory(propagator, basis_state(spec.dimension(), spec.index_of(source_label)), t_max,
                    n_points, spec.basis_labels());
}

double transfer_fidelity(const SystemSpec& spec, const std::string& source_label,
                         const std::string& dest_label, double t) {
  const auto source = spec.index_of(source_label);
  const auto dest = spec.index_of(dest_label);
  const Propagator propagator(full_hamiltonian(spec));
  const CVector psi = propagator.evolve(basis_state(spec.dimension(), source), t);
  return std::clamp(std::norm(psi(static_cast<Eigen::Index>(dest))), 0.0, 1.0);
}

namespace detail {

Peak refine_maximum(const std::function<double(double)>& f, double lo, double hi, double guess_t,
                    double guess_value, double tolerance) {
  if (!(hi > lo)) return {guess_t, guess_value};
  const double scale = std::max({std::abs(lo), std::abs(hi), tolerance});
  int bits = static_cast<int>(std::ceil(std::log2(scale / tolerance))) + 2;
  bits = std::clamp(bits, 8, std::numeric_limits<double>::digits / 2);
  const auto [t, neg] =
      boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, lo, hi, bits);
  if (-neg > guess_value) return {t, -neg};
  return {guess_t, guess_value};
}

}  // namespace detail

Peak peak_population(const Propagator& propagator, const CVector& psi0, std::size_t target,
                     double t_max, std::size_t coarse_points) {
  if (!(t_max > 0.0)) throw ContractViolation("peak search: t_max must be positive");
  if (target >= propagator.dimension()) throw ContractViolation("peak search: target out of range");
  const CVector coefficients = propagator.to_eigenbasis(psi0);
  const auto row = propagator.spectrum().eigenvectors.row(static_cast<Eigen::Index>(target));
  const RVector& lambda = propagator.spectrum().eigenvalues;
  auto population = [&](double t) {
    Complex amp = 0.0;
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
      amp += row(k) * std::polar(1.0, -lambda(k) * t) * coefficients(k);
    }
    return std::norm(amp);
  };
  return maximize_on_interval(population, 0.0, t_max, coarse_points);
}

Peak peak_transfer(const SystemSpec& spec, const std::string& source_label,
                   const std::string& dest_label, double t_max, std::size_t coarse_points) {
  const Propagator propagator(full_hamiltonian(spec));
  return peak_population(propagator, basis_state(spec.dimension(), spec.index_of(source_label)),
                         spec.index_of(dest_label), t_max, coarse_points);
}

}  // namespace spinnet
