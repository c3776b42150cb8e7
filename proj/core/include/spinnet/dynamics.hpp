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

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "spinnet/network.hpp"
#include "spinnet/spectral.hpp"
#include "spinnet/types.hpp"

namespace spinnet {

/// exp(-iHt) through a cached spectral decomposition. Immutable, so one
/// instance can be shared by concurrent readers.
class Propagator {
 public:
  explicit Propagator(const CMatrix& hamiltonian);

  std::size_t dimension() const { return static_cast<std::size_t>(hamiltonian_.rows()); }
  const CMatrix& hamiltonian() const { return hamiltonian_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }

  /// Requires ||psi0|| = 1 within 1e-10.
  CVector evolve(const CVector& psi0, double t) const;

  /// psi0 in the eigenbasis; evolve_coefficients() then skips one product.
  CVector to_eigenbasis(const CVector& psi0) const;
  CVector evolve_coefficients(const CVector& coefficients, double t) const;

  double energy(const CVector& psi) const;

 private:
  CMatrix hamiltonian_;
  SpectralDecomposition spectrum_;
};

/// Read-mostly cache of propagators keyed on matrix contents.
class PropagatorCache {
 public:
  std::shared_ptr<const Propagator> get(const CMatrix& hamiltonian);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_multimap<std::size_t, std::shared_ptr<const Propagator>> entries_;
};

CVector evolve(const CMatrix& hamiltonian, const CVector& psi0, double t);

/// States and populations on a uniform time grid including both endpoints.
struct Trajectory {
  std::vector<double> times;
  CMatrix states;       ///< dimension x time points
  RMatrix populations;  ///< time points x dimension
  std::vector<std::string> basis_labels;

  std::size_t size() const { return times.size(); }
  std::size_t column(const std::string& label) const;
  /// Largest | ||psi(t)|| - 1 | over the grid.
  double norm_drift() const;
  /// Largest |<H>(t) - <H>(0)| over the grid.
  double energy_drift(const CMatrix& hamiltonian) const;
};

Trajectory trajectory(const Propagator& propagator, const CVector& psi0, double t_max,
                      std::size_t n_points, std::vector<std::string> basis_labels = {});
/// Starts from the named terminal.
Trajectory trajectory(const SystemSpec& spec, const std::string& source_label, double t_max,
                      std::size_t n_points);

/// |<d| exp(-iHt) |s>|^2.
double transfer_fidelity(const SystemSpec& spec, const std::string& source_label,
                         const std::string& dest_label, double t);

struct Peak {
  double time = 0.0;
  double value = 0.0;
};

inline constexpr std::size_t kDefaultCoarsePoints = 2000;

/// Maximum of an arbitrary function on [t_min, t_max]: coarse scan then
/// bracketed refinement to 1e-6 (t_max - t_min).
template <typename F>
Peak maximize_on_interval(F&& f, double t_min, double t_max, std::size_t coarse_points);

/// Largest population of basis state `target` over [0, t_max].
Peak peak_population(const Propagator& propagator, const CVector& psi0, std::size_t target,
                     double t_max, std::size_t coarse_points = kDefaultCoarsePoints);

Peak peak_transfer(const SystemSpec& spec, const std::string& source_label,
                   const std::string& dest_label, double t_max,
                   std::size_t coarse_points = kDefaultCoarsePoints);

namespace detail {
Peak refine_maximum(const std::function<double(double)>& f, double lo, double hi, double guess_t,
                    double guess_value, double tolerance);
}

template <typename F>
Peak maximize_on_interval(F&& f, double t_min, double t_max, std::size_t coarse_points) {
  if (coarse_points < 2) coarse_points = 2;
  const double step = (t_max - t_min) / static_cast<double>(coarse_points - 1);
  std::size_t best = 0;
  double best_value = f(t_min);
  for (std::size_t i = 1; i < coarse_points; ++i) {
    const double v = f(t_min + step * static_cast<double>(i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = t_min + step * static_cast<double>(best == 0 ? 0 : best - 1);
  const double hi = t_min + step * static_cast<double>(std::min(best + 1, coarse_points - 1));
  return detail::refine_maximum(std::function<double(double)>(f), lo, hi,
                                t_min + step * static_cast<double>(best), best_value,
                                1e-6 * (t_max - t_min));
}

}  // namespace spinnet
