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

// Reference formulas written out independently of the library, plus the
// standard scenarios shared by unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinnet/network.hpp"

namespace spinnet::testing {

inline constexpr double kPiRef = std::numbers::pi;

/// Path graph: lambda_k = 2 cos(pi k / (N+1)), k = 1..N (descending in k).
inline double chain_eigenvalue(std::size_t n, std::size_t k) {
  return 2.0 * std::cos(kPiRef * static_cast<double>(k) / static_cast<double>(n + 1));
}

/// <node|k> for the path graph, nodes 1-based.
inline double chain_amplitude(std::size_t n, std::size_t k, std::size_t node) {
  const double scale = std::sqrt(2.0 / static_cast<double>(n + 1));
  return scale * std::sin(kPiRef * static_cast<double>(k * node) / static_cast<double>(n + 1));
}

inline double cycle_eigenvalue(std::size_t n, std::size_t k) {
  return 2.0 * std::cos(2.0 * kPiRef * static_cast<double>(k) / static_cast<double>(n));
}

/// Eigenvalues with a real orthonormal eigenbasis for chain or cycle, built
/// from the sine/cosine formulas. Columns are sorted by ascending eigenvalue.
struct ReferenceSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

inline ReferenceSpectrum reference_chain(std::size_t n) {
  std::vector<std::pair<double, Eigen::VectorXd>> modes;
  for (std::size_t k = 1; k <= n; ++k) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (std::size_t j = 1; j <= n; ++j) v(static_cast<Eigen::Index>(j - 1)) = chain_amplitude(n, k, j);
    modes.emplace_back(chain_eigenvalue(n, k), v);
  }
  std::sort(modes.begin(), modes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  ReferenceSpectrum r{Eigen::VectorXd(static_cast<Eigen::Index>(n)),
                      Eigen::MatrixXd(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
  for (std::size_t i = 0; i < n; ++i) {
    r.values(static_cast<Eigen::Index>(i)) = modes[i].first;
    r.vectors.col(static_cast<Eigen::Index>(i)) = modes[i].second;
  }
  return r;
}

inline ReferenceSpectrum reference_cycle(std::size_t n) {
  std::vector<std::pair<double, Eigen::VectorXd>> modes;
  const auto nn = static_cast<Eigen::Index>(n);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    Eigen::VectorXd c(nn), s(nn);
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = 2.0 * kPiRef * static_cast<double>(k * j) / static_cast<double>(n);
      c(static_cast<Eigen::Index>(j)) = std::cos(angle);
      s(static_cast<Eigen::Index>(j)) = std::sin(angle);
    }
    modes.emplace_back(cycle_eigenvalue(n, k), c.normalized());
    const bool paired = k != 0 && 2 * k != n;
    if (paired) modes.emplace_back(cycle_eigenvalue(n, k), s.normalized());
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  ReferenceSpectrum r{Eigen::VectorXd(nn), Eigen::MatrixXd(nn, nn)};
  for (std::size_t i = 0; i < n; ++i) {
    r.values(static_cast<Eigen::Index>(i)) = modes[i].first;
    r.vectors.col(static_cast<Eigen::Index>(i)) = modes[i].second;
  }
  return r;
}

/// Chain of 30, terminals on nodes 2 and 13 tuned to the fifth mode from the top.
inline SystemSpec fig1_spec(double coupling_s, double coupling_d) {
  const double lambda = chain_eigenvalue(30, 5);
  return SystemSpec(SpinNetwork::chain(30), {Terminal("s", 2, coupling_s, lambda),
                                             Terminal("d", 13, coupling_d, lambda)});
}

/// sin(10 pi/31) / sin(3 pi/31): g_s / g_d for the fifth chain mode at nodes 2 and 13.
inline double fig1_ratio() {
  return std::sin(10.0 * kPiRef / 31.0) / std::sin(3.0 * kPiRef / 31.0);
}

inline SystemSpec fig2_spec(double omega_u) {
  return SystemSpec(SpinNetwork::cycle(21), {Terminal("s", 3, 0.1, -0.9), Terminal("u", 10, 0.1, omega_u),
                                             Terminal("d", 18, 0.1, -0.9)});
}

inline SystemSpec fig3_spec() {
  return SystemSpec(SpinNetwork::cycle(21), {Terminal("s1", 3, 0.1, -0.9), Terminal("s2", 12, 0.1, -0.9),
                                             Terminal("s3", 15, 0.1, -0.9)});
}

/// Terminals on the two ends of an even chain with equal coupling and field.
inline SystemSpec end_to_end_chain(std::size_t n, double coupling, double omega) {
  return SystemSpec(SpinNetwork::chain(n),
                    {Terminal("s", 1, coupling, omega), Terminal("d", n, coupling, omega)});
}

}  // namespace spinnet::testing
