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
#include <limits>
#include <set>
#include <sstream>

#include "spinnet/errors.hpp"
#include "spinnet/protocol.hpp"

namespace spinnet {

double predicted_transfer_time(const SpectralDecomposition& spectrum, std::size_t source_node,
                               std::size_t user_node, Complex coupling, double omega) {
  const auto s = static_cast<Eigen::Index>(source_node - 1);
  const auto u = static_cast<Eigen::Index>(user_node - 1);
  Complex sum = 0.0;
  for (Eigen::Index k = 0; k < spectrum.eigenvalues.size(); ++k) {
    sum += spectrum.eigenvectors(s, k) * std::conj(spectrum.eigenvectors(u, k)) /
           (spectrum.eigenvalues(k) - omega);
  }
  // Equal fields: the symmetrized second-order exchange reduces to one sum.
  const double off = std::norm(coupling) * std::abs(sum);
  return off > 0.0 ? kPi / (2.0 * off) : std::numeric_limits<double>::infinity();
}

FrequencyPlan frequency_plan(const PlanRequest& request) {
  const auto& c = request.constraints;
  const auto& network = request.network;
  if (request.users.empty()) throw ConstructionError("frequency_plan: no users to place");
  if (!(c.min_mutual_separation >= 0.0) || !(c.min_spectrum_separation > 0.0)) {
    throw ConstructionError(
        "frequency_plan: separations must be non-negative (spectrum separation positive)");
  }
  auto check_node = [&](std::size_t node, const std::string& who) {
    if (node < 1 || node > network.node_count()) {
      std::ostringstream msg;
      msg << "frequency_plan: " << who << " node " << node << " is outside [1, "
          << network.node_count() << "]";
      throw ConstructionError(msg.str());
    }
  };
  check_node(request.source_node, "source");
  for (const auto& [label, node] : request.users) check_node(node, "user '" + label + "'");

  const auto spectrum = network_spectrum(network);
  const RVector& lambda = spectrum.eigenvalues;
  const double sep = c.min_spectrum_separation;
  const double slack = 1e-12;
  auto admissible = [&](double omega) {
    return nearest_eigenvalue(spectrum, omega).distance >= sep - slack;
  };

  // Exclusion-interval edges plus a uniform grid over the spectrum hull.
  std::set<double> candidates;
  for (const auto& cls : spectrum.degeneracy_classes) {
    const double value = lambda(static_cast<Eigen::Index>(cls.front()));
    for (double omega : {value - sep, value + sep}) {
      if (admissible(omega)) candidates.insert(omega);
    }
  }
  const double step = std::max(1e-4, 0.25 * std::min(sep, c.min_mutual_separation > 0.0
                                                              ? c.min_mutual_separation
                                                              : sep));
  const double lo = lambda.minCoeff() - 2.0;
  const double hi = lambda.maxCoeff() + 2.0;
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double omega = lo + step * static_cast<double>(i);
    if (admissible(omega)) candidates.insert(omega);
  }
  if (candidates.empty()) {
    std::ostringstream msg;
    msg << "frequency_plan: min_spectrum_separation " << sep
        << " leaves no admissible field anywhere near the spectrum";
    throw PlanningError(msg.str());
  }

  FrequencyPlan plan;
  plan.min_eigenvalue_separation = std::numeric_limits<double>::infinity();
  plan.min_mutual_separation = std::numeric_limits<double>::infinity();
  std::vector<double> taken;
  for (const auto& [label, node] : request.users) {
    std::vector<std::pair<double, double>> ranked;  // time, omega
    for (double omega : candidates) {
      const double t =
          predicted_transfer_time(spectrum, request.source_node, node, request.coupling, omega);
      if (std::isfinite(t)) ranked.emplace_back(t, omega);
    }
    std::sort(ranked.begin(), ranked.end());
    bool placed = false;
    for (const auto& [t, omega] : ranked) {
      const bool clear = std::all_of(taken.begin(), taken.end(), [&](double other) {
        return std::abs(other - omega) >= c.min_mutual_separation - slack;
      });
      if (!clear) continue;
      if (c.max_time > 0.0 && t > c.max_time) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "frequency_plan: binding constraint max_time: user '" << label
            << "' needs at least " << t << " at its fastest admissible field " << omega
            << " (max_time " << c.max_time << ")";
        throw PlanningError(msg.str());
      }
      plan.assignments[label] = omega;
      plan.predicted_times[label] = t;
      plan.worst_predicted_time = std::max(plan.worst_predicted_time, t);
      plan.min_eigenvalue_separation =
          std::min(plan.min_eigenvalue_separation, nearest_eigenvalue(spectrum, omega).distance);
      for (double other : taken) {
        plan.min_mutual_separation = std::min(plan.min_mutual_separation, std::abs(other - omega));
      }
      taken.push_back(omega);
      placed = true;
      break;
    }
    if (!placed) {
      std::ostringstream msg;
      msg << "frequency_plan: binding constraint min_mutual_separation: no admissible field for "
             "user '"
          << label << "' keeps " << c.min_mutual_separation << " from the users already placed";
      throw PlanningError(msg.str());
    }
  }
  return plan;
}

}  // namespace spinnet
