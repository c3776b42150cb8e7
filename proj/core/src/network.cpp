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
#include "spinnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include "spinnet/errors.hpp"

namespace spinnet {

SpinNetwork::SpinNetwork(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {}

SpinNetwork SpinNetwork::chain(std::size_t node_count) {
  if (node_count == 0) throw ConstructionError("chain: node count must be at least 1");
  std::vector<Edge> edges;
  for (std::size_t n = 1; n < node_count; ++n) edges.push_back({n, n + 1, 1.0});
  return SpinNetwork(node_count, std::move(edges));
}

SpinNetwork SpinNetwork::cycle(std::size_t node_count) {
  if (node_count < 3) throw ConstructionError("cycle: node count must be at least 3");
  std::vector<Edge> edges;
  for (std::size_t n = 1; n < node_count; ++n) edges.push_back({n, n + 1, 1.0});
  edges.push_back({1, node_count, 1.0});
  return from_edge_list(node_count, std::move(edges));
}

SpinNetwork SpinNetwork::from_edge_list(std::size_t node_count, std::vector<Edge> edges) {
  if (node_count == 0) throw ConstructionError("network: node count must be at least 1");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges) {
    if (e.first < 1 || e.first > node_count || e.second < 1 || e.second > node_count) {
      std::ostringstream msg;
      msg << "network: edge (" << e.first << ", " << e.second << ") has an endpoint outside [1, "
          << node_count << "]";
      throw ConstructionError(msg.str());
    }
    if (e.first == e.second) {
      std::ostringstream msg;
      msg << "network: self-loop at node " << e.first;
      throw ConstructionError(msg.str());
    }
    if (!std::isfinite(e.weight)) {
      std::ostringstream msg;
      msg << "network: edge (" << e.first << ", " << e.second << ") has a non-finite weight";
      throw ConstructionError(msg.str());
    }
    if (e.first > e.second) std::swap(e.first, e.second);
    if (!seen.emplace(e.first, e.second).second) {
      std::ostringstream msg;
      msg << "network: duplicate edge (" << e.first << ", " << e.second << ")";
      throw ConstructionError(msg.str());
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.first, a.second) < std::pair(b.first, b.second);
  });
  return SpinNetwork(node_count, std::move(edges));
}

RMatrix SpinNetwork::adjacency() const {
  const auto n = static_cast<Eigen::Index>(node_count_);
  RMatrix a = RMatrix::Zero(n, n);
  for (const auto& e : edges_) {
    const auto i = static_cast<Eigen::Index>(e.first - 1);
    const auto j = static_cast<Eigen::Index>(e.second - 1);
    a(i, j) = e.weight;
    a(j, i) = e.weight;
  }
  return a;
}

bool SpinNetwork::is_connected() const {
  std::vector<std::vector<std::size_t>> neighbours(node_count_);
  for (const auto& e : edges_) {
    neighbours[e.first - 1].push_back(e.second - 1);
    neighbours[e.second - 1].push_back(e.first - 1);
  }
  std::vector<bool> visited(node_count_, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  visited[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto v = frontier.front();
    frontier.pop();
    for (auto w : neighbours[v]) {
      if (!visited[w]) {
        visited[w] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == node_count_;
}

Terminal::Terminal(std::string label, std::size_t attach_node, Complex coupling, double field,
                   double epsilon)
    : label_(std::move(label)), attach_node_(attach_node), epsilon_(epsilon), field_(field) {
  if (label_.empty()) throw ConstructionError("terminal: label must not be empty");
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_)) {
    throw ConstructionError("terminal '" + label_ + "': epsilon must be positive and finite");
  }
  if (!std::isfinite(coupling.real()) || !std::isfinite(coupling.imag()) ||
      !std::isfinite(field_)) {
    throw ConstructionError("terminal '" + label_ + "': coupling and field must be finite");
  }
  if (std::abs(coupling) == 0.0) {
    throw ConstructionError("terminal '" + label_ + "': coupling must be non-zero");
  }
  if (attach_node_ < 1) throw ConstructionError("terminal '" + label_ + "': nodes are 1-based");
  xi_ = coupling / epsilon_;
}

Terminal Terminal::with_field(double field) const {
  return Terminal(label_, attach_node_, coupling(), field, epsilon_);
}

Terminal Terminal::with_coupling(Complex coupling) const {
  return Terminal(label_, attach_node_, coupling, field_, epsilon_);
}

SystemSpec::SystemSpec(SpinNetwork network, std::vector<Terminal> terminals)
    : network_(std::move(network)), terminals_(std::move(terminals)) {
  std::set<std::string> labels;
  for (const auto& t : terminals_) {
    if (t.attach_node() > network_.node_count()) {
      std::ostringstream msg;
      msg << "terminal '" << t.label() << "': node " << t.attach_node() << " is outside [1, "
          << network_.node_count() << "]";
      throw ConstructionError(msg.str());
    }
    if (!labels.insert(t.label()).second) {
      throw ConstructionError("terminal label '" + t.label() + "' is not unique");
    }
    if (t.label().rfind("node", 0) == 0) {
      throw ConstructionError("terminal label '" + t.label() +
                              "' clashes with the reserved network prefix 'node'");
    }
  }
}

const Terminal& SystemSpec::terminal(const std::string& label) const {
  return terminals_[index_of(label)];
}

std::optional<std::size_t> SystemSpec::find(const std::string& label) const {
  for (std::size_t i = 0; i < terminals_.size(); ++i) {
    if (terminals_[i].label() == label) return i;
  }
  return std::nullopt;
}

std::size_t SystemSpec::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw ConstructionError("unknown terminal label '" + label + "'");
}

std::size_t SystemSpec::node_index(std::size_t node) const {
  if (node < 1 || node > network_.node_count()) {
    std::ostringstream msg;
    msg << "node " << node << " is outside [1, " << network_.node_count() << "]";
    throw ConstructionError(msg.str());
  }
  return terminals_.size() + node - 1;
}

std::vector<std::string> SystemSpec::basis_labels() const {
  std::vector<std::string> labels;
  labels.reserve(dimension());
  for (const auto& t : terminals_) labels.push_back(t.label());
  for (std::size_t n = 1; n <= network_.node_count(); ++n) labels.push_back("node" + std::to_string(n));
  return labels;
}

SystemSpec SystemSpec::with_terminal(std::size_t index, Terminal terminal) const {
  auto terminals = terminals_;
  terminals.at(index) = std::move(terminal);
  return SystemSpec(network_, std::move(terminals));
}

SystemSpec SystemSpec::restricted_to(std::span<const std::string> labels) const {
  std::vector<Terminal> kept;
  for (const auto& l : labels) kept.push_back(terminal(l));
  return SystemSpec(network_, std::move(kept));
}

CMatrix full_hamiltonian(const SystemSpec& spec) {
  const auto m = static_cast<Eigen::Index>(spec.terminal_count());
  const auto dim = static_cast<Eigen::Index>(spec.dimension());
  CMatrix h = CMatrix::Zero(dim, dim);
  h.bottomRightCorner(dim - m, dim - m) = spec.network().adjacency().cast<Complex>();
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto& t = spec.terminal(static_cast<std::size_t>(a));
    const auto n = static_cast<Eigen::Index>(spec.node_index(t.attach_node()));
    h(a, a) = t.field();
    h(a, n) = t.coupling();
    h(n, a) = std::conj(t.coupling());
  }
  return h;
}

CVector basis_state(std::size_t dimension, std::size_t index) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dimension));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

}  // namespace spinnet
