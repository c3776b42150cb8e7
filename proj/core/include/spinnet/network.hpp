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

#include "spinnet/types.hpp"

namespace spinnet {

/// Undirected weighted edge between two network nodes. Nodes are 1-based.
struct Edge {
  std::size_t first = 0;
  std::size_t second = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected graph of network spins. Immutable once built.
///
/// Edges are normalized so that first < second and kept sorted; the
/// adjacency matrix is the single-excitation network Hamiltonian, with
/// each edge weight used directly as the hopping amplitude.
class SpinNetwork {
 public:
  /// Path graph 1-2-...-N with unit weights.
  static SpinNetwork chain(std::size_t node_count);
  /// Ring of N >= 3 nodes with unit weights.
  static SpinNetwork cycle(std::size_t node_count);
  /// Validates endpoints, rejects self-loops, duplicates and non-finite weights.
  static SpinNetwork from_edge_list(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return node_count_; }
  std::span<const Edge> edges() const { return edges_; }

  /// Real symmetric N x N adjacency matrix (0-based rows).
  RMatrix adjacency() const;
  bool is_connected() const;

 private:
  SpinNetwork(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count_;
  std::vector<Edge> edges_;
};

inline bool is_connected(const SpinNetwork& network) { return network.is_connected(); }

/// A user spin weakly coupled to one network node.
///
/// The coupling is stored as a scale epsilon and a complex xi; the
/// matrix element that enters the Hamiltonian is their product.
class Terminal {
 public:
  /// `coupling` is the product epsilon * xi. `epsilon` only splits it.
  Terminal(std::string label, std::size_t attach_node, Complex coupling, double field,
           double epsilon = 1.0);

  const std::string& label() const { return label_; }
  std::size_t attach_node() const { return attach_node_; }
  Complex coupling() const { return epsilon_ * xi_; }
  double epsilon() const { return epsilon_; }
  Complex xi() const { return xi_; }
  double field() const { return field_; }

  Terminal with_field(double field) const;
  Terminal with_coupling(Complex coupling) const;

 private:
  std::string label_;
  std::size_t attach_node_;
  double epsilon_;
  Complex xi_;
  double field_;
};

/// Network plus an ordered list of terminals.
///
/// Basis ordering of every matrix and state built from a SystemSpec:
/// terminals in declaration order, then network nodes 1..N.
class SystemSpec {
 public:
  SystemSpec(SpinNetwork network, std::vector<Terminal> terminals);

  const SpinNetwork& network() const { return network_; }
  std::span<const Terminal> terminals() const { return terminals_; }
  const Terminal& terminal(std::size_t index) const { return terminals_.at(index); }
  const Terminal& terminal(const std::string& label) const;

  std::size_t terminal_count() const { return terminals_.size(); }
  std::size_t dimension() const { return terminals_.size() + network_.node_count(); }

  /// Basis position of a terminal; throws ConstructionError for unknown labels.
  std::size_t index_of(const std::string& label) const;
  std::optional<std::size_t> find(const std::string& label) const;
  /// Basis position of network node n (1-based).
  std::size_t node_index(std::size_t node) const;

  /// Terminal labels followed by "node1".."nodeN".
  std::vector<std::string> basis_labels() const;

  SystemSpec with_terminal(std::size_t index, Terminal terminal) const;
  /// Keeps only the named terminals, in the given order.
  SystemSpec restricted_to(std::span<const std::string> labels) const;

 private:
  SpinNetwork network_;
  std::vector<Terminal> terminals_;
};

/// Single-excitation Hamiltonian of network plus terminals, Hermitian by construction.
CMatrix full_hamiltonian(const SystemSpec& spec);

/// Unit vector on one basis state.
CVector basis_state(std::size_t dimension, std::size_t index);

}  // namespace spinnet
