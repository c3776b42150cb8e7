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
#include "spinnet/random_networks.hpp"

#include <vector>

#include "spinnet/errors.hpp"

namespace spinnet {

SpinNetwork random_connected_network(std::mt19937_64& rng, std::size_t node_count,
                                     double edge_probability) {
  if (node_count == 0) throw ConstructionError("random network: node count must be positive");
  if (!(edge_probability > 0.0) && node_count > 1) {
    throw ConstructionError("random network: edge probability must be positive");
  }
  std::bernoulli_distribution coin(edge_probability);
  for (;;) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= node_count; ++i) {
      for (std::size_t j = i + 1; j <= node_count; ++j) {
        if (coin(rng)) edges.push_back({i, j, 1.0});
      }
    }
    auto network = SpinNetwork::from_edge_list(node_count, std::move(edges));
    if (network.is_connected()) return network;
  }
}

}  // namespace spinnet
