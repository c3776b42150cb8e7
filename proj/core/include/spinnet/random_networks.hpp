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
#include <random>

#include "spinnet/network.hpp"

namespace spinnet {

/// Erdos-Renyi G(n, p) with unit weights, resampled until connected.
SpinNetwork random_connected_network(std::mt19937_64& rng, std::size_t node_count,
                                     double edge_probability);

}  // namespace spinnet
