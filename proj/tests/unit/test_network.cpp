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

#include <gtest/gtest.h>

#include "spinnet/errors.hpp"
#include "spinnet/network.hpp"

namespace spinnet {
namespace {

TEST(SpinNetwork, ChainHasPathEdges) {
  const auto chain = SpinNetwork::chain(4);
  ASSERT_EQ(chain.edges().size(), 3u);
  EXPECT_EQ(chain.edges()[0], (Edge{1, 2, 1.0}));
  EXPECT_EQ(chain.edges()[2], (Edge{3, 4, 1.0}));
  EXPECT_TRUE(chain.is_connected());
}

TEST(SpinNetwork, CycleClosesTheRing) {
  const auto ring = SpinNetwork::cycle(5);
  const RMatrix a = ring.adjacency();
  EXPECT_EQ(a(0, 4), 1.0);
  EXPECT_EQ(a(4, 0), 1.0);
  EXPECT_EQ(a.sum(), 10.0);
  EXPECT_THROW(SpinNetwork::cycle(2), ConstructionError);
}

TEST(SpinNetwork, SingleNodeChainIsValid) {
  const auto one = SpinNetwork::chain(1);
  EXPECT_EQ(one.node_count(), 1u);
  EXPECT_TRUE(one.edges().empty());
  EXPECT_TRUE(one.is_connected());
}

TEST(SpinNetwork, EdgeListIsNormalizedAndSorted) {
  const auto net = SpinNetwork::from_edge_list(4, {{3, 2, 0.5}, {2, 1, 1.0}, {4, 3, 2.0}});
  ASSERT_EQ(net.edges().size(), 3u);
  EXPECT_EQ(net.edges()[0], (Edge{1, 2, 1.0}));
  EXPECT_EQ(net.edges()[1], (Edge{2, 3, 0.5}));
  EXPECT_EQ(net.adjacency()(2, 1), 0.5);
}

TEST(SpinNetwork, EdgeListRejectsBadInput) {
  EXPECT_THROW(SpinNetwork::from_edge_list(3, {{1, 1, 1.0}}), ConstructionError);
  EXPECT_THROW(SpinNetwork::from_edge_list(3, {{1, 4, 1.0}}), ConstructionError);
  EXPECT_THROW(SpinNetwork::from_edge_list(3, {{1, 2, 1.0}, {2, 1, 1.0}}), ConstructionError);
  EXPECT_THROW(SpinNetwork::from_edge_list(3, {{1, 2, std::nan("")}}), ConstructionError);
  EXPECT_THROW(SpinNetwork::from_edge_list(0, {}), ConstructionError);
}

TEST(SpinNetwork, DetectsDisconnection) {
  const auto split = SpinNetwork::from_edge_list(4, {{1, 2, 1.0}, {3, 4, 1.0}});
  EXPECT_FALSE(is_connected(split));
}

TEST(Terminal, StoresCouplingAsEpsilonTimesXi) {
  const Terminal t("s", 2, Complex(0.01, 0.02), 1.5, 0.01);
  EXPECT_DOUBLE_EQ(t.epsilon(), 0.01);
  EXPECT_NEAR(std::abs(t.xi() - Complex(1.0, 2.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(t.coupling() - Complex(0.01, 0.02)), 0.0, 1e-16);
  EXPECT_EQ(t.with_field(-0.3).field(), -0.3);
}

TEST(Terminal, RejectsZeroCouplingAndEmptyLabel) {
  EXPECT_THROW(Terminal("s", 1, 0.0, 0.0), ConstructionError);
  EXPECT_THROW(Terminal("", 1, 0.1, 0.0), ConstructionError);
  EXPECT_THROW(Terminal("s", 0, 0.1, 0.0), ConstructionError);
}

TEST(SystemSpec, BasisPutsTerminalsFirst) {
  const SystemSpec spec(SpinNetwork::chain(3), {Terminal("s", 1, 0.1, 0.0), Terminal("d", 3, 0.2, 0.0)});
  EXPECT_EQ(spec.dimension(), 5u);
  const std::vector<std::string> expected{"s", "d", "node1", "node2", "node3"};
  EXPECT_EQ(spec.basis_labels(), expected);
  EXPECT_EQ(spec.index_of("d"), 1u);
  EXPECT_EQ(spec.node_index(1), 2u);
  EXPECT_FALSE(spec.find("x").has_value());
  EXPECT_THROW(spec.index_of("x"), ConstructionError);
}

TEST(SystemSpec, ValidatesTerminals) {
  EXPECT_THROW(SystemSpec(SpinNetwork::chain(30), {Terminal("s", 31, 0.1, 0.0)}), ConstructionError);
  EXPECT_THROW(SystemSpec(SpinNetwork::chain(3), {Terminal("s", 1, 0.1, 0.0), Terminal("s", 2, 0.1, 0.0)}),
               ConstructionError);
  EXPECT_THROW(SystemSpec(SpinNetwork::chain(3), {Terminal("node1", 1, 0.1, 0.0)}), ConstructionError);
}

TEST(SystemSpec, RestrictKeepsRequestedOrder) {
  const SystemSpec spec(SpinNetwork::chain(4), {Terminal("a", 1, 0.1, 0.0), Terminal("b", 2, 0.1, 0.0),
                                                Terminal("c", 4, 0.1, 0.0)});
  const std::vector<std::string> keep{"c", "a"};
  const auto sub = spec.restricted_to(keep);
  ASSERT_EQ(sub.terminal_count(), 2u);
  EXPECT_EQ(sub.terminal(0).label(), "c");
  EXPECT_EQ(sub.terminal(1).label(), "a");
}

TEST(FullHamiltonian, PlacesCouplingsAndFields) {
  const Complex c(0.03, -0.04);
  const SystemSpec spec(SpinNetwork::chain(2), {Terminal("s", 2, c, 0.7)});
  const CMatrix h = full_hamiltonian(spec);
  ASSERT_EQ(h.rows(), 3);
  EXPECT_EQ(h(0, 0), Complex(0.7, 0.0));
  EXPECT_EQ(h(0, 2), c);
  EXPECT_EQ(h(2, 0), std::conj(c));
  EXPECT_EQ(h(1, 2), Complex(1.0, 0.0));
  EXPECT_EQ(h(0, 1), Complex(0.0, 0.0));
  EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

}  // namespace
}  // namespace spinnet
