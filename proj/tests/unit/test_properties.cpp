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

#include <random>

#include "spinnet/dynamics.hpp"
#include "spinnet/effective.hpp"
#include "spinnet/protocol.hpp"
#include "spinnet/random_networks.hpp"

namespace spinnet {
namespace {

// Random connected graph with 2-3 terminals, fields at least `margin` from the spectrum.
SystemSpec random_spec(std::mt19937_64& rng, std::size_t max_nodes, double margin) {
  std::uniform_int_distribution<std::size_t> size(2, max_nodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = size(rng);
  auto network = random_connected_network(rng, n, 0.4);
  const auto spectrum = network_spectrum(network);
  const double lo = spectrum.eigenvalues(0) - 2.0;
  const double hi = spectrum.eigenvalues(spectrum.eigenvalues.size() - 1) + 2.0;
  std::vector<Terminal> terminals;
  const int m = 2 + static_cast<int>(unit(rng) * 2.0);
  for (int t = 0; t < m; ++t) {
    double omega = 0.0;
    do {
      omega = lo + unit(rng) * (hi - lo);
    } while (nearest_eigenvalue(spectrum, omega).distance < margin);
    std::uniform_int_distribution<std::size_t> node(1, n);
    terminals.emplace_back("t" + std::to_string(t), node(rng),
                           std::polar(0.005 + 0.02 * unit(rng), 6.28 * unit(rng)), omega);
  }
  return SystemSpec(std::move(network), std::move(terminals));
}

TEST(Properties, RandomNetworksAreConnected) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    EXPECT_TRUE(random_connected_network(rng, 1 + static_cast<std::size_t>(i % 12), 0.2).is_connected());
  }
}

TEST(Properties, SchriefferWolffAndHermiticity) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 40; ++i) {
    const auto spec = random_spec(rng, 12, 0.1);
    EXPECT_LT(sw_condition_residual(spec, sw_generator(spec)), 1e-12);
    const auto multi = effective_multiuser(spec);
    EXPECT_LT((multi.matrix - multi.matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    const std::vector<std::string> pair{spec.terminal(0).label(), spec.terminal(1).label()};
    const auto sub = spec.restricted_to(pair);
    EXPECT_LT((effective_multiuser(sub).matrix - effective_nonresonant(sub).matrix).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Properties, DynamicsInvariants) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> time(0.0, 500.0);
  for (int i = 0; i < 20; ++i) {
    const auto spec = random_spec(rng, 12, 0.1);
    const CMatrix h = full_hamiltonian(spec);
    const Propagator p(h);
    const CVector psi = basis_state(p.dimension(), 0);
    const double t1 = time(rng);
    const double t2 = time(rng);
    EXPECT_LT((p.evolve(p.evolve(psi, t1), t2) - p.evolve(psi, t1 + t2)).cwiseAbs().maxCoeff(), 1e-9);
    const auto traj = trajectory(p, psi, 5000.0, 201);
    EXPECT_LT(traj.norm_drift(), 1e-10);
    EXPECT_LT(traj.energy_drift(h), 1e-9);
    // Real couplings make H real symmetric, so transfer is reciprocal.
    const SystemSpec real_spec(spec.network(), {Terminal("a", spec.terminal(0).attach_node(), 0.02, 0.3),
                                                Terminal("b", spec.terminal(1).attach_node(), 0.03, -0.2)});
    const double t = time(rng);
    EXPECT_NEAR(transfer_fidelity(real_spec, "a", "b", t), transfer_fidelity(real_spec, "b", "a", t), 1e-12);
  }
}

TEST(Properties, PerronModeIsAlwaysAChannel) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 30; ++i) {
    const auto n = 2 + static_cast<std::size_t>(i % 15);
    const auto net = random_connected_network(rng, n, 0.3);
    const auto perron = perron_check(net);
    EXPECT_TRUE(perron.simple);
    EXPECT_TRUE(perron.strictly_positive);
    const auto report = channel_exists(net, 1, n);
    ASSERT_TRUE(report.exists);
    EXPECT_NEAR(report.witnesses.back().eigenvalue, perron.top_eigenvalue, 1e-12);
  }
}

TEST(Properties, EffectiveTracksExactAsCouplingShrinks) {
  // Terminal populations of the 2x2 model follow the exact ones with an
  // error that falls at least linearly in the coupling.
  const auto error_at = [](double c) {
    const SystemSpec spec(SpinNetwork::chain(6), {Terminal("s", 1, c, 2.4), Terminal("d", 6, c, 2.4)});
    const auto eff = effective_nonresonant(spec);
    const double t_end = 1.5 * transfer_time_estimate(eff);
    const Propagator exact(full_hamiltonian(spec));
    const Propagator model(eff.matrix);
    double worst = 0.0;
    for (int k = 0; k <= 300; ++k) {
      const double t = t_end * k / 300.0;
      const CVector a = exact.evolve(basis_state(exact.dimension(), 0), t);
      const CVector b = model.evolve(basis_state(2, 0), t);
      worst = std::max({worst, std::abs(std::norm(a(0)) - std::norm(b(0))),
                        std::abs(std::norm(a(1)) - std::norm(b(1)))});
    }
    return worst;
  };
  const double e1 = error_at(0.02);
  const double e2 = error_at(0.01);
  const double e4 = error_at(0.005);
  EXPECT_LT(e1, 20.0 * 0.02);
  EXPECT_LT(e2, 0.55 * e1);
  EXPECT_LT(e4, 0.55 * e2);
}

}  // namespace
}  // namespace spinnet
