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


#include <benchmark/benchmark.h>

#include "spinnet/dynamics.hpp"
#include "spinnet/effective.hpp"
#include "spinnet/protocol.hpp"
#include "spinnet/spectral.hpp"

namespace {

using namespace spinnet;

void BM_Eigendecompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = SystemSpec(SpinNetwork::cycle(n), {Terminal("s", 1, 0.1, -0.9), Terminal("d", n / 2, 0.1, -0.9)});
  const CMatrix h = full_hamiltonian(spec);
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(h));
}
BENCHMARK(BM_Eigendecompose)->Arg(21)->Arg(64)->Arg(128);

SystemSpec calibrated_chain() {
  const SystemSpec base(SpinNetwork::chain(30), {Terminal("s", 2, 0.01, 0.0), Terminal("d", 13, 0.01, 0.0)});
  const auto mode = mode_from_top(network_spectrum(base.network()), 5);
  return calibrate_resonant(base, mode).adjusted_spec;
}

void BM_ChainTrajectory(benchmark::State& state) {
  const auto spec = calibrated_chain();
  for (auto _ : state) benchmark::DoNotOptimize(trajectory(spec, "s", 2500.0, 2501));
}
BENCHMARK(BM_ChainTrajectory)->Unit(benchmark::kMillisecond);

void BM_PeakTransfer(benchmark::State& state) {
  const auto spec = calibrated_chain();
  for (auto _ : state) benchmark::DoNotOptimize(peak_transfer(spec, "s", "d", 2500.0));
}
BENCHMARK(BM_PeakTransfer)->Unit(benchmark::kMillisecond);

void BM_EffectiveMultiuser(benchmark::State& state) {
  std::vector<Terminal> users;
  for (std::size_t i = 0; i < 4; ++i) users.emplace_back("u" + std::to_string(i), 1 + 5 * i, 0.1, -0.9);
  const SystemSpec spec(SpinNetwork::cycle(21), users);
  for (auto _ : state) benchmark::DoNotOptimize(effective_multiuser(spec));
}
BENCHMARK(BM_EffectiveMultiuser);

void BM_WResonant(benchmark::State& state) {
  std::vector<Terminal> users;
  for (std::size_t node : {1u, 8u, 15u}) users.emplace_back("s" + std::to_string(node), node, 0.05, 2.0);
  const SystemSpec spec(SpinNetwork::cycle(21), users);
  for (auto _ : state) benchmark::DoNotOptimize(w_resonant_protocol(spec, 20));
}
BENCHMARK(BM_WResonant)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
