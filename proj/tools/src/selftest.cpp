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
#include <ostream>
#include <random>
#include <sstream>

#include "spinnet/effective.hpp"
#include "spinnet/io.hpp"
#include "spinnet/random_networks.hpp"
#include "spinnet/spectral.hpp"
#include "spinnet_cli/cli.hpp"

namespace spinnet::cli {
namespace {

struct SpectralErrors {
  double eigenvalue = 0.0;
  double projector = 0.0;
  bool same_classes = true;
};

SpectralErrors compare(const SpectralDecomposition& numeric, const SpectralDecomposition& exact) {
  SpectralErrors e;
  e.eigenvalue = (numeric.eigenvalues - exact.eigenvalues).cwiseAbs().maxCoeff();
  e.same_classes = numeric.degeneracy_classes == exact.degeneracy_classes;
  if (!e.same_classes) return e;
  for (const auto& cls : numeric.degeneracy_classes) {
    const auto k = cls.front();
    e.projector = std::max(e.projector,
                           (numeric.class_projector(k) - exact.class_projector(k)).cwiseAbs().maxCoeff());
  }
  return e;
}

bool report_line(std::ostream& out, bool pass, const std::string& name, const std::string& detail) {
  out << (pass ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  return pass;
}

bool spectral_family(const char* name, std::size_t first, std::size_t last,
                     SpinNetwork (*build)(std::size_t),
                     SpectralDecomposition (*closed)(std::size_t), std::ostream& out) {
  SpectralErrors worst;
  for (std::size_t n = first; n <= last; ++n) {
    const auto e = compare(network_spectrum(build(n)), closed(n));
    worst.eigenvalue = std::max(worst.eigenvalue, e.eigenvalue);
    worst.projector = std::max(worst.projector, e.projector);
    worst.same_classes = worst.same_classes && e.same_classes;
  }
  const bool pass = worst.same_classes && worst.eigenvalue < 1e-9 && worst.projector < 1e-8;
  return report_line(out, pass,
                     std::string(name) + " N=" + std::to_string(first) + ".." + std::to_string(last),
                     "eigenvalue error " + format_number(worst.eigenvalue, 3) + ", projector error " +
                         format_number(worst.projector, 3) +
                         (worst.same_classes ? "" : ", degeneracy classes differ"));
}

}  // namespace

int run_selftest(const GlobalOptions& options, std::ostream& out, std::ostream& err) {
  std::ostringstream log;
  bool ok = true;
  ok &= spectral_family("chain spectrum", 2, 64, &SpinNetwork::chain, &chain_spectrum_closed_form, log);
  ok &= spectral_family("cycle spectrum", 3, 64, &SpinNetwork::cycle, &cycle_spectrum_closed_form, log);

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> size_dist(2, 15);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_residual = 0.0;
  std::size_t perron_failures = 0;
  constexpr int kSpecs = 50;
  for (int trial = 0; trial < kSpecs; ++trial) {
    const auto n = size_dist(rng);
    auto network = random_connected_network(rng, n, 0.35);
    const auto spectrum = network_spectrum(network);
    const auto perron = perron_check(network);
    if (!perron.simple || !perron.strictly_positive) ++perron_failures;
    std::vector<Terminal> terminals;
    const int m = 2 + static_cast<int>(unit(rng) * 2.0);
    for (int t = 0; t < m; ++t) {
      double omega = 0.0;
      do {
        omega = spectrum.eigenvalues[0] - 3.0 +
                unit(rng) * (spectrum.eigenvalues[spectrum.eigenvalues.size() - 1] -
                             spectrum.eigenvalues[0] + 6.0);
      } while (nearest_eigenvalue(spectrum, omega).distance < 0.1);
      const auto node = 1 + static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n;
      const Complex coupling = std::polar(0.01 + 0.09 * unit(rng), 2.0 * kPi * unit(rng));
      terminals.emplace_back("t" + std::to_string(t), node, coupling, omega);
    }
    const SystemSpec spec(std::move(network), std::move(terminals));
    worst_residual = std::max(worst_residual, sw_condition_residual(spec, sw_generator(spec)));
  }
  ok &= report_line(log, worst_residual < 1e-12, "Schrieffer-Wolff condition",
                    std::to_string(kSpecs) + " random specs, worst residual " +
                        format_number(worst_residual, 3) + " (seed " + std::to_string(options.seed) + ")");
  ok &= report_line(log, perron_failures == 0, "Perron mode",
                    std::to_string(perron_failures) + " failures in " + std::to_string(kSpecs) + " graphs");

  if (!options.quiet) out << log.str();
  if (!ok) err << "error: selftest failed\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace spinnet::cli
