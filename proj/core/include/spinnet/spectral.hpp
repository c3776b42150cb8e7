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
#include <string>
#include <vector>

#include "spinnet/network.hpp"
#include "spinnet/types.hpp"

namespace spinnet {

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues ascend; column k of `eigenvectors` belongs to eigenvalue k.
/// Each eigenvector has its first largest-modulus component real and
/// positive, so amplitudes are reproducible bit for bit.
struct SpectralDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;
  /// Indices grouped by eigenvalue equality within `tolerance`, ascending.
  std::vector<std::vector<std::size_t>> degeneracy_classes;
  std::size_t source_dimension = 0;
  double tolerance = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
  double spectral_radius() const;
  /// Position of index k inside degeneracy_classes.
  std::size_t class_of(std::size_t k) const;
  bool is_simple(std::size_t k) const;
  /// Orthogonal projector onto the degeneracy class containing mode k.
  CMatrix class_projector(std::size_t k) const;
};

/// 1e-8 * max(1, spectral radius).
double default_degeneracy_tolerance(double spectral_radius);

/// Hermitian eigensolve. Throws ContractViolation if `matrix` is not
/// Hermitian within 1e-12 (scaled by its largest entry when that exceeds 1)
/// and NumericError if the solver fails. A non-positive tolerance
/// selects default_degeneracy_tolerance.
SpectralDecomposition eigendecompose(const CMatrix& matrix, double degeneracy_tolerance = 0.0);
SpectralDecomposition eigendecompose(const RMatrix& matrix, double degeneracy_tolerance = 0.0);

/// Decomposition of a network's adjacency matrix.
SpectralDecomposition network_spectrum(const SpinNetwork& network);

/// Analytic path-graph spectrum 2cos(pi k/(N+1)) with sine eigenvectors.
SpectralDecomposition chain_spectrum_closed_form(std::size_t node_count);
/// Analytic ring spectrum 2cos(2 pi k/N); degenerate pairs returned in a real
/// cosine/sine basis.
SpectralDecomposition cycle_spectrum_closed_form(std::size_t node_count);

/// All indices whose eigenvalue lies within `tolerance` of `value`.
/// Throws NotAnEigenvalueError when there are none.
std::vector<std::size_t> degeneracy_class_of(const SpectralDecomposition& decomposition,
                                             double value, double tolerance);

/// Translates the 1-based "from the top" numbering used in configs
/// (mode k of a chain is 2cos(pi k/(N+1))) into an ascending index.
std::size_t mode_from_top(const SpectralDecomposition& decomposition, std::size_t k);

/// Smallest distance from `mode`'s eigenvalue to any eigenvalue outside its class.
/// Infinity when the spectrum has a single class.
double adjacent_gap(const SpectralDecomposition& decomposition, std::size_t mode);

/// Smallest |value - lambda| over the spectrum, with the minimizing index.
struct NearestEigenvalue {
  std::size_t index = 0;
  double distance = 0.0;
};
NearestEigenvalue nearest_eigenvalue(const SpectralDecomposition& decomposition, double value);

struct PerronReport {
  double top_eigenvalue = 0.0;
  bool simple = false;
  bool strictly_positive = false;
};

/// Top-of-spectrum check; for connected graphs with non-negative weights
/// the top mode is simple and strictly positive.
PerronReport perron_check(const SpinNetwork& network);

/// Amplitudes g_{alpha lambda} = <n_alpha|lambda> of one terminal's node.
struct CouplingProfile {
  std::string terminal_label;
  CVector amplitudes;

  double norm_squared() const { return amplitudes.squaredNorm(); }
};

CouplingProfile coupling_profile(const SpectralDecomposition& decomposition,
                                 const Terminal& terminal);

}  // namespace spinnet
