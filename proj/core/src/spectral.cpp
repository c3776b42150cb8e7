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
#include "spinnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "spinnet/errors.hpp"

namespace spinnet {
namespace {

// Makes the first component of largest modulus real and positive.
void fix_phases(CMatrix& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    auto col = vectors.col(k);
    const double largest = col.cwiseAbs().maxCoeff();
    if (largest == 0.0) continue;
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) >= largest * (1.0 - 1e-9)) {
        pivot = i;
        break;
      }
    }
    const Complex phase = std::conj(col(pivot)) / std::abs(col(pivot));
    col *= phase;
    col(pivot) = Complex(col(pivot).real(), 0.0);
  }
}

std::vector<std::vector<std::size_t>> classify(const RVector& ascending, double tolerance) {
  std::vector<std::vector<std::size_t>> classes;
  for (Eigen::Index k = 0; k < ascending.size(); ++k) {
    if (classes.empty() ||
        ascending(k) - ascending(static_cast<Eigen::Index>(classes.back().front())) > tolerance) {
      classes.emplace_back();
    }
    classes.back().push_back(static_cast<std::size_t>(k));
  }
  return classes;
}

SpectralDecomposition assemble(RVector values, CMatrix vectors, double tolerance) {
  SpectralDecomposition d;
  d.source_dimension = static_cast<std::size_t>(values.size());
  d.eigenvalues = std::move(values);
  d.eigenvectors = std::move(vectors);
  fix_phases(d.eigenvectors);
  d.tolerance = tolerance > 0.0 ? tolerance : default_degeneracy_tolerance(d.spectral_radius());
  d.degeneracy_classes = classify(d.eigenvalues, d.tolerance);
  return d;
}

void require_square(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols || rows == 0) {
    std::ostringstream msg;
    msg << "eigendecompose: expected a non-empty square matrix, got " << rows << "x" << cols;
    throw ContractViolation(msg.str());
  }
}

}  // namespace

double SpectralDecomposition::spectral_radius() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

std::size_t SpectralDecomposition::class_of(std::size_t k) const {
  for (std::size_t c = 0; c < degeneracy_classes.size(); ++c) {
    const auto& cls = degeneracy_classes[c];
    if (std::find(cls.begin(), cls.end(), k) != cls.end()) return c;
  }
  throw ContractViolation("mode index " + std::to_string(k) + " is out of range");
}

bool SpectralDecomposition::is_simple(std::size_t k) const {
  return degeneracy_classes[class_of(k)].size() == 1;
}

CMatrix SpectralDecomposition::class_projector(std::size_t k) const {
  const auto n = eigenvectors.rows();
  CMatrix p = CMatrix::Zero(n, n);
  for (auto j : degeneracy_classes[class_of(k)]) {
    const auto col = eigenvectors.col(static_cast<Eigen::Index>(j));
    p += col * col.adjoint();
  }
  return p;
}

double default_degeneracy_tolerance(double spectral_radius) {
  return 1e-8 * std::max(1.0, spectral_radius);
}

SpectralDecomposition eigendecompose(const CMatrix& matrix, double degeneracy_tolerance) {
  require_square(matrix.rows(), matrix.cols());
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double asymmetry = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (!(asymmetry <= 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "eigendecompose: matrix is not Hermitian (max |A - A^H| = " << asymmetry << ")";
    throw ContractViolation(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigendecompose: Hermitian solver did not converge for a " << matrix.rows() << "x"
        << matrix.cols() << " matrix (max entry " << scale << ")";
    throw NumericError(msg.str());
  }
  return assemble(solver.eigenvalues(), solver.eigenvectors(), degeneracy_tolerance);
}

SpectralDecomposition eigendecompose(const RMatrix& matrix, double degeneracy_tolerance) {
  require_square(matrix.rows(), matrix.cols());
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double asymmetry = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (!(asymmetry <= 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "eigendecompose: matrix is not symmetric (max |A - A^T| = " << asymmetry << ")";
    throw ContractViolation(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(matrix);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigendecompose: symmetric solver did not converge for a " << matrix.rows() << "x"
        << matrix.cols() << " matrix (max entry " << scale << ")";
    throw NumericError(msg.str());
  }
  return assemble(solver.eigenvalues(), solver.eigenvectors().cast<Complex>(),
                  degeneracy_tolerance);
}

SpectralDecomposition network_spectrum(const SpinNetwork& network) {
  return eigendecompose(network.adjacency());
}

SpectralDecomposition chain_spectrum_closed_form(std::size_t node_count) {
  if (node_count == 0) throw ConstructionError("chain spectrum: node count must be at least 1");
  const auto n = static_cast<Eigen::Index>(node_count);
  const double denom = static_cast<double>(node_count + 1);
  RVector values(n);
  CMatrix vectors(n, n);
  // Ascending order is k = N, N-1, ..., 1.
  for (Eigen::Index col = 0; col < n; ++col) {
    const double k = static_cast<double>(n - col);
    values(col) = 2.0 * std::cos(kPi * k / denom);
    for (Eigen::Index site = 0; site < n; ++site) {
      vectors(site, col) =
          std::sqrt(2.0 / denom) * std::sin(kPi * k * static_cast<double>(site + 1) / denom);
    }
  }
  return assemble(std::move(values), std::move(vectors), 0.0);
}

SpectralDecomposition cycle_spectrum_closed_form(std::size_t node_count) {
  if (node_count < 3) throw ConstructionError("cycle spectrum: node count must be at least 3");
  const auto n = static_cast<Eigen::Index>(node_count);
  const double nd = static_cast<double>(node_count);
  struct Mode {
    double value;
    RVector vector;
  };
  std::vector<Mode> modes;
  auto site = [](Eigen::Index s) { return static_cast<double>(s + 1); };
  for (std::size_t k = 1; k <= node_count; ++k) {
    const double kd = static_cast<double>(k);
    const double value = 2.0 * std::cos(2.0 * kPi * kd / nd);
    if (k == node_count || 2 * k == node_count) {
      RVector v(n);
      for (Eigen::Index s = 0; s < n; ++s) {
        v(s) = std::cos(2.0 * kPi * kd * site(s) / nd) / std::sqrt(nd);
      }
      modes.push_back({value, std::move(v)});
    } else if (2 * k < node_count) {
      // k and N-k share the eigenvalue; the real cos/sin pair spans both.
      RVector c(n);
      RVector s(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        c(j) = std::sqrt(2.0 / nd) * std::cos(2.0 * kPi * kd * site(j) / nd);
        s(j) = std::sqrt(2.0 / nd) * std::sin(2.0 * kPi * kd * site(j) / nd);
      }
      modes.push_back({value, std::move(c)});
      modes.push_back({value, std::move(s)});
    }
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& a, const Mode& b) { return a.value < b.value; });
  RVector values(n);
  CMatrix vectors(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    values(col) = modes[static_cast<std::size_t>(col)].value;
    vectors.col(col) = modes[static_cast<std::size_t>(col)].vector.cast<Complex>();
  }
  return assemble(std::move(values), std::move(vectors), 0.0);
}

std::vector<std::size_t> degeneracy_class_of(const SpectralDecomposition& decomposition,
                                             double value, double tolerance) {
  std::vector<std::size_t> indices;
  for (Eigen::Index k = 0; k < decomposition.eigenvalues.size(); ++k) {
    if (std::abs(decomposition.eigenvalues(k) - value) <= tolerance) {
      indices.push_back(static_cast<std::size_t>(k));
    }
  }
  if (indices.empty()) {
    std::ostringstream msg;
    msg.precision(12);
    msg << value << " is not an eigenvalue within tolerance " << tolerance;
    throw NotAnEigenvalueError(msg.str());
  }
  return indices;
}

std::size_t mode_from_top(const SpectralDecomposition& decomposition, std::size_t k) {
  if (k < 1 || k > decomposition.size()) {
    std::ostringstream msg;
    msg << "mode index " << k << " is outside [1, " << decomposition.size() << "]";
    throw ConstructionError(msg.str());
  }
  return decomposition.size() - k;
}

double adjacent_gap(const SpectralDecomposition& decomposition, std::size_t mode) {
  const auto& own = decomposition.degeneracy_classes[decomposition.class_of(mode)];
  const double value = decomposition.eigenvalues(static_cast<Eigen::Index>(mode));
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < decomposition.eigenvalues.size(); ++k) {
    if (std::find(own.begin(), own.end(), static_cast<std::size_t>(k)) != own.end()) continue;
    gap = std::min(gap, std::abs(decomposition.eigenvalues(k) - value));
  }
  return gap;
}

NearestEigenvalue nearest_eigenvalue(const SpectralDecomposition& decomposition, double value) {
  NearestEigenvalue best{0, std::numeric_limits<double>::infinity()};
  for (Eigen::Index k = 0; k < decomposition.eigenvalues.size(); ++k) {
    const double d = std::abs(decomposition.eigenvalues(k) - value);
    if (d < best.distance) best = {static_cast<std::size_t>(k), d};
  }
  return best;
}

PerronReport perron_check(const SpinNetwork& network) {
  const auto spectrum = network_spectrum(network);
  const std::size_t top = spectrum.size() - 1;
  PerronReport report;
  report.top_eigenvalue = spectrum.eigenvalues(static_cast<Eigen::Index>(top));
  report.simple = spectrum.is_simple(top);
  const auto v = spectrum.eigenvectors.col(static_cast<Eigen::Index>(top));
  report.strictly_positive = true;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v(i).real() > 0.0) || std::abs(v(i).imag()) > 1e-10) {
      report.strictly_positive = false;
      break;
    }
  }
  return report;
}

CouplingProfile coupling_profile(const SpectralDecomposition& decomposition,
                                 const Terminal& terminal) {
  const std::size_t node = terminal.attach_node();
  if (node < 1 || node > decomposition.source_dimension) {
    std::ostringstream msg;
    msg << "terminal '" << terminal.label() << "': node " << node << " is outside [1, "
        << decomposition.source_dimension << "]";
    throw ConstructionError(msg.str());
  }
  CouplingProfile profile;
  profile.terminal_label = terminal.label();
  profile.amplitudes = decomposition.eigenvectors.row(static_cast<Eigen::Index>(node - 1)).transpose();
  return profile;
}

}  // namespace spinnet
