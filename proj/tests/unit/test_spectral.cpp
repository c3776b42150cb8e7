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

#include "oracles.hpp"
#include "spinnet/errors.hpp"
#include "spinnet/spectral.hpp"

namespace spinnet {
namespace {

using testing::chain_amplitude;
using testing::chain_eigenvalue;
using testing::cycle_eigenvalue;

TEST(Spectrum, ChainOfTwoIsPlusMinusOne) {
  const auto s = network_spectrum(SpinNetwork::chain(2));
  EXPECT_NEAR(s.eigenvalues(0), -1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 1)), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_TRUE(s.is_simple(0));
}

TEST(Spectrum, ChainFiveMatchesCosineFormula) {
  const auto s = network_spectrum(SpinNetwork::chain(5));
  for (std::size_t k = 1; k <= 5; ++k) {
    EXPECT_NEAR(s.eigenvalues(static_cast<Eigen::Index>(5 - k)), chain_eigenvalue(5, k), 1e-12);
  }
  // Middle mode is zero.
  EXPECT_NEAR(s.eigenvalues(2), 0.0, 1e-12);
}

TEST(Spectrum, Cycle21HasTopSimpleAndPairedRest) {
  const auto s = network_spectrum(SpinNetwork::cycle(21));
  ASSERT_EQ(s.degeneracy_classes.size(), 11u);
  EXPECT_EQ(s.degeneracy_classes.back().size(), 1u);
  EXPECT_NEAR(s.eigenvalues(20), 2.0, 1e-12);
  for (std::size_t c = 0; c + 1 < s.degeneracy_classes.size(); ++c) {
    EXPECT_EQ(s.degeneracy_classes[c].size(), 2u);
  }
}

TEST(Spectrum, Cycle4HasDegenerateZero) {
  const auto s = network_spectrum(SpinNetwork::cycle(4));
  const auto zero = degeneracy_class_of(s, 0.0, 1e-9);
  EXPECT_EQ(zero.size(), 2u);
  EXPECT_THROW(degeneracy_class_of(s, 0.5, 1e-9), NotAnEigenvalueError);
}

TEST(Spectrum, ClosedFormsMatchReferenceFormulas) {
  const auto chain = chain_spectrum_closed_form(7);
  for (std::size_t k = 1; k <= 7; ++k) {
    EXPECT_NEAR(chain.eigenvalues(static_cast<Eigen::Index>(7 - k)), chain_eigenvalue(7, k), 1e-14);
  }
  const auto cycle = cycle_spectrum_closed_form(8);
  EXPECT_NEAR(cycle.eigenvalues(7), cycle_eigenvalue(8, 0), 1e-14);
  EXPECT_NEAR(cycle.eigenvalues(0), cycle_eigenvalue(8, 4), 1e-14);
  EXPECT_EQ(cycle.degeneracy_classes.size(), 5u);
}

TEST(Spectrum, PhaseConventionIsDeterministic) {
  const auto a = network_spectrum(SpinNetwork::chain(9));
  const auto b = network_spectrum(SpinNetwork::chain(9));
  EXPECT_EQ((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff(), 0.0);
  for (Eigen::Index k = 0; k < a.eigenvectors.cols(); ++k) {
    // First component whose modulus ties the largest one.
    const double top = a.eigenvectors.col(k).cwiseAbs().maxCoeff();
    Eigen::Index row = 0;
    while (std::abs(a.eigenvectors(row, k)) < top * (1.0 - 1e-9)) ++row;
    EXPECT_GT(a.eigenvectors(row, k).real(), 0.0);
    EXPECT_EQ(a.eigenvectors(row, k).imag(), 0.0);
  }
}

TEST(Spectrum, ModeFromTopCountsDownward) {
  const auto s = network_spectrum(SpinNetwork::chain(30));
  const auto idx = mode_from_top(s, 5);
  EXPECT_NEAR(s.eigenvalues(static_cast<Eigen::Index>(idx)), chain_eigenvalue(30, 5), 1e-12);
  EXPECT_NEAR(s.eigenvalues(static_cast<Eigen::Index>(idx)), 1.7486932323, 1e-9);
  EXPECT_THROW(mode_from_top(s, 31), ConstructionError);
}

TEST(Spectrum, AdjacentGapAndNearest) {
  const auto s = network_spectrum(SpinNetwork::chain(30));
  const auto idx = mode_from_top(s, 5);
  const double expected = std::min(chain_eigenvalue(30, 4) - chain_eigenvalue(30, 5),
                                   chain_eigenvalue(30, 5) - chain_eigenvalue(30, 6));
  EXPECT_NEAR(adjacent_gap(s, idx), expected, 1e-12);
  const auto near = nearest_eigenvalue(network_spectrum(SpinNetwork::cycle(21)), -0.9);
  // The closest ring eigenvalue to -0.9 is 2cos(14 pi/21) = -1.
  EXPECT_NEAR(near.distance, 0.1, 1e-12);
}

TEST(Spectrum, RejectsNonHermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigendecompose(m), ContractViolation);
}

TEST(Spectrum, ComplexHermitianInput) {
  CMatrix m(2, 2);
  m << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(1, 0);
  const auto s = eigendecompose(m);
  EXPECT_NEAR(s.eigenvalues(0), 0.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 2.0, 1e-14);
  const CMatrix rebuilt = s.eigenvectors * s.eigenvalues.cast<Complex>().asDiagonal() *
                          s.eigenvectors.adjoint();
  EXPECT_LT((rebuilt - m).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Spectrum, ProjectorIsBasisIndependent) {
  const auto numeric = network_spectrum(SpinNetwork::cycle(6));
  const auto exact = cycle_spectrum_closed_form(6);
  for (const auto& cls : numeric.degeneracy_classes) {
    const auto k = cls.front();
    const CMatrix p = numeric.class_projector(k);
    EXPECT_LT((p - exact.class_projector(k)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Perron, TopModeOfConnectedGraphIsPositive) {
  const auto chain = perron_check(SpinNetwork::chain(10));
  EXPECT_TRUE(chain.simple);
  EXPECT_TRUE(chain.strictly_positive);
  const auto star = perron_check(SpinNetwork::from_edge_list(4, {{1, 2, 1.0}, {1, 3, 1.0}, {1, 4, 1.0}}));
  EXPECT_NEAR(star.top_eigenvalue, std::sqrt(3.0), 1e-12);
  EXPECT_TRUE(star.strictly_positive);
}

TEST(CouplingProfile, ChainAmplitudesAreSines) {
  const auto s = network_spectrum(SpinNetwork::chain(30));
  const auto profile = coupling_profile(s, Terminal("s", 2, 0.01, 0.0));
  EXPECT_NEAR(profile.norm_squared(), 1.0, 1e-12);
  const auto idx = mode_from_top(s, 5);
  // Overall sign follows the phase convention, so compare magnitudes.
  EXPECT_NEAR(std::abs(profile.amplitudes(static_cast<Eigen::Index>(idx))),
              std::abs(chain_amplitude(30, 5, 2)), 1e-12);
  EXPECT_NEAR(std::abs(chain_amplitude(30, 5, 2)), 0.21556, 1e-5);
}

}  // namespace
}  // namespace spinnet
