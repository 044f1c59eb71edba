// Copyright 2026 The Waybound Authors
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

#include <cmath>
#include <numbers>

#include "waybound/dynamics.hpp"

namespace waybound {
namespace {

using std::numbers::pi;

ComplexMatrix momentum_diag(std::size_t n) {
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = 0.25 + 0.125 * static_cast<double>(i);
  return ComplexMatrix::diagonal(p);
}

HamiltonianSpec random_spec(Rng& rng) {
  HamiltonianSpec s;
  s.layout = TensorLayout{{"A", 2}, {"B", 3}, {"C", 2}};
  s.free_terms.push_back({"A", random_hermitian(2, rng), rng.normal()});
  s.free_terms.push_back({"C", random_hermitian(2, rng), rng.normal()});
  s.interaction_terms.push_back({{"C", "B"}, random_hermitian(6, rng), rng.normal()});
  return s;
}

TEST(BuildHamiltonian, UncoupledSwapModel) {
  const double b = 0.7;
  const std::size_t n = 4;
  HamiltonianSpec s;
  s.layout = TensorLayout{{"S", 2}, {"D", 2}, {"O_II", n}};
  s.free_terms.push_back({"S", pauli_x(), b});
  s.free_terms.push_back({"O_II", momentum_diag(n), 1.0});
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix want =
      b * kron(kron(pauli_x(), i2), ComplexMatrix::identity(n)) +
      kron(kron(i2, i2), momentum_diag(n));
  EXPECT_LT(max_abs_diff(build_hamiltonian(s), want), 1e-15);
}

TEST(BuildHamiltonian, FieldSpectrum) {
  HamiltonianSpec s;
  s.layout = TensorLayout{{"S", 2}};
  s.free_terms.push_back({"S", pauli_x(), 1.5});
  const auto e = herm_eig(build_hamiltonian(s)).values;
  EXPECT_NEAR(e[0], -1.5, 1e-15);
  EXPECT_NEAR(e[1], 1.5, 1e-15);
}

TEST(BuildHamiltonian, HermitianForRandomSpecs) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    EXPECT_LE(build_hamiltonian(random_spec(rng)).hermiticity_residual(), 1e-12);
  }
}

TEST(BuildHamiltonian, RejectsBadTerms) {
  HamiltonianSpec s;
  s.layout = TensorLayout{{"S", 2}};
  s.free_terms.push_back({"Q", pauli_x(), 1.0});
  EXPECT_THROW(build_hamiltonian(s), DimensionError);
  s.free_terms = {{"S", ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, 1.0}};
  EXPECT_THROW(build_hamiltonian(s), PreconditionError);
}

TEST(SplitHamiltonian, SumsBack) {
  Rng rng(2);
  const HamiltonianSpec s = random_spec(rng);
  const HamiltonianParts p = split_hamiltonian(s, {"A"});
  EXPECT_LT(max_abs_diff(p.first + p.second + p.interaction, build_hamiltonian(s)),
            1e-14);
  EXPECT_LT(frobenius_norm(p.interaction), 1e-300);
}

TEST(HamiltonianConfig, RoundTrip) {
  Rng rng(3);
  const HamiltonianSpec s = random_spec(rng);
  KeyValueConfig cfg;
  hamiltonian_to_config(s, "hamiltonian.", cfg);
  const KeyValueConfig back = KeyValueConfig::parse(cfg.emit());
  const HamiltonianSpec t = hamiltonian_from_config(back, "hamiltonian.");
  EXPECT_EQ(build_hamiltonian(s), build_hamiltonian(t));
  EXPECT_EQ(t.layout, s.layout);
}

TEST(Evolve, ZeroTimeAndPhaseRotation) {
  Rng rng(4);
  const ComplexMatrix h = random_hermitian(5, rng);
  EXPECT_LT(max_abs_diff(evolve(h, 0.0), ComplexMatrix::identity(5)), 1e-14);
  const ComplexMatrix u = evolve(pauli_z(), pi / 2);
  EXPECT_LT(max_abs_diff(u, ComplexMatrix::diagonal(std::vector<cplx>{
                                 cplx(0, -1), cplx(0, 1)})),
            1e-15);
}

TEST(Evolve, CommutesWithGenerator) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix h = random_hermitian(6, rng);
    const ComplexMatrix u = evolve(h, rng.normal() * 3.0);
    EXPECT_LE(conservation_residual(u, h), 1e-10);
    EXPECT_LE(u.unitarity_residual(), 1e-10);
  }
}

TEST(Evolve, GroupProperty) {
  Rng rng(6);
  const ComplexMatrix h = random_hermitian(7, rng);
  const ComplexMatrix lhs = evolve(h, 0.4 + 1.1);
  const ComplexMatrix rhs = evolve(h, 0.4) * evolve(h, 1.1);
  EXPECT_LT(norm(lhs - rhs, NormKind::kOperator), 1e-10);
}

TEST(Evolve, ConservesEnergyExpectation) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix h = random_hermitian(6, rng);
    const StateVector psi = random_state(6, rng);
    const StateVector out = evolve(h, 2.3) * psi;
    EXPECT_NEAR(expectation(h, out).real(), expectation(h, psi).real(), 1e-10);
  }
}

TEST(ConservationResidual, Examples) {
  Rng rng(8);
  const ComplexMatrix h = random_hermitian(4, rng);
  EXPECT_LE(conservation_residual(evolve(h, 1.0), h), 1e-10);
  EXPECT_NEAR(conservation_residual(pauli_x(), pauli_z()), 2.0, 1e-14);
  EXPECT_THROW(conservation_residual(pauli_x(), ComplexMatrix::identity(3)),
               DimensionError);
}

TEST(ConservationResidual, VanishesIffGeneratorsCommute) {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix h = random_hermitian(4, rng);
    // Commuting partner: a polynomial in h.
    const ComplexMatrix q_commuting = h * h + 0.3 * h;
    const ComplexMatrix q_generic = random_hermitian(4, rng);
    const ComplexMatrix u = evolve(h, 0.9);
    EXPECT_LE(norm(commutator(h, q_commuting), NormKind::kOperator), 1e-9);
    EXPECT_LE(conservation_residual(u, q_commuting), 1e-10);
    EXPECT_GT(norm(commutator(h, q_generic), NormKind::kOperator), 1e-9);
    EXPECT_GT(conservation_residual(u, q_generic), 1e-10);
  }
}

TEST(BlockConserving, TwoSpinCharge) {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix l = kron(pauli_z(), i2) + kron(i2, pauli_z());
  const ComplexMatrix u = block_conserving_unitary(l, 10);
  // Basis |00>,|01>,|10>,|11> has charges 2,0,0,-2: only the middle block mixes.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool same = (i == j) || ((i == 1 || i == 2) && (j == 1 || j == 2));
      if (!same) EXPECT_LT(std::abs(u(i, j)), 1e-12) << i << "," << j;
    }
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
  EXPECT_GT(std::abs(u(1, 2)), 1e-3);
  EXPECT_NEAR(std::norm(u(1, 1)) + std::norm(u(2, 1)), 1.0, 1e-12);
}

TEST(BlockConserving, IdentityChargeGivesGenericUnitary) {
  const ComplexMatrix u = block_conserving_unitary(ComplexMatrix::identity(3), 11);
  EXPECT_LE(u.unitarity_residual(), 1e-12);
  int nonzero = 0;
  for (const cplx& z : u.entries()) nonzero += std::abs(z) > 1e-6;
  EXPECT_EQ(nonzero, 9);
}

TEST(BlockConserving, BatchResiduals) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> d(6);
    for (double& x : d) x = static_cast<double>(rng.uniform_int(-2, 2));
    const ComplexMatrix v = random_unitary(6, rng);
    ComplexMatrix l = v * ComplexMatrix::diagonal(d) * v.adjoint();
    l = 0.5 * (l + l.adjoint());
    const ComplexMatrix u = block_conserving_unitary(l, rng);
    EXPECT_LE(u.unitarity_residual(), 1e-12);
    EXPECT_LE(conservation_residual(u, l), 1e-10);
  }
}

TEST(EigenGroups, Tolerance) {
  const auto g = eigen_groups({-1.0, -1.0 + 1e-10, 0.5, 2.0, 2.0});
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0].size(), 2u);
  EXPECT_EQ(g[2].size(), 2u);
}

TEST(ConservationSpecTest, AdditiveTotal) {
  const ConservationSpec c = ConservationSpec::additive(pauli_z(), pauli_z());
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  EXPECT_EQ(c.total(), kron(pauli_z(), i2) + kron(i2, pauli_z()));
}

}  // namespace
}  // namespace waybound
