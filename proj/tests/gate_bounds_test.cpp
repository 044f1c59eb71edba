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

#include "waybound/gate_bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "waybound/dynamics.hpp"
#include "waybound/errors.hpp"
#include "waybound/random.hpp"

namespace waybound {
namespace {

constexpr double kPi = std::numbers::pi;

StateVector sigma_y_plus() { return StateVector{1.0, cplx(0.0, 1.0)}.normalized(); }

std::array<double, 3> random_unit(Rng& rng) {
  std::array<double, 3> u{rng.normal(), rng.normal(), rng.normal()};
  const double n = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  for (auto& x : u) x /= n;
  return u;
}

ControlledGateSpec random_spec(Rng& rng, double theta) {
  const ComplexMatrix v = random_unitary(2, rng);
  ControlledGateSpec spec;
  spec.phi0 = v * StateVector::basis(2, 0);
  spec.phi1 = v * StateVector::basis(2, 1);
  if (rng.uniform() < 0.5) {
    const ComplexMatrix w = random_unitary(2, rng);
    spec.phi0_prime = w * StateVector::basis(2, 0);
    spec.phi1_prime = w * StateVector::basis(2, 1);
  }
  spec.theta = theta;
  spec.phase_phi = 2.0 * kPi * rng.uniform();
  spec.u = random_unit(rng);
  return spec;
}

ControlledGateSpec computational_spec(double theta, std::array<double, 3> u) {
  ControlledGateSpec spec;
  spec.phi0 = StateVector::basis(2, 0);
  spec.phi1 = StateVector::basis(2, 1);
  spec.theta = theta;
  spec.u = u;
  return spec;
}

// Exact CZ from H = diag(0, 1)_C + |11><11| over tau = pi:
// U = diag(1, 1, -1, 1) = |0><0| (x) I + (-|1><1|) (x) Z.
struct CzModel {
  ControlledGateSpec spec;
  ControlledSystem sys;
};

CzModel cz_model() {
  CzModel m;
  m.spec = computational_spec(kPi, {0.0, 0.0, 1.0});
  m.spec.phase_phi = 1.5 * kPi;  // e^{i phi} i Z = Z
  m.spec.phi1_prime = StateVector{0.0, -1.0};
  m.sys.h_c = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
  m.sys.h_t = ComplexMatrix::zeros(2, 2);
  m.sys.h_int = ComplexMatrix::diagonal(std::vector<double>{0.0, 0.0, 0.0, 1.0});
  m.sys.unitary = evolve(m.sys.hamiltonian(), kPi);
  return m;
}

// ------------------------------------------------------------------- SWAP

TEST(SwapWayRhs, ClosedForms) {
  EXPECT_NEAR(swap_way_rhs(1.0, sigma_y_plus(), 1.0), 0.5, 1e-14);
  EXPECT_NEAR(swap_way_rhs(1.0, sigma_y_plus(), 0.5), 0.8, 1e-14);
  EXPECT_NEAR(swap_way_rhs(1.0, sigma_y_plus(), 2.0), 0.2, 1e-14);
  EXPECT_NEAR(swap_way_rhs(1.0, sigma_y_plus(), 4.0), 1.0 / 17.0, 1e-14);
  const StateVector plus_x = StateVector{1.0, 1.0}.normalized();
  EXPECT_NEAR(swap_way_rhs(1.0, plus_x, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(swap_way_rhs(0.0, sigma_y_plus(), 1.0), 0.0, 1e-15);
}

TEST(SwapWayRhs, UndefinedAtZeroDenominator) {
  EXPECT_THROW(swap_way_rhs(0.0, sigma_y_plus(), 0.0), UndefinedBoundError);
  EXPECT_THROW(swap_fidelity_bound(0.0, 0.0), UndefinedBoundError);
}

TEST(GSurface, MaximumMatchesClosedForm) {
  const std::vector<std::pair<double, double>> pairs{
      {1.0, 1.0}, {1.0, 0.5}, {2.0, 1.0}, {0.3, 2.0}, {1.0, 4.0}};
  for (const auto& [b, sp] : pairs) {
    const GSurfaceMax m = g_surface_max(b, sp);
    const double expected = b * b / (b * b + sp * sp);
    EXPECT_NEAR(m.value, expected, 1e-9) << b << " " << sp;
    EXPECT_NEAR(m.r, 0.5, 1e-9);
    const double d = std::min(std::abs(m.theta - kPi / 2), std::abs(m.theta - 1.5 * kPi));
    EXPECT_LT(d, 1e-6);
  }
}

TEST(GSurface, DenseGridNeverExceedsMaximum) {
  const double b = 1.3, sp = 0.7;
  const double top = b * b / (b * b + sp * sp);
  for (int i = 0; i <= 200; ++i) {
    for (int j = 0; j < 400; ++j) {
      const double v = g_surface({0.5 * i / 200.0, 2.0 * kPi * j / 400.0, b, sp});
      ASSERT_LE(v, top + 1e-14);
    }
  }
}

TEST(GSurface, DomainChecks) {
  EXPECT_THROW(g_surface({0.6, 0.0, 1.0, 1.0}), PreconditionError);
  EXPECT_THROW(g_surface({0.2, 2.0 * kPi, 1.0, 1.0}), PreconditionError);
}

TEST(SwapFidelityBound, ValuesAndRelationToSurface) {
  EXPECT_NEAR(swap_fidelity_bound(1.0, 1.0), 0.875, 1e-15);
  for (const auto& [b, sp] : std::vector<std::pair<double, double>>{{1, 0.5}, {2, 1}, {0.5, 3}}) {
    EXPECT_NEAR(swap_fidelity_bound(b, sp), 1.0 - g_surface_max(b, sp).value / 4.0, 1e-9);
  }
}

TEST(SwapCoefficientFactor, ValuesAndRange) {
  EXPECT_NEAR(swap_coefficient_factor(kron(sigma_y_plus(), StateVector::basis(2, 0))), 1.0,
              1e-15);
  const StateVector plus = StateVector{1.0, 1.0}.normalized();
  EXPECT_NEAR(swap_coefficient_factor(kron(plus, plus)), 2.0, 1e-14);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const double f = swap_coefficient_factor(random_state(4, rng));
    EXPECT_GE(f, 1.0);
    EXPECT_LE(f, 2.0 + 1e-14);
  }
}

// --------------------------------------------------------------- Hadamard

TEST(SpinOperators, AlgebraAndCasimir) {
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto j = spin_operators(d);
    const double jj = (d - 1) / 2.0 * ((d - 1) / 2.0 + 1.0);
    EXPECT_LT(max_abs_diff(commutator(j[0], j[1]), cplx(0.0, 1.0) * j[2]), 1e-13);
    EXPECT_LT(max_abs_diff(commutator(j[1], j[2]), cplx(0.0, 1.0) * j[0]), 1e-13);
    const ComplexMatrix c = j[0] * j[0] + j[1] * j[1] + j[2] * j[2];
    EXPECT_LT(max_abs_diff(c, jj * ComplexMatrix::identity(d)), 1e-12);
  }
  EXPECT_LT(max_abs_diff(spin_operators(2)[0], 0.5 * pauli_x()), 1e-15);
}

TEST(HadamardBound, ClosedForm) {
  EXPECT_NEAR(hadamard_bound_rhs(0.0), 0.25, 1e-15);
  EXPECT_NEAR(hadamard_bound_rhs(0.5), 1.0 / 8.0, 1e-15);
}

TEST(HadamardBound, SpinJSweepRespectsBound) {
  Rng rng(11);
  for (std::size_t d = 2; d <= 5; ++d) {
    for (int t = 0; t < 25; ++t) {
      Rng sub = rng.split(100 * d + t);
      const HadamardModel hm = random_hadamard_model(sub, d);
      const BoundReport r = hadamard_check(hm);
      EXPECT_TRUE(r.pass) << "d=" << d << " slack=" << r.slack;
      // The closed form is the additive conservation bound on s_y = +1/2.
      EXPECT_NEAR(r.rhs, r.diagnostics.at("way_additive_rhs"), 1e-12);
    }
  }
}

TEST(HadamardBound, FidelityDiagnosticIsReported) {
  Rng rng(5);
  const HadamardModel hm = random_hadamard_model(rng, 3);
  OptimizerConfig cfg;
  cfg.starts = 4;
  const BoundReport r = hadamard_check(hm, &cfg);
  ASSERT_TRUE(r.diagnostics.count("one_minus_fidelity_sq"));
  EXPECT_GE(r.diagnostics.at("one_minus_fidelity_sq"), -1e-12);
}

// ----------------------------------------------------- controlled gates

TEST(ControlledGateSpec, OrientationAndTargetBasis) {
  const auto vx = computational_spec(1.0, {1.0, 0.0, 0.0}).v();
  EXPECT_NEAR(vx[2], 1.0, 1e-15);
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const ControlledGateSpec spec = computational_spec(kPi * rng.uniform(), random_unit(rng));
    const auto v = spec.v();
    EXPECT_NEAR(v[0] * v[0] + v[1] * v[1] + v[2] * v[2], 1.0, 1e-12);
    EXPECT_NEAR(v[0] * spec.u[0] + v[1] * spec.u[1] + v[2] * spec.u[2], 0.0, 1e-12);
    const StateVector c0 = spec.chi0(), c1 = spec.chi1();
    EXPECT_LT((pauli_along(v) * c0 - c0).norm(), 1e-12);
    EXPECT_LT((pauli_along(v) * c1 + c1).norm(), 1e-12);
    EXPECT_LT((pauli_along(spec.u) * c0 - c1).norm(), 1e-12);
  }
}

TEST(ControlledGateSpec, TargetUnitaryMatchesExponential) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    ControlledGateSpec spec = computational_spec(kPi * rng.uniform(), random_unit(rng));
    spec.phase_phi = 2 * kPi * rng.uniform();
    // e^{i phi} exp(i theta/2 u.sigma) through the eigensolver.
    const ComplexMatrix oracle =
        std::polar(1.0, spec.phase_phi) * evolve(pauli_along(spec.u), -spec.theta / 2.0);
    EXPECT_LT(max_abs_diff(spec.v_t(), oracle), 1e-12);
    EXPECT_LT(spec.ideal_gate().unitarity_residual(), 1e-12);
    EXPECT_LT(spec.tilde_gate().unitarity_residual(), 1e-12);
  }
}

TEST(ControlledGateSpec, ConjugatedTargetObservable) {
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const ControlledGateSpec spec = computational_spec(kPi * rng.uniform(), random_unit(rng));
    const double c = std::cos(spec.theta / 2), s = std::sin(spec.theta / 2);
    const auto v = spec.v();
    const ComplexMatrix sv = pauli_along(v), svu = pauli_along(cross(v, spec.u));
    const ComplexMatrix vt = spec.v_t();
    EXPECT_LT(max_abs_diff(vt.adjoint() * (s * sv - c * svu) * vt, -s * sv - c * svu), 1e-12);
  }
}

TEST(ControlledGateSpec, RejectsBadInput) {
  ControlledGateSpec spec = computational_spec(1.0, {1.0, 1.0, 0.0});
  EXPECT_THROW(spec.validate(), PreconditionError);
  spec = computational_spec(4.0, {1.0, 0.0, 0.0});
  EXPECT_THROW(spec.validate(), PreconditionError);
  spec = computational_spec(1.0, {1.0, 0.0, 0.0});
  spec.phi1 = StateVector{1.0, 1.0}.normalized();
  EXPECT_THROW(spec.validate(), PreconditionError);
}

TEST(CuConstraints, ExactCzPasses) {
  const CzModel m = cz_model();
  const BoundReport r = cu_constraints(m.spec, m.sys);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.diagnostics.at("first_moment"), 1e-10);
  EXPECT_LE(r.diagnostics.at("second_moment"), 1e-10);
  EXPECT_EQ(r.labels.at("target"), "nontrivial");
  // |11><11| is seen by the control states, so neither assumption holds.
  EXPECT_EQ(r.labels.at("regime"), "unassumed");
}

TEST(CuConstraints, LibraryCzModelMatchesConstruction) {
  const CzModel m = cz_model();
  const ControlledModel lib = exact_cz_model();
  EXPECT_LT(max_abs_diff(lib.sys.unitary, m.sys.unitary), 1e-14);
  EXPECT_LT(max_abs_diff(lib.spec.ideal_gate(), m.spec.ideal_gate()), 1e-14);
  // diag(1, 1, -1, 1) written out.
  ComplexMatrix want = ComplexMatrix::identity(4);
  want(2, 2) = -1.0;
  EXPECT_LT(max_abs_diff(lib.sys.unitary, want), 1e-12);
  EXPECT_LT(max_abs_diff(lib.spec.ideal_gate(), want), 1e-12);
}

TEST(CuConstraints, MomentsMatchBruteForce) {
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    const ControlledGateSpec spec = random_spec(rng, 1.0);
    ControlledSystem sys;
    sys.h_c = random_hermitian(2, rng);
    sys.h_t = random_hermitian(2, rng);
    const BoundReport r = cu_constraints(spec, sys);
    const ComplexMatrix h2 = sys.h_c * sys.h_c;
    cplx m2 = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) m2 += std::conj(spec.phi0[a]) * h2(a, b) * spec.phi1[b];
    EXPECT_NEAR(r.diagnostics.at("second_moment"), std::abs(m2), 1e-12);
    EXPECT_EQ(r.labels.at("regime"), "strong");
    EXPECT_FALSE(r.pass);  // generic H_C forbids a nontrivial gate
  }
}

TEST(CuConstraints, OffDiagonalControlHamiltonianFails) {
  ControlledGateSpec spec = computational_spec(kPi, {1.0, 0.0, 0.0});
  ControlledSystem sys{pauli_x(), ComplexMatrix::zeros(2, 2), {}, {}};
  const BoundReport r = cu_constraints(spec, sys);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.rhs, 1.0, 1e-15);
}

TEST(CuConstraints, TrivialTargetIsUnconstrained) {
  ControlledGateSpec spec = computational_spec(0.0, {0.0, 0.0, 1.0});
  spec.phase_phi = 0.4;
  ControlledSystem sys{pauli_x(), ComplexMatrix::zeros(2, 2), {}, {}};
  const BoundReport r = cu_constraints(spec, sys);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.labels.at("target"), "trivial");
}

TEST(CuConstraints, RegimeClassification) {
  // Qutrit control, H_int coupling |0> to |2>: weak but not strong.
  ControlledGateSpec spec;
  spec.phi0 = StateVector::basis(3, 0);
  spec.phi1 = StateVector::basis(3, 1);
  spec.explicit_v_t = pauli_x();
  ComplexMatrix leak(3, 3);
  leak(0, 2) = 1.0;
  leak(2, 0) = 1.0;
  ControlledSystem sys{ComplexMatrix::diagonal(std::vector<double>{0, 1, 2}),
                       ComplexMatrix::zeros(2, 2), kron(leak, ComplexMatrix::identity(2)), {}};
  BoundReport r = cu_constraints(spec, sys);
  EXPECT_EQ(r.labels.at("regime"), "weak");
  EXPECT_FALSE(r.warnings.empty());
  // Supported on |2>: strong.
  ComplexMatrix p2(3, 3);
  p2(2, 2) = 1.0;
  sys.h_int = kron(p2, pauli_x());
  EXPECT_EQ(cu_constraints(spec, sys).labels.at("regime"), "strong");
  // |0><0| (x) sigma_x vanishes on target basis states but not on their
  // superpositions; the probe set must catch it.
  sys.h_int = kron(projector(StateVector::basis(3, 0)), pauli_x());
  r = cu_constraints(spec, sys);
  EXPECT_EQ(r.labels.at("regime"), "unassumed");
  EXPECT_NEAR(r.diagnostics.at("weak_residual_initial"), 1.0, 1e-12);
}

TEST(ControlMatrixElementIdentity, HoldsForExactCz) {
  const CzModel m = cz_model();
  Rng rng(13);
  std::vector<StateVector> pool;
  for (int i = 0; i < 50; ++i) pool.push_back(random_state(2, rng));
  const BoundReport r = wayone_identity_check(m.spec, m.sys, pool);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.rhs, 1e-9);
}

TEST(ControlMatrixElementIdentity, HoldsForTrivialGateWithNonzeroMoment) {
  // H_C = a I + n.sigma, H_int = 0: U = exp(-i tau H_C) (x) I realises V_T =
  // e^{i delta} I with phi_a' = U_C phi_a, phi_1' carrying e^{-i delta}.
  const double tau = 0.7, delta = 0.9;
  const ComplexMatrix hc = 0.3 * ComplexMatrix::identity(2) + 0.6 * pauli_x() - 0.2 * pauli_y() +
                           0.5 * pauli_z();
  const ComplexMatrix uc = evolve(hc, tau);
  ControlledGateSpec spec = computational_spec(0.0, {0.0, 0.0, 1.0});
  spec.phase_phi = delta;
  spec.phi0_prime = uc * spec.phi0;
  spec.phi1_prime = std::polar(1.0, -delta) * (uc * spec.phi1);
  ControlledSystem sys{hc, ComplexMatrix::zeros(2, 2), {}, kron(uc, ComplexMatrix::identity(2))};
  Rng rng(14);
  std::vector<StateVector> pool;
  for (int i = 0; i < 50; ++i) pool.push_back(random_state(2, rng));
  const BoundReport r = wayone_identity_check(spec, sys, pool);
  EXPECT_TRUE(r.pass) << r.rhs;
  EXPECT_GT(r.inputs.at("first_moment"), 0.5);
}

TEST(ControlMatrixElementIdentity, RefusesWrongGate) {
  CzModel m = cz_model();
  m.spec.u = {1.0, 0.0, 0.0};
  EXPECT_THROW(wayone_identity_check(m.spec, m.sys, {StateVector::basis(2, 0)}), PreconditionError);
}

// -------------------------------------------- two-qubit controlled gates

QuantumChannel perfect_channel(const ControlledGateSpec& spec, std::size_t anc, Rng& rng) {
  QuantumChannel ch;
  ch.layout = TensorLayout({{"C", 2}, {"T", 2}, {"A", anc}});
  ch.ancilla_labels = {"A"};
  ch.unitary = kron(spec.ideal_gate(), ComplexMatrix::identity(anc));
  ch.ancilla_init = random_state(anc, rng);
  return ch;
}

TEST(EnvComponents, OrthonormalAndFidelitiesMatchChannel) {
  Rng rng(21);
  for (int i = 0; i < 30; ++i) {
    Rng sub = rng.split(i);
    const TwoQubitImplementation impl = random_two_qubit_implementation(sub, 2 + i % 3);
    const ControlledGateSpec spec = random_spec(sub, kPi * sub.uniform());
    const EnvComponents env = env_components(impl.channel, spec);
    EXPECT_LE(env.orthonormality_residual, 1e-10);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        double total = 0.0;
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) total += std::pow(env.at(a, b, c, d).norm(), 2);
        EXPECT_NEAR(total, 1.0, 1e-10);
      }
    }
    const auto F = basis_fidelities(env, spec, false);
    const auto f = basis_fidelities(env, spec, true);
    const std::array<StateVector, 2> phi{spec.phi0, spec.phi1};
    const std::array<StateVector, 2> chi{spec.chi0(), spec.chi1()};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const StateVector in = kron(phi[a], chi[b]);
        EXPECT_NEAR(F[a][b], state_fidelity(impl.channel, spec.ideal_gate(), in), 1e-10);
        EXPECT_NEAR(f[a][b], state_fidelity(impl.channel, spec.tilde_gate(), in), 1e-10);
      }
    }
  }
}

TEST(TwoQubitChain, PerfectImplementationFixedPoint) {
  Rng rng(22);
  for (int i = 0; i < 20; ++i) {
    ControlledGateSpec spec = computational_spec(kPi * rng.uniform(), random_unit(rng));
    spec.phase_phi = 2 * kPi * rng.uniform();
    const QuantumChannel ch = perfect_channel(spec, 2, rng);
    // Diagonal H_C and H_T along u commute with U_CU.
    const ComplexMatrix hc = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
    const AppendixDReport r = appendix_d_check(ch, spec, hc, pauli_along(spec.u),
                                               ComplexMatrix::zeros(2, 2), random_state(2, rng));
    EXPECT_LE(r.delta_cc, 1e-10);
    EXPECT_NEAR(r.delta_tc * r.delta_tc, std::pow(std::cos(spec.theta / 2), 2), 1e-10);
    for (const BoundReport& c : r.checks()) EXPECT_TRUE(c.pass) << c.name;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) EXPECT_NEAR(r.fidelity[a][b], 1.0, 1e-12);
  }
}

TEST(TwoQubitChain, RandomConservingImplementations) {
  Rng rng(23);
  double worst_unc = 1e300, worst_chain = 1e300;
  for (int i = 0; i < 200; ++i) {
    Rng sub = rng.split(i);
    const TwoQubitImplementation impl = random_two_qubit_implementation(sub, 2 + i % 3);
    const ControlledGateSpec spec = random_spec(sub, kPi * sub.uniform());
    const AppendixDReport r = appendix_d_check(impl.channel, spec, impl.h_c, impl.h_t,
                                               impl.h_a, random_state(2, sub));
    const auto checks = r.checks();
    worst_unc = std::min(worst_unc, checks[0].slack);
    worst_chain = std::min(worst_chain, checks[1].slack);
    EXPECT_GE(checks[0].slack, -1e-9) << i;
    EXPECT_GE(checks[1].slack, -1e-9) << i;
    EXPECT_LE(r.orthonormality_residual, 1e-10);
  }
  RecordProperty("worst_uncertainty_slack", std::to_string(worst_unc));
  RecordProperty("worst_chain_slack", std::to_string(worst_chain));
}

TEST(TwoQubitChain, RefusesNonConservingUnitary) {
  Rng rng(24);
  TwoQubitImplementation impl = random_two_qubit_implementation(rng, 2);
  impl.channel.unitary = random_unitary(8, rng);
  const ControlledGateSpec spec = computational_spec(1.0, {1.0, 0.0, 0.0});
  EXPECT_THROW(appendix_d_check(impl.channel, spec, impl.h_c, impl.h_t, impl.h_a,
                                StateVector::basis(2, 0)),
               PreconditionError);
}

TEST(TwoQubitBound, ClosedForms) {
  const ControlledGateSpec spec = computational_spec(kPi, {1.0, 0.0, 0.0});
  const ComplexMatrix z2 = ComplexMatrix::zeros(2, 2);
  EXPECT_NEAR(two_qubit_bound_rhs(spec, pauli_x(), z2, z2), 1.0 / 16.0, 1e-15);
  EXPECT_NEAR(two_qubit_bound_rhs(computational_spec(0.0, {1, 0, 0}), pauli_x(), z2, z2), 0.0,
              1e-15);
  EXPECT_NEAR(two_qubit_bound_rhs(spec, pauli_z(), z2, z2), 0.0, 1e-15);
  EXPECT_NEAR(two_qubit_bound_rhs(spec, z2, z2, z2), 0.0, 1e-15);
  // ||H_A|| enters the denominator.
  EXPECT_NEAR(two_qubit_bound_rhs(spec, pauli_x(), z2, 2.0 * pauli_z()), 4.0 / (16.0 * 16.0),
              1e-15);
}

TEST(TwoQubitBound, CbWitnessReachesBound) {
  Rng rng(25);
  OptimizerConfig cfg;
  cfg.starts = 4;
  cfg.max_iters = 300;
  cfg.restarts = 1;
  for (int i = 0; i < 3; ++i) {
    Rng sub = rng.split(i);
    const TwoQubitImplementation impl = random_two_qubit_implementation(sub, 2);
    const ControlledGateSpec spec = computational_spec(kPi, {1.0, 0.0, 0.0});
    const BoundReport r = two_qubit_cb_check(impl, spec, cfg);
    EXPECT_GT(r.rhs, 0.0);
    EXPECT_TRUE(r.pass) << r.lhs << " vs " << r.rhs;
  }
}

}  // namespace
}  // namespace waybound
