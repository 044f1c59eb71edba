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

// Gate-level consequences of the conservation bounds: SWAP and Hadamard
// fidelity limits, necessary conditions on the control Hamiltonian of a
// controlled gate, and the two-qubit CB-distance bound.

#ifndef WAYBOUND_GATE_BOUNDS_HPP_
#define WAYBOUND_GATE_BOUNDS_HPP_

#include <array>
#include <string>
#include <vector>

#include "waybound/channel.hpp"
#include "waybound/linalg.hpp"
#include "waybound/measurement.hpp"
#include "waybound/report.hpp"

namespace waybound {

// ------------------------------------------------------------------- SWAP

/// b^2 |<sigma_y>|^2 / (b^2 sigma(sigma_x)^2 + sigma_p^2) on the spin state
/// chi. UndefinedBoundError when the denominator vanishes.
double swap_way_rhs(double b, const StateVector& chi, double sigma_p);

struct GSurfaceQuery {
  double r = 0.0;      // in [0, 1/2]
  double theta = 0.0;  // in [0, 2 pi)
  double b = 0.0;
  double sigma_p = 0.0;
};

/// G(r, theta) = 4 b^2 r^2 sin^2 theta / (b^2 (1 - 4 r^2 cos^2 theta) + sigma_p^2).
double g_surface(const GSurfaceQuery& q);

struct GSurfaceMax {
  double value = 0.0;
  double r = 0.0;
  double theta = 0.0;
  std::size_t evaluations = 0;
};

/// Grid search (r_points x theta_points, deliberately not containing pi/2)
/// followed by alternating golden-section refinement in r and theta.
GSurfaceMax g_surface_max(double b, double sigma_p, std::size_t r_points = 101,
                          std::size_t theta_points = 257);

/// 1 - b^2 / (4 b^2 + 4 sigma_p^2), an upper bound on F_SWAP^2.
double swap_fidelity_bound(double b, double sigma_p);

/// 1 + 2 (|c_10||c_11| + |c_00||c_01|) for a state on S (x) D, c_{alpha beta}
/// with alpha on S.
double swap_coefficient_factor(const StateVector& psi_sd);

/// The two-qubit SWAP gate.
ComplexMatrix swap_gate();

// --------------------------------------------------------------- Hadamard

/// 1 / (4 + 16 sigma(L_x)^2).
double hadamard_bound_rhs(double sigma_lx);

/// Spin-j generators (J_x, J_y, J_z) of dimension 2j + 1.
std::array<ComplexMatrix, 3> spin_operators(std::size_t dim);

struct HadamardModel {
  IndirectMeasurementModel model;
  ConservationSpec cons;
};

/// Spin-1/2 S and spin-j D with L = s_x + J_x, U Haar inside each eigenspace
/// of L, meter s_x on S (the gate output), measured s_z on S.
HadamardModel random_hadamard_model(Rng& rng, std::size_t probe_dim);

/// eps(s_z)^2 >= 1 / (4 + 16 sigma(L_x)^2) on the s_y eigenstate. The
/// additive conservation check is reported in the diagnostics, together with
/// the estimate 1 - F_H^2 from gate_fidelity_inf (not asserted).
BoundReport hadamard_check(const HadamardModel& hm, const OptimizerConfig* fidelity_cfg = nullptr,
                           double tolerance = 1e-9);

// ----------------------------------------------------- controlled gates

/// Controlled gate |phi_0><phi_0| -> |phi_0'>, |phi_1> -> |phi_1'> V_T.
/// On a qubit target V_T = e^{i phi} (cos(theta/2) I + i sin(theta/2) u.sigma);
/// a non-empty explicit_v_t replaces it (any target dimension).
struct ControlledGateSpec {
  StateVector phi0;
  StateVector phi1;
  StateVector phi0_prime;  // empty means phi0
  StateVector phi1_prime;  // empty means phi1
  double theta = 0.0;
  double phase_phi = 0.0;
  std::array<double, 3> u{1.0, 0.0, 0.0};
  ComplexMatrix explicit_v_t;

  /// <phi0|phi1> = 0 within 1e-12 (and for the primed pair), |u| = 1 within
  /// 1e-12, theta in [0, pi], phase in [0, 2 pi).
  void validate() const;

  std::size_t control_dim() const { return phi0.dim(); }
  std::size_t target_dim() const;
  const StateVector& final0() const { return phi0_prime.dim() ? phi0_prime : phi0; }
  const StateVector& final1() const { return phi1_prime.dim() ? phi1_prime : phi1; }

  ComplexMatrix v_t() const;
  /// Unit vector orthogonal to u: the pre-image of +z under the minimal
  /// rotation taking u to +x; +z when u is parallel to x.
  std::array<double, 3> v() const;
  ComplexMatrix sigma_l() const;
  ComplexMatrix sigma_l_prime() const;
  /// +1 eigenvector of v.sigma; chi1 = (u.sigma) chi0.
  StateVector chi0() const;
  StateVector chi1() const;
  /// U_CU on C (x) T. Requires {phi0, phi1} to span C.
  ComplexMatrix ideal_gate() const;
  /// Gate with V_T(pi + theta) on phi0 and V_T(pi) on phi1 (qubit target).
  ComplexMatrix tilde_gate() const;
};

ComplexMatrix pauli_along(const std::array<double, 3>& n);
std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b);

/// Control/target system with H = H_C + H_T + H_int; the unitary is optional
/// (needed for the evolved half of the weak assumption).
struct ControlledSystem {
  ComplexMatrix h_c;
  ComplexMatrix h_t;
  ComplexMatrix h_int;    // on C (x) T
  ComplexMatrix unitary;  // on C (x) T, may be empty
  ComplexMatrix hamiltonian() const;
};

/// Exact controlled-Z from H = diag(0, 1)_C + |11><11| over tau = pi, where
/// U = |0><0| (x) I + (-|1><1|) (x) Z: theta = pi, u = z, phi = 3 pi / 2 and
/// phi1' = -|1>.
struct ControlledModel {
  ControlledGateSpec spec;
  ControlledSystem sys;
};
ControlledModel exact_cz_model();

/// Random control basis (and, half of the time, a random primed basis),
/// uniform phase and Gaussian-isotropic axis; the control is a qubit.
ControlledGateSpec random_controlled_spec(Rng& rng, double theta);

/// Target states on which the assumptions are evaluated: the basis plus
/// (e_i + e_j)/sqrt2 and (e_i + i e_j)/sqrt2. By polarization a sesquilinear
/// form vanishing on this set vanishes on every target state.
std::vector<StateVector> target_probe_states(std::size_t dim);

/// Moments |<phi0|H_C|phi1>| and |<phi0|H_C^2|phi1>| and the residuals of the
/// weak (expectations of H_int before and after U over superpositions of
/// phi0, phi1) and strong (H_int annihilating phi_a (x) psi and
/// phi_a' (x) psi) assumptions. For a nontrivial V_T the first moment must
/// be <= tolerance, and the second as well under the strong assumption; for
/// V_T proportional to I nothing is required.
BoundReport cu_constraints(const ControlledGateSpec& spec, const ControlledSystem& sys,
                           const std::vector<StateVector>& target_states = {},
                           double tolerance = 1e-10);

/// <phi0|H_C|phi1> = <phi0'|H_C|phi1'> <psi|V_T|psi> over the pool. Requires
/// U to match U_CU on a basis within 1e-9 and [H, U] <= 1e-9.
BoundReport wayone_identity_check(const ControlledGateSpec& spec, const ControlledSystem& sys,
                                  const std::vector<StateVector>& psi_pool,
                                  double tolerance = 1e-9);

// -------------------------------------------- two-qubit controlled gates

/// E[a][b][c][d] = (<phi_c'| <chi_d| (x) I_A) U |phi_a, chi_b, xi>.
struct EnvComponents {
  using Table = std::array<std::array<std::array<std::array<StateVector, 2>, 2>, 2>, 2>;
  Table e;
  /// max |sum_jk <E^{ab}_{jk}|E^{cd}_{jk}> - delta_ac delta_bd|.
  double orthonormality_residual = 0.0;

  const StateVector& at(int a, int b, int c, int d) const { return e[a][b][c][d]; }
};

/// The channel system must be the factors "C" then "T" (qubits).
EnvComponents env_components(const QuantumChannel& ch, const ControlledGateSpec& spec);

/// F(|a,b>) against U_CU and f(|a,b>) against the tilde gate, from the
/// components.
std::array<std::array<double, 2>, 2> basis_fidelities(const EnvComponents& env,
                                                      const ControlledGateSpec& spec,
                                                      bool tilde);

struct AppendixDReport {
  double delta_cc = 0.0;
  double delta_tc = 0.0;
  double gamma = 0.0;
  double norm_ha = 0.0;
  double delta_ha_prime = 0.0;  // standard deviation of H_A after U
  double commutator = 0.0;      // |<[sin(theta/2) sigma(l), H_C]>|
  double lhs_uncertainty = 0.0; // commutator^2 / (2 (2 gamma + delta_ha_prime)^2)
  double rhs_uncertainty = 0.0; // delta_tc^2 + delta_cc^2
  double chain_rhs = 0.0;       // 4|c0|^2(1-f00^2) + 4|c1|^2(1-F10^2) + ...
  std::array<std::array<double, 2>, 2> fidelity{};        // F(|a,b>)
  std::array<std::array<double, 2>, 2> tilde_fidelity{};  // f(|a,b>)
  double conservation_residual = 0.0;
  double orthonormality_residual = 0.0;

  /// "appendix_d_uncertainty" and "appendix_d_fidelity_chain".
  std::vector<BoundReport> checks(double tolerance = 1e-9) const;
};

/// Input psi_C (x) chi0 (x) xi. H_int (on the full layout) may be empty.
/// Requires ||[U, H_C + H_T + H_A + H_int]|| <= 1e-9.
AppendixDReport appendix_d_check(const QuantumChannel& ch, const ControlledGateSpec& spec,
                                 const ComplexMatrix& h_c, const ComplexMatrix& h_t,
                                 const ComplexMatrix& h_a, const StateVector& psi_c,
                                 const ComplexMatrix& h_int = {});

/// sin^2(theta/2) ||[sigma(l), H_C]||^2 / (16 (2 gamma + ||H_A||)^2), with
/// gamma = max(||H_C||, ||H_T||); 0 when numerator and denominator vanish.
double two_qubit_bound_rhs(const ControlledGateSpec& spec, const ComplexMatrix& h_c,
                           const ComplexMatrix& h_t, const ComplexMatrix& h_a);

/// Random energy-conserving implementation on C, T qubits and an ancilla of
/// dimension anc_dim: integer-spectrum H_C (rotated), H_T, H_A, and U Haar
/// inside each eigenspace of their sum.
struct TwoQubitImplementation {
  QuantumChannel channel;
  ComplexMatrix h_c;  // on C
  ComplexMatrix h_t;  // on T
  ComplexMatrix h_a;  // on A
};
TwoQubitImplementation random_two_qubit_implementation(Rng& rng, std::size_t anc_dim);

/// D_CB lower estimate against U_CU compared with sqrt(rhs): passes when the
/// witness reaches sqrt(rhs) - tolerance.
/// U_CU (x) I_A with a random ancilla state: the perfect implementation.
QuantumChannel perfect_two_qubit_channel(const ControlledGateSpec& spec, std::size_t anc_dim,
                                         Rng& rng);

BoundReport two_qubit_cb_check(const TwoQubitImplementation& impl,
                               const ControlledGateSpec& spec,
                               const OptimizerConfig& cfg = {}, double tolerance = 1e-3);

}  // namespace waybound

#endif  // WAYBOUND_GATE_BOUNDS_HPP_
