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

// Indirect measurement models and the error-disturbance and
// Wigner-Araki-Yanase bounds built on them.
//
// A model couples a system to a probe with a unitary U, reads a meter M on
// one factor afterwards and compares it with an observable A of the system
// before. On the joint initial state Psi0 = input (x) xi:
//
//   error        eps(A) = || (U^dag M U - A) Psi0 ||
//   disturbance  eta(B) = || (U^dag B U - B) Psi0 ||
//
// All observables are embedded on the full layout before use. The system
// factors are a prefix of the layout, so Psi0 is a plain Kronecker product.

#ifndef WAYBOUND_MEASUREMENT_HPP_
#define WAYBOUND_MEASUREMENT_HPP_

#include <string>
#include <utility>
#include <vector>

#include "waybound/dynamics.hpp"
#include "waybound/linalg.hpp"
#include "waybound/report.hpp"

namespace waybound {

struct IndirectMeasurementModel {
  TensorLayout layout;
  std::vector<std::string> system_labels;  // leading factors
  ComplexMatrix unitary;
  StateVector probe_init;  // on the remaining factors, layout order
  std::string meter_label;
  ComplexMatrix meter;
  std::string measured_label;
  ComplexMatrix measured;

  /// Invariants: U unitary within 1e-10, meter and measured Hermitian within
  /// 1e-12, probe_init normalized, measured on a system factor.
  void validate() const;

  std::vector<std::string> probe_labels() const;
  std::size_t system_dim() const;
  std::size_t probe_dim() const;
  StateVector initial_state(const StateVector& input) const;
  ComplexMatrix meter_full() const;
  ComplexMatrix measured_full() const;
  ComplexMatrix embed_on(const ComplexMatrix& op, const std::string& label) const;
  /// Operator on all system factors extended by the probe identity.
  ComplexMatrix system_full(const ComplexMatrix& op) const;
  /// Operator on all probe factors extended by the system identity.
  ComplexMatrix probe_full(const ComplexMatrix& op) const;
};

struct NoiseReport {
  double epsilon = 0.0;
  double eta = 0.0;
  double sigma_A = 0.0;
  double sigma_B = 0.0;
  double lhs = 0.0;  // eps eta + eps sigma_B + sigma_A eta
  double rhs = 0.0;  // |<[A, B]>| / 2
  double slack = 0.0;
};

/// E = U^dag M U - A and D = U^dag B U - B on the full space. b acts on
/// b_label (the measured factor when empty).
std::pair<ComplexMatrix, ComplexMatrix> noise_operators(
    const IndirectMeasurementModel& model, const ComplexMatrix& b,
    const std::string& b_label = "");

NoiseReport epsilon_eta(const IndirectMeasurementModel& model,
                        const ComplexMatrix& b, const StateVector& input,
                        const std::string& b_label = "");

/// eps(A) alone, without forming E.
double measurement_error(const IndirectMeasurementModel& model,
                         const StateVector& input);

struct PovmElement {
  double outcome = 0.0;
  ComplexMatrix element;
};

/// E_m = <xi| U^dag P_m U |xi> on the system, one per distinct meter
/// eigenvalue (grouped within 1e-9), ascending.
std::vector<PovmElement> povm_elements(const IndirectMeasurementModel& model);

/// eps eta + eps sigma(B) + sigma(A) eta >= |<[A, B]>| / 2.
BoundReport ozawa_check(const IndirectMeasurementModel& model,
                        const ComplexMatrix& b, const StateVector& input,
                        const std::string& b_label = "", double tolerance = 1e-9);

/// eps^2 >= |<[A, L_S]>|^2 / (4 sigma(L_S)^2 + 4 sigma(L_D)^2). Refuses with
/// PreconditionError when ||[U, L]|| > 1e-8 or ||[M, L]|| > 1e-10.
BoundReport way_additive_check(const IndirectMeasurementModel& model,
                               const ConservationSpec& cons,
                               const StateVector& input, double tolerance = 1e-9);

/// Measurement model generated by H = H_I + H_II + H_int over a time tau,
/// with all three parts stored on the full space.
struct EnergyMeasurementModel {
  IndirectMeasurementModel model;
  ComplexMatrix h_system;
  ComplexMatrix h_probe;
  ComplexMatrix h_interaction;
  double tau = 0.0;

  ComplexMatrix hamiltonian() const;
};

/// Builds U = exp(-i tau H) from the spec; `eig` may carry a precomputed
/// decomposition of the full Hamiltonian.
EnergyMeasurementModel make_energy_model(
    const HamiltonianSpec& spec, const std::vector<std::string>& system_labels,
    double tau, const StateVector& probe_init, const std::string& meter_label,
    const ComplexMatrix& meter, const std::string& measured_label,
    const ComplexMatrix& measured, const EigenDecomposition* eig = nullptr);

/// r0 = ||H_int Psi0|| and r_tau = ||H_int U Psi0||: how far the initial and
/// final states are from the interaction-free region.
struct InteractionResiduals {
  double r0 = 0.0;
  double r_tau = 0.0;
};
InteractionResiduals interaction_residuals(const EnergyMeasurementModel& em,
                                           const StateVector& input);

struct EnergyCheckOptions {
  double base_tolerance = 1e-6;
  /// Reports gain a warning when r0 + r_tau exceeds this.
  double residual_ceiling = 1e-6;
  bool check_conservation = true;
};

/// eps^2 >= |<[A, H_I]>|^2 / (4 sigma(H_I)^2 + 4 sigma(H_II)^2). The
/// tolerance is base + 2 (r0 + r_tau) ||M||.
BoundReport way_energy_check(const EnergyMeasurementModel& em,
                             const StateVector& input,
                             const EnergyCheckOptions& options = {});

/// eps^2 >= |<[A, <xi|H|xi>]>|^2 / (4 sigma(H)^2), where the inner
/// Hamiltonian is H averaged over the probe state. Requires the evolved
/// meter and U to commute with H within 1e-8.
BoundReport weak_yanase_check(const IndirectMeasurementModel& model,
                              const ComplexMatrix& h_full,
                              const StateVector& input, double tolerance = 1e-9);

/// Third particle read out after the measurement: a pointer on a periodic
/// grid with position q_j = j - N/2 and its discrete-Fourier conjugate P.
/// The readout coupling is exp(-i (tau' - tau) k M (x) P).
struct PointerProbeConfig {
  std::size_t pointer_dim = 0;
  ComplexMatrix q;
  ComplexMatrix p;
  StateVector pointer_init;
  double tau_prime_minus_tau = 1.0;
  double k = 1.0;
  /// Free pointer Hamiltonian over [0, tau]; empty means zero.
  ComplexMatrix h_pointer;

  void validate() const;
};

/// Discrete Gaussian pointer of the given position spread centred at q = 0.
PointerProbeConfig make_pointer_config(std::size_t pointer_dim, double spread,
                                       double tau_prime_minus_tau = 1.0);

struct PointerProbeReport {
  double alpha = 0.0;             // ||Q U_III zeta||
  double alpha_definition = 0.0;  // ||(U'^dag Q U' - M) Phi_tau||
  double beta = 0.0;
  double eta_h0 = 0.0;
  double epsilon_direct = 0.0;
  double r0 = 0.0;
  double r_tau = 0.0;
  double yanase_residual = 0.0;   // ||[M, H_I + H_II]||

  /// beta <= alpha + eps, |beta - eps| <= alpha, eta_h0 <= 1e-9.
  std::vector<BoundReport> checks(double tolerance = 1e-9) const;
};

/// PreconditionError when the scaled meter spectrum is not integral.
PointerProbeReport pointer_probe(const EnergyMeasurementModel& em,
                                 const StateVector& input,
                                 const PointerProbeConfig& cfg);

// Seeded model families. All use a system qubit "S" and a probe "D" of
// random dimension in [2, probe_dim_max].

/// Haar U, random Hermitian meter and measured observable, random probe
/// state.
IndirectMeasurementModel random_measurement_model(Rng& rng,
                                                  std::size_t probe_dim_max = 8);

struct ConservingModel {
  IndirectMeasurementModel model;
  ConservationSpec cons;
};
/// L = sigma_z (x) I + I (x) diag(integers in [-2, 2]); U Haar inside each
/// eigenspace of L; meter block-diagonal in the eigenspaces of L_D.
ConservingModel random_conserving_model(Rng& rng, std::size_t probe_dim_max = 8);

struct WeakYanaseModel {
  IndirectMeasurementModel model;
  ComplexMatrix hamiltonian;
};
/// Meter with a degenerate +-1 spectrum, H block-diagonal in its eigenspaces
/// with degenerate integer spectra, U Haar inside each eigenspace of H.
WeakYanaseModel random_weak_yanase_model(Rng& rng, std::size_t probe_dim_max = 8);

/// Energy-form model with H_int = 0: H_I = V diag(0, 1) V^dag on S, H_II and
/// the meter diagonal with integers in [-1, 1] on D, tau = 1 and U Haar
/// inside each eigenspace of H_I + H_II. The integer spectra make the blocks
/// mix S with D, and the meter suits a pointer readout.
EnergyMeasurementModel random_energy_model(Rng& rng, std::size_t probe_dim_max = 8);

}  // namespace waybound

#endif  // WAYBOUND_MEASUREMENT_HPP_
