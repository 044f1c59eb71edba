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

// Channels E(rho) = Tr_anc[U (rho (x) |xi><xi|) U^dag] and the distances used
// to compare them with an ideal unitary.
//
// With the ancilla factors trailing, W = U (I (x) |xi>) is an isometry from
// the system into system (x) ancilla, and the Kraus operators are its row
// blocks K_k(s, s') = W(s * n_anc + k, s'). Pure-state metrics work on W
// directly and never form the joint density matrix.

#ifndef WAYBOUND_CHANNEL_HPP_
#define WAYBOUND_CHANNEL_HPP_

#include <string>
#include <vector>

#include "waybound/linalg.hpp"
#include "waybound/optimize.hpp"
#include "waybound/report.hpp"

namespace waybound {

struct QuantumChannel {
  TensorLayout layout;
  std::vector<std::string> ancilla_labels;  // trailing factors
  ComplexMatrix unitary;
  StateVector ancilla_init;

  /// U unitary within 1e-10, ancilla_init normalized within 1e-10, ancilla
  /// labels a suffix of the layout.
  void validate() const;

  std::vector<std::string> system_labels() const;
  std::size_t system_dim() const;
  std::size_t ancilla_dim() const;
  /// W = U (I (x) |xi>), shape (system * ancilla) x system.
  ComplexMatrix isometry() const;
  std::vector<ComplexMatrix> kraus() const;
};

/// Tr_anc[U (rho (x) xi xi^dag) U^dag]. rho must be a density matrix on the
/// system within 1e-9.
ComplexMatrix apply_channel(const QuantumChannel& ch, const ComplexMatrix& rho);
/// Same map through the Kraus operators.
ComplexMatrix apply_channel_kraus(const QuantumChannel& ch, const ComplexMatrix& rho);

/// (1/2) ||rho1 - rho2||_1.
double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// F(psi) = <psi| U_ideal^dag E(psi psi^dag) U_ideal |psi>^(1/2).
double state_fidelity(const QuantumChannel& ch, const ComplexMatrix& ideal,
                      const StateVector& psi);

/// D((E (x) I)(psi psi^dag), (U_ideal (x) I) psi psi^dag (...)^dag) for psi on
/// system (x) reference, reference dimension psi.dim() / system_dim.
double extended_output_distance(const QuantumChannel& ch, const ComplexMatrix& ideal,
                                const StateVector& psi);

MetricEstimate gate_fidelity_inf(const QuantumChannel& ch, const ComplexMatrix& ideal,
                                 const OptimizerConfig& cfg = {},
                                 const std::vector<StateVector>& extra_starts = {});

/// reference_dim 0 means system_dim.
MetricEstimate cb_distance_lower(const QuantumChannel& ch, const ComplexMatrix& ideal,
                                 const OptimizerConfig& cfg = {},
                                 std::size_t reference_dim = 0,
                                 const std::vector<StateVector>& extra_starts = {});

/// Pointwise D(psi) >= 1 - F(psi)^2 over the pool, and a CB estimate seeded
/// with the pool (as psi (x) |0>_ref) that must dominate every pointwise D.
/// The report carries the tighter of the two checks.
BoundReport metric_chain_check(const QuantumChannel& ch, const ComplexMatrix& ideal,
                               const std::vector<StateVector>& psi_pool,
                               const OptimizerConfig& cfg = {},
                               double tolerance = 1e-9);

}  // namespace waybound

#endif  // WAYBOUND_CHANNEL_HPP_
