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

// Hamiltonians, exact evolution and conservation residuals. Units have
// hbar = 1. Evolution always goes through the spectral decomposition, so
// [exp(-i tau H), H] vanishes to rounding.

#ifndef WAYBOUND_DYNAMICS_HPP_
#define WAYBOUND_DYNAMICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "waybound/config.hpp"
#include "waybound/linalg.hpp"
#include "waybound/random.hpp"

namespace waybound {

struct FreeTerm {
  std::string label;
  ComplexMatrix op;
  double coefficient = 1.0;
};

/// op acts on the tensor product of `labels` in the listed order.
struct InteractionTerm {
  std::vector<std::string> labels;
  ComplexMatrix op;
  double coefficient = 1.0;
};

struct HamiltonianSpec {
  TensorLayout layout;
  std::vector<FreeTerm> free_terms;
  std::vector<InteractionTerm> interaction_terms;

  /// Labels exist, dimensions fit, every term Hermitian within 1e-12.
  void validate() const;
};

ComplexMatrix build_hamiltonian(const HamiltonianSpec& spec);

/// Split of a Hamiltonian relative to a bipartition of the layout: terms
/// supported only on `first` labels, only on the rest, and the remainder.
struct HamiltonianParts {
  ComplexMatrix first;
  ComplexMatrix second;
  ComplexMatrix interaction;
};
HamiltonianParts split_hamiltonian(const HamiltonianSpec& spec,
                                   const std::vector<std::string>& first);

/// Writes `spec` under `prefix` (e.g. "hamiltonian.") as flat keys;
/// operators are inline JSON matrices.
void hamiltonian_to_config(const HamiltonianSpec& spec, const std::string& prefix,
                           KeyValueConfig& out);
HamiltonianSpec hamiltonian_from_config(const KeyValueConfig& cfg,
                                        const std::string& prefix);

ComplexMatrix evolve(const ComplexMatrix& h, double tau);
/// Reuses a decomposition when one Hamiltonian is evolved many times.
ComplexMatrix evolve(const EigenDecomposition& eig, double tau);

/// Operator norm of uq - qu.
double conservation_residual(const ComplexMatrix& u, const ComplexMatrix& q);

/// Groups ascending eigenvalues whose neighbours differ by at most tol.
std::vector<std::vector<std::size_t>> eigen_groups(const std::vector<double>& values,
                                                   double tol = 1e-9);

/// Haar unitary inside each eigenspace of l, no coupling between distinct
/// eigenvalues.
ComplexMatrix block_conserving_unitary(const ComplexMatrix& l, Rng& rng);
ComplexMatrix block_conserving_unitary(const ComplexMatrix& l, std::uint64_t seed);

/// Conserved quantity of a measurement model. Additive: L = L_S (x) I + I (x)
/// L_D with L_S on the system factors and L_D on the probe factors. Energy:
/// the full Hamiltonian.
struct ConservationSpec {
  enum class Kind { kAdditive, kEnergy };
  Kind kind = Kind::kAdditive;
  ComplexMatrix l_system;
  ComplexMatrix l_probe;
  HamiltonianSpec hamiltonian;

  static ConservationSpec additive(ComplexMatrix l_system, ComplexMatrix l_probe);
  static ConservationSpec energy(HamiltonianSpec spec);

  /// L or H on the full space, for a system-first bipartition.
  ComplexMatrix total() const;
  void validate() const;
};

}  // namespace waybound

#endif  // WAYBOUND_DYNAMICS_HPP_
