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

// Multi-start downhill simplex over normalized pure states.
//
// A state of dimension d is parameterized by d - 1 hyperspherical angles for
// the magnitudes and d - 1 relative phases:
//
//   |psi_0| = cos t_1, |psi_k| = sin t_1 ... sin t_k cos t_{k+1},
//   arg psi_0 = 0,     arg psi_k = f_k.
//
// The map is onto the projective space, so an unconstrained search over
// 2d - 2 reals covers every pure state.

#ifndef WAYBOUND_OPTIMIZE_HPP_
#define WAYBOUND_OPTIMIZE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "waybound/linalg.hpp"

namespace waybound {

enum class Direction { kMinimize, kMaximize };

struct OptimizerConfig {
  std::size_t starts = 32;
  /// Simplex iterations per run.
  std::size_t max_iters = 500;
  /// Converged once every vertex is within this of the best (max norm).
  double tolerance = 1e-10;
  /// Fresh simplex re-initializations from the best vertex after a run.
  std::size_t restarts = 4;
  std::uint64_t seed = 0;
};

struct MetricEstimate {
  double value = 0.0;
  StateVector witness;
  std::size_t starts = 0;
  /// Total simplex iterations over all starts.
  std::size_t iterations = 0;
  /// True when the winning start met the parameter tolerance.
  bool converged = false;
  std::size_t best_start = 0;
  /// Which side of the true extremum the value lies on.
  std::string contract;
};

std::vector<double> state_to_params(const StateVector& psi);
StateVector params_to_state(const std::vector<double>& params, std::size_t dim);

using StateObjective = std::function<double(const StateVector&)>;

/// Extra starts run first and count towards `starts` in the estimate. Random
/// start k draws from Rng(seed).split(k), so raising `starts` only adds
/// candidates. Throws NumericalError on a non-finite objective value.
MetricEstimate optimize_pure_state(const StateObjective& objective, std::size_t dim,
                                   Direction direction, const OptimizerConfig& cfg,
                                   const std::vector<StateVector>& extra_starts = {});

}  // namespace waybound

#endif  // WAYBOUND_OPTIMIZE_HPP_
