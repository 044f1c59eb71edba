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

// Discretized Coleman-Hepp scattering: a spin S at rest, a photon with spin
// D and orbital O_II, H = b sigma_x(S) + p_x + g (sigma.sigma - I) (x) w(x).
//
// The orbital lives on a positive momentum grid p_n = p_min + n dp. Position
// amplitudes on x_j = j L / N, L = 2 pi / dp, come from the unitary transform
// psi_j = sum_n e^{+i p_n x_j} a_n / sqrt(N) (so the forward transform carries
// e^{-ipx}). The nucleus orbital O_I is a one-dimensional factor.
//
// Layout: [O_I(1), S(2), D(2), O_II(N)].

#ifndef WAYBOUND_SCATTERING_HPP_
#define WAYBOUND_SCATTERING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "waybound/channel.hpp"
#include "waybound/dynamics.hpp"
#include "waybound/measurement.hpp"
#include "waybound/optimize.hpp"
#include "waybound/report.hpp"

namespace waybound {

struct PhotonGrid {
  std::size_t n_modes = 0;
  double p_min = 0.0;
  double dp = 0.0;
  std::vector<double> momenta;

  double length() const;
  double dx() const;
  std::vector<double> positions() const;
  ComplexMatrix momentum_operator() const;
  /// F(j, n) = e^{i p_n x_j} / sqrt(N): momentum amplitudes to position.
  ComplexMatrix fourier() const;
  /// F^dag diag(f) F.
  ComplexMatrix position_function(const std::vector<double>& f) const;
  ComplexMatrix position_operator() const;
  StateVector to_position(const StateVector& a) const;
};

PhotonGrid build_photon_grid(std::size_t n_modes, double p_min, double dp);

struct WavepacketSpec {
  double p0 = 0.0;
  double sigma_p = 0.0;
  double x0 = 0.0;
};

/// a_n proportional to exp(-(p_n - p0)^2 / (4 sigma_p^2) - i p_n x0). Refuses
/// when the continuous Gaussian puts more than 1e-10 outside the grid band.
StateVector gaussian_wavepacket(const PhotonGrid& grid, const WavepacketSpec& spec);

enum class WindowProfile { kRectangular, kSmoothBump };

std::string to_string(WindowProfile p);
WindowProfile window_profile_from_string(const std::string& s);

struct WindowSpec {
  double center = 0.0;
  double width = 0.0;
  WindowProfile profile = WindowProfile::kRectangular;
  double amplitude = 1.0;
};

/// Rectangular: amplitude times the overlap of each position cell with the
/// window. Smooth bump: amplitude exp(1 - 1 / (1 - y^2)), y = 2 (x - c) / width.
std::vector<double> window_weights(const PhotonGrid& grid, const WindowSpec& w);

struct ScatterScenario {
  double b = 0.0;
  double g = 0.0;
  double tau = 0.0;
  PhotonGrid grid;
  WindowSpec window;
  WavepacketSpec packet;
  StateVector chi;  // S
  StateVector xi;   // D

  /// Finite parameters, window support inside (0, L), and (with the
  /// separation check) the packet at least 5 position widths clear of the
  /// window before and after the crossing, without wrapping.
  void validate(bool check_separation = true) const;
  double position_width() const { return 1.0 / (2.0 * packet.sigma_p); }
};

/// Grid and geometry from sigma_p: dp = sigma_p / sigma_over_dp, window of
/// width L/8 centred at L/2, packet at L/4 with p0 at the grid centre,
/// tau = L/2, and g calibrated.
struct ScenarioTemplate {
  std::size_t n_modes = 128;
  double p_min = 0.25;
  double sigma_over_dp = 8.0;
  WindowProfile profile = WindowProfile::kRectangular;
  double amplitude = 1.0;
  double b = 1.0;
  StateVector xi = StateVector::basis(2, 0);

  ScatterScenario make(double sigma_p, const StateVector& chi) const;
};

/// (sigma.sigma - I) on S (x) D.
ComplexMatrix exchange_operator();

HamiltonianSpec build_coleman_hepp(const ScatterScenario& s);

struct Calibration {
  double g = 0.0;
  std::string method;       // "closed_form" or "search"
  cplx singlet_overlap{};   // <U_triplet a | U_singlet a>, ideally -1
  std::size_t evaluations = 0;
};

/// Singlet phase pi over the transit. Rectangular windows use
/// g = pi / (4 width amplitude); other profiles fall back to a secant search
/// on the phase of the singlet-triplet overlap.
Calibration calibrate_swap(const ScatterScenario& s);

struct ScatterResult {
  EnergyMeasurementModel measurement;  // system {O_I, S}, probe {D, O_II}
  QuantumChannel spin_channel;         // system {O_I, S, D}, ancilla O_II
  StateVector initial;
  StateVector final_state;
  double r0 = 0.0;
  double r_tau = 0.0;
  double final_norm = 0.0;
  double conservation_residual = 0.0;
  double centroid_initial = 0.0;
  double centroid_final = 0.0;
  std::vector<std::string> warnings;
};

/// U = exp(-i tau H) on the full space and the final state for the scenario
/// spins. Residuals above residual_ceiling produce a warning.
ScatterResult run_scatter(const ScatterScenario& s, double residual_ceiling = 1e-6);

/// Position centroid of the orbital factor.
double orbital_centroid(const PhotonGrid& grid, const StateVector& full, const TensorLayout& layout);

/// ||H_int Psi0|| alone (no diagonalization), skipping the separation check.
double initial_interaction_residual(const ScatterScenario& s);

/// Named spin states: sx+, sx-, sy+, sy-, sz+, sz-.
StateVector named_spin_state(const std::string& label);

struct SweepRow {
  double sigma_p = 0.0;
  std::string chi_label;
  double epsilon_sq = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double r0 = 0.0;
  double r_tau = 0.0;
  std::uint64_t seed = 0;
  BoundReport report;
};

/// Per point: lhs = eps(sigma_z)^2 from the measurement module, rhs =
/// swap_way_rhs, tolerance base + 2 (r0 + r_tau) ||sigma_z||. The grid value
/// of the energy bound is kept in the diagnostics. Points run in parallel,
/// output is ordered sigma_p-major.
std::vector<SweepRow> epsilon_sweep(const ScenarioTemplate& base,
                                    const std::vector<double>& sigma_ps,
                                    const std::vector<std::string>& chi_labels,
                                    std::uint64_t seed = 0, double base_tolerance = 1e-6);

/// Columns sigma_p, chi_label, epsilon_sq, rhs, slack, r0, r_tau, seed.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Spin-channel fidelity to SWAP: passes when inf_psi F(psi) >= threshold.
BoundReport swap_perfection_check(const ScatterResult& r, const OptimizerConfig& cfg,
                                  double threshold = 0.999);

/// Witness for the fidelity limit: passes when the optimizer finds psi with
/// F(psi)^2 <= swap_fidelity_bound(b, sigma_p) + tolerance.
BoundReport swap_fidelity_witness_check(const ScatterResult& r, double b, double sigma_p,
                                        const OptimizerConfig& cfg, double tolerance = 1e-3);

}  // namespace waybound

#endif  // WAYBOUND_SCATTERING_HPP_
