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

#include "waybound/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>

#include "waybound/config.hpp"
#include "waybound/errors.hpp"
#include "waybound/gate_bounds.hpp"
#include "waybound/kernels.hpp"

namespace waybound {
namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::string> kMeasuredSystem{"O_I", "S"};

TensorLayout scatter_layout(std::size_t n) {
  return TensorLayout({{"O_I", 1}, {"S", 2}, {"D", 2}, {"O_II", n}});
}

bool finite(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

// Everything a run needs that does not depend on the S input.
struct ScatterSystem {
  HamiltonianSpec spec;
  EigenDecomposition eig;
  StateVector packet;
  EnergyMeasurementModel em;
};

ScatterSystem build_system(const ScatterScenario& s) {
  s.validate();
  ScatterSystem sys;
  sys.spec = build_coleman_hepp(s);
  sys.packet = gaussian_wavepacket(s.grid, s.packet);
  sys.eig = herm_eig(build_hamiltonian(sys.spec));
  sys.em = make_energy_model(sys.spec, kMeasuredSystem, s.tau, kron(s.xi, sys.packet), "D",
                             pauli_z(), "S", pauli_z(), &sys.eig);
  return sys;
}

// Singlet-versus-triplet overlap after the transit at b = 0.
cplx singlet_overlap(const PhotonGrid& grid, const ComplexMatrix& w_op, const StateVector& a,
                     double g, double tau) {
  const ComplexMatrix hs = grid.momentum_operator() - (4.0 * g) * w_op;
  const StateVector fs = evolve(hs, tau) * a;
  StateVector ft = a;
  for (std::size_t n = 0; n < grid.n_modes; ++n) ft[n] *= std::polar(1.0, -tau * grid.momenta[n]);
  return inner(ft, fs);
}

double integral(const PhotonGrid& grid, const std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) total += x;
  return total * grid.dx();
}

}  // namespace

// ------------------------------------------------------------------- grid

double PhotonGrid::length() const { return 2.0 * kPi / dp; }
double PhotonGrid::dx() const { return length() / static_cast<double>(n_modes); }

std::vector<double> PhotonGrid::positions() const {
  std::vector<double> x(n_modes);
  for (std::size_t j = 0; j < n_modes; ++j) x[j] = static_cast<double>(j) * dx();
  return x;
}

ComplexMatrix PhotonGrid::momentum_operator() const { return ComplexMatrix::diagonal(momenta); }

ComplexMatrix PhotonGrid::fourier() const {
  const std::vector<double> x = positions();
  const double s = 1.0 / std::sqrt(static_cast<double>(n_modes));
  ComplexMatrix f(n_modes, n_modes);
  for (std::size_t j = 0; j < n_modes; ++j)
    for (std::size_t n = 0; n < n_modes; ++n) f(j, n) = std::polar(s, momenta[n] * x[j]);
  return f;
}

ComplexMatrix PhotonGrid::position_function(const std::vector<double>& fx) const {
  if (fx.size() != n_modes) throw DimensionError("position_function: one value per cell");
  const ComplexMatrix f = fourier();
  return f.adjoint() * ComplexMatrix::diagonal(fx) * f;
}

ComplexMatrix PhotonGrid::position_operator() const { return position_function(positions()); }

StateVector PhotonGrid::to_position(const StateVector& a) const { return fourier() * a; }

PhotonGrid build_photon_grid(std::size_t n_modes, double p_min, double dp) {
  if (n_modes < 16) throw DimensionError("build_photon_grid: need at least 16 modes");
  if (!(p_min > 0.0) || !(dp > 0.0)) {
    throw PreconditionError("build_photon_grid: momenta must be positive");
  }
  check_dimension(n_modes, "build_photon_grid");
  PhotonGrid g;
  g.n_modes = n_modes;
  g.p_min = p_min;
  g.dp = dp;
  g.momenta.resize(n_modes);
  for (std::size_t n = 0; n < n_modes; ++n) g.momenta[n] = p_min + dp * static_cast<double>(n);
  return g;
}

StateVector gaussian_wavepacket(const PhotonGrid& grid, const WavepacketSpec& spec) {
  if (!(spec.sigma_p > 0.0) || !finite({spec.p0, spec.x0})) {
    throw PreconditionError("gaussian_wavepacket: need sigma_p > 0 and finite p0, x0");
  }
  // |a(p)|^2 is Gaussian with standard deviation sigma_p.
  const double lo = grid.momenta.front() - grid.dp / 2.0;
  const double hi = grid.momenta.back() + grid.dp / 2.0;
  const double r = std::sqrt(2.0) * spec.sigma_p;
  const double tail = 0.5 * std::erfc((spec.p0 - lo) / r) + 0.5 * std::erfc((hi - spec.p0) / r);
  if (tail > 1e-10) {
    throw PreconditionError("gaussian_wavepacket: tail mass " + format_double(tail) +
                            " outside the grid exceeds 1e-10");
  }
  StateVector a(grid.n_modes);
  for (std::size_t n = 0; n < grid.n_modes; ++n) {
    const double p = grid.momenta[n];
    const double d = p - spec.p0;
    a[n] = std::polar(std::exp(-d * d / (4.0 * spec.sigma_p * spec.sigma_p)), -p * spec.x0);
  }
  return a.normalized();
}

// ----------------------------------------------------------------- window

std::string to_string(WindowProfile p) {
  return p == WindowProfile::kRectangular ? "rectangular" : "smooth-bump";
}

WindowProfile window_profile_from_string(const std::string& s) {
  if (s == "rectangular") return WindowProfile::kRectangular;
  if (s == "smooth-bump") return WindowProfile::kSmoothBump;
  throw UsageError("window profile must be rectangular or smooth-bump, got '" + s + "'");
}

std::vector<double> window_weights(const PhotonGrid& grid, const WindowSpec& w) {
  const std::vector<double> x = grid.positions();
  const double dx = grid.dx();
  const double lo = w.center - w.width / 2.0, hi = w.center + w.width / 2.0;
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (w.profile == WindowProfile::kRectangular) {
      const double overlap = std::min(x[j] + dx / 2.0, hi) - std::max(x[j] - dx / 2.0, lo);
      out[j] = w.amplitude * std::max(0.0, overlap) / dx;
    } else {
      const double y = (x[j] - w.center) / (w.width / 2.0);
      if (std::abs(y) < 1.0) out[j] = w.amplitude * std::exp(1.0 - 1.0 / (1.0 - y * y));
    }
  }
  return out;
}

// --------------------------------------------------------------- scenario

void ScatterScenario::validate(bool check_separation) const {
  if (!finite({b, g, tau, window.center, window.width, window.amplitude, packet.p0,
               packet.sigma_p, packet.x0})) {
    throw PreconditionError("scatter scenario: parameters must be finite");
  }
  if (grid.momenta.size() != grid.n_modes || grid.n_modes < 16) {
    throw DimensionError("scatter scenario: grid not built");
  }
  if (chi.dim() != 2 || xi.dim() != 2 || !chi.is_normalized(1e-10) ||
      !xi.is_normalized(1e-10)) {
    throw PreconditionError("scatter scenario: chi and xi must be normalized qubit states");
  }
  if (!(packet.sigma_p > 0.0) || !(window.width > 0.0) || tau < 0.0) {
    throw PreconditionError("scatter scenario: need sigma_p > 0, window width > 0, tau >= 0");
  }
  const double len = grid.length();
  const double lo = window.center - window.width / 2.0, hi = window.center + window.width / 2.0;
  if (!(lo > 0.0) || !(hi < len)) {
    throw PreconditionError("scatter scenario: window support must lie inside the grid");
  }
  if (!check_separation) return;
  const double clear = 5.0 * position_width();
  const double x_end = packet.x0 + tau;
  if (packet.x0 - clear < 0.0 || lo - packet.x0 < clear) {
    throw PreconditionError("scatter scenario: packet within 5 widths of the window at t = 0");
  }
  if (x_end - hi < clear || x_end + clear > len) {
    throw PreconditionError(
        "scatter scenario: packet does not clear the window by t = tau without wrapping");
  }
}

ScatterScenario ScenarioTemplate::make(double sigma_p, const StateVector& chi) const {
  if (!(sigma_p > 0.0) || !(sigma_over_dp > 0.0)) {
    throw PreconditionError("scenario template: sigma_p and sigma_over_dp must be positive");
  }
  ScatterScenario s;
  s.b = b;
  s.grid = build_photon_grid(n_modes, p_min, sigma_p / sigma_over_dp);
  const double len = s.grid.length();
  s.window = {len / 2.0, len / 8.0, profile, amplitude};
  s.packet = {p_min + s.grid.dp * (static_cast<double>(n_modes) - 1.0) / 2.0, sigma_p, len / 4.0};
  s.tau = len / 2.0;
  s.chi = chi;
  s.xi = xi;
  s.g = calibrate_swap(s).g;
  return s;
}

ComplexMatrix exchange_operator() {
  return kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) + kron(pauli_z(), pauli_z()) -
         ComplexMatrix::identity(4);
}

HamiltonianSpec build_coleman_hepp(const ScatterScenario& s) {
  s.validate(false);
  HamiltonianSpec spec;
  spec.layout = scatter_layout(s.grid.n_modes);
  spec.free_terms.push_back({"S", pauli_x(), s.b});
  spec.free_terms.push_back({"O_II", s.grid.momentum_operator(), 1.0});
  const ComplexMatrix w = s.grid.position_function(window_weights(s.grid, s.window));
  spec.interaction_terms.push_back({{"S", "D", "O_II"}, kron(exchange_operator(), w), s.g});
  spec.validate();
  return spec;
}

Calibration calibrate_swap(const ScatterScenario& s) {
  s.validate(false);
  const std::vector<double> w = window_weights(s.grid, s.window);
  const ComplexMatrix w_op = s.grid.position_function(w);
  const StateVector a = gaussian_wavepacket(s.grid, s.packet);
  Calibration cal;
  if (s.window.profile == WindowProfile::kRectangular) {
    cal.g = kPi / (4.0 * s.window.width * s.window.amplitude);
    cal.method = "closed_form";
    cal.singlet_overlap = singlet_overlap(s.grid, w_op, a, cal.g, s.tau);
    cal.evaluations = 1;
    return cal;
  }
  // Secant on arg(-overlap), starting from the area rule.
  const auto phase = [&](double g) {
    ++cal.evaluations;
    return std::arg(-singlet_overlap(s.grid, w_op, a, g, s.tau));
  };
  double g0 = kPi / (4.0 * integral(s.grid, w)), g1 = 1.02 * g0;
  double f0 = phase(g0), f1 = phase(g1);
  for (int it = 0; it < 40 && std::abs(f1) > 1e-13 && f1 != f0; ++it) {
    const double g2 = g1 - f1 * (g1 - g0) / (f1 - f0);
    g0 = g1;
    f0 = f1;
    g1 = g2;
    f1 = phase(g1);
  }
  cal.g = g1;
  cal.method = "search";
  cal.singlet_overlap = singlet_overlap(s.grid, w_op, a, cal.g, s.tau);
  return cal;
}

// -------------------------------------------------------------------- run

double orbital_centroid(const PhotonGrid& grid, const StateVector& full,
                        const TensorLayout& layout) {
  const std::size_t n = grid.n_modes;
  if (layout.factors().back().label != "O_II" || layout.factors().back().dim != n ||
      full.dim() != layout.total_dim()) {
    throw DimensionError("orbital_centroid: O_II must be the last factor");
  }
  const ComplexMatrix x = grid.position_operator();
  const std::size_t rest = full.dim() / n;
  double total = 0.0;
  for (std::size_t s = 0; s < rest; ++s) {
    StateVector part(n);
    for (std::size_t k = 0; k < n; ++k) part[k] = full[s * n + k];
    total += inner(part, x * part).real();
  }
  return total;
}

double initial_interaction_residual(const ScatterScenario& s) {
  s.validate(false);
  const StateVector a = gaussian_wavepacket(s.grid, s.packet);
  const ComplexMatrix w = s.grid.position_function(window_weights(s.grid, s.window));
  return std::abs(s.g) * (exchange_operator() * kron(s.chi, s.xi)).norm() * (w * a).norm();
}

ScatterResult run_scatter(const ScatterScenario& s, double residual_ceiling) {
  ScatterSystem sys = build_system(s);
  ScatterResult r;
  r.measurement = std::move(sys.em);
  const IndirectMeasurementModel& m = r.measurement.model;
  r.initial = m.initial_state(s.chi);
  r.final_state = m.unitary * r.initial;
  r.final_norm = r.final_state.norm();
  const InteractionResiduals res = interaction_residuals(r.measurement, s.chi);
  r.r0 = res.r0;
  r.r_tau = res.r_tau;
  r.conservation_residual = conservation_residual(m.unitary, r.measurement.hamiltonian());
  r.spin_channel = QuantumChannel{m.layout, {"O_II"}, m.unitary, sys.packet};
  r.spin_channel.validate();
  r.centroid_initial = orbital_centroid(s.grid, r.initial, m.layout);
  r.centroid_final = orbital_centroid(s.grid, r.final_state, m.layout);
  if (r.r0 + r.r_tau > residual_ceiling) {
    r.warnings.push_back("interaction residual r0 + r_tau = " + format_double(r.r0 + r.r_tau) +
                         " exceeds ceiling " + format_double(residual_ceiling));
  }
  return r;
}

StateVector named_spin_state(const std::string& label) {
  const double h = 1.0 / std::sqrt(2.0);
  if (label == "sz+") return StateVector{1.0, 0.0};
  if (label == "sz-") return StateVector{0.0, 1.0};
  if (label == "sx+") return StateVector{h, h};
  if (label == "sx-") return StateVector{h, -h};
  if (label == "sy+") return StateVector{cplx(h), cplx(0.0, h)};
  if (label == "sy-") return StateVector{cplx(h), cplx(0.0, -h)};
  throw UsageError("unknown spin state '" + label + "' (sx+, sx-, sy+, sy-, sz+, sz-)");
}

// ------------------------------------------------------------------ sweep

std::vector<SweepRow> epsilon_sweep(const ScenarioTemplate& base,
                                    const std::vector<double>& sigma_ps,
                                    const std::vector<std::string>& chi_labels,
                                    std::uint64_t seed, double base_tolerance) {
  std::vector<StateVector> chis;
  for (const auto& l : chi_labels) chis.push_back(named_spin_state(l));
  const std::size_t np = sigma_ps.size(), nc = chis.size();
  std::vector<SweepRow> rows(np * nc);
  std::vector<std::exception_ptr> errors(np);
  EnergyCheckOptions opts;
  opts.base_tolerance = base_tolerance;

#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::size_t i = 0; i < np; ++i) {
    try {
      const ScatterScenario s = base.make(sigma_ps[i], StateVector::basis(2, 0));
      const ScatterSystem sys = build_system(s);
      for (std::size_t c = 0; c < nc; ++c) {
        const BoundReport energy = way_energy_check(sys.em, chis[c], opts);
        SweepRow& row = rows[i * nc + c];
        row.sigma_p = sigma_ps[i];
        row.chi_label = chi_labels[c];
        row.epsilon_sq = energy.lhs;
        row.rhs = swap_way_rhs(s.b, chis[c], sigma_ps[i]);
        row.r0 = energy.diagnostics.at("r0");
        row.r_tau = energy.diagnostics.at("r_tau");
        row.seed = seed;
        BoundReport rep = BoundReport::make("swap_way", row.epsilon_sq, row.rhs, energy.tolerance);
        rep.inputs = {{"b", s.b}, {"sigma_p", sigma_ps[i]}, {"g", s.g}, {"tau", s.tau},
                      {"n_modes", static_cast<double>(s.grid.n_modes)}, {"dp", s.grid.dp}};
        rep.diagnostics = energy.diagnostics;
        rep.diagnostics["energy_form_rhs"] = energy.rhs;
        rep.diagnostics["energy_form_gap"] = std::abs(energy.rhs - row.rhs);
        rep.labels["chi"] = chi_labels[c];
        rep.warnings = energy.warnings;
        rep.witnesses["input"] = chis[c];
        row.slack = rep.slack;
        row.report = std::move(rep);
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "sigma_p,chi_label,epsilon_sq,rhs,slack,r0,r_tau,seed\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.sigma_p) << ',' << r.chi_label << ',' << format_double(r.epsilon_sq)
        << ',' << format_double(r.rhs) << ',' << format_double(r.slack) << ','
        << format_double(r.r0) << ',' << format_double(r.r_tau) << ',' << r.seed << '\n';
  }
  return out.str();
}

// --------------------------------------------------------------- fidelity

BoundReport swap_perfection_check(const ScatterResult& r, const OptimizerConfig& cfg,
                                  double threshold) {
  const MetricEstimate f = gate_fidelity_inf(r.spin_channel, swap_gate(), cfg);
  BoundReport rep = BoundReport::make("swap_perfection", f.value, threshold, 0.0);
  rep.inputs = {{"threshold", threshold}};
  rep.diagnostics = {{"fidelity_sq", f.value * f.value},
                     {"r0", r.r0},
                     {"r_tau", r.r_tau},
                     {"starts", static_cast<double>(f.starts)}};
  rep.labels["contract"] = f.contract;
  rep.witnesses["fidelity_witness"] = f.witness;
  return rep;
}

BoundReport swap_fidelity_witness_check(const ScatterResult& r, double b, double sigma_p,
                                        const OptimizerConfig& cfg, double tolerance) {
  const double bound = swap_fidelity_bound(b, sigma_p);
  // Seed with the states the bound is built from: sigma_y eigenstates on S.
  std::vector<StateVector> seeds;
  for (const char* l : {"sy+", "sy-"})
    for (std::size_t d = 0; d < 2; ++d)
      seeds.push_back(kron(named_spin_state(l), StateVector::basis(2, d)));
  const MetricEstimate f = gate_fidelity_inf(r.spin_channel, swap_gate(), cfg, seeds);
  BoundReport rep = BoundReport::make("swap_fidelity_witness", bound, f.value * f.value, tolerance);
  rep.inputs = {{"b", b}, {"sigma_p", sigma_p}};
  rep.diagnostics = {{"fidelity", f.value},
                     {"r0", r.r0},
                     {"r_tau", r.r_tau},
                     {"starts", static_cast<double>(f.starts)}};
  rep.labels["contract"] = f.contract;
  rep.witnesses["fidelity_witness"] = f.witness;
  return rep;
}

}  // namespace waybound
