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

#include "waybound/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace waybound {
namespace {

std::string residual_message(const std::string& what, double value, double limit) {
  std::ostringstream msg;
  msg << what << " residual " << value << " exceeds " << limit;
  return msg.str();
}

void require_hermitian(const ComplexMatrix& op, const std::string& what) {
  const double scale = std::max(1.0, frobenius_norm(op));
  if (op.hermiticity_residual() > 1e-12 * scale) {
    throw PreconditionError(what + " is not Hermitian");
  }
}

// |<Psi|[A, B]|Psi>| for Hermitian A and B, as 2 |Im <A Psi | B Psi>|.
double commutator_expectation(const ComplexMatrix& a, const ComplexMatrix& b,
                              const StateVector& psi) {
  return 2.0 * std::abs(inner(a * psi, b * psi).imag());
}

// Columns U |s> (x) |xi> for every system basis state s.
ComplexMatrix isometry(const IndirectMeasurementModel& model) {
  const std::size_t ds = model.system_dim();
  const std::size_t dp = model.probe_dim();
  ComplexMatrix w(ds * dp, ds);
  for (std::size_t s = 0; s < ds; ++s)
    for (std::size_t k = 0; k < dp; ++k) w(s * dp + k, s) = model.probe_init[k];
  return model.unitary * w;
}

// Column-major helpers for the pointer stage. A joint ket is stored as an
// n x m matrix X with Phi = sum X(i, j) |i> (x) |j>.
ComplexMatrix apply_pointer(const ComplexMatrix& x, const ComplexMatrix& r) {
  return x * r.transpose();
}

}  // namespace

// ------------------------------------------------------------------ model

void IndirectMeasurementModel::validate() const {
  if (system_labels.empty() || system_labels.size() > layout.size()) {
    throw DimensionError("measurement model: system labels must be a layout prefix");
  }
  for (std::size_t i = 0; i < system_labels.size(); ++i) {
    if (layout.factor(i).label != system_labels[i]) {
      throw DimensionError("measurement model: system labels must be a layout prefix");
    }
  }
  const std::size_t n = layout.total_dim();
  if (unitary.rows() != n || unitary.cols() != n) {
    throw DimensionError("measurement model: unitary does not match layout");
  }
  const double ures = unitary.unitarity_residual();
  if (ures > 1e-10) {
    throw PreconditionError(residual_message("measurement model: unitarity", ures, 1e-10));
  }
  if (probe_init.dim() != probe_dim()) {
    throw DimensionError("measurement model: probe state does not match probe factors");
  }
  if (!probe_init.is_normalized(1e-12)) {
    throw PreconditionError("measurement model: probe state is not normalized");
  }
  if (std::find(system_labels.begin(), system_labels.end(), measured_label) ==
      system_labels.end()) {
    throw DimensionError("measurement model: measured observable must act on a system factor");
  }
  if (meter.rows() != layout.dim_of(meter_label) ||
      measured.rows() != layout.dim_of(measured_label)) {
    throw DimensionError("measurement model: observable dimension mismatch");
  }
  require_hermitian(meter, "meter");
  require_hermitian(measured, "measured observable");
}

std::vector<std::string> IndirectMeasurementModel::probe_labels() const {
  return layout.complement(system_labels);
}

std::size_t IndirectMeasurementModel::system_dim() const {
  return layout.dim_of(system_labels);
}

std::size_t IndirectMeasurementModel::probe_dim() const {
  return layout.total_dim() / system_dim();
}

StateVector IndirectMeasurementModel::initial_state(const StateVector& input) const {
  if (input.dim() != system_dim()) {
    throw DimensionError("measurement model: input does not match system factors");
  }
  return kron(input, probe_init);
}

ComplexMatrix IndirectMeasurementModel::meter_full() const {
  return embed(meter, meter_label, layout);
}

ComplexMatrix IndirectMeasurementModel::measured_full() const {
  return embed(measured, measured_label, layout);
}

ComplexMatrix IndirectMeasurementModel::embed_on(const ComplexMatrix& op,
                                                 const std::string& label) const {
  return embed(op, label, layout);
}

ComplexMatrix IndirectMeasurementModel::system_full(const ComplexMatrix& op) const {
  return kron(op, ComplexMatrix::identity(probe_dim()));
}

ComplexMatrix IndirectMeasurementModel::probe_full(const ComplexMatrix& op) const {
  return kron(ComplexMatrix::identity(system_dim()), op);
}

// ------------------------------------------------------------ noise

std::pair<ComplexMatrix, ComplexMatrix> noise_operators(
    const IndirectMeasurementModel& model, const ComplexMatrix& b,
    const std::string& b_label) {
  model.validate();
  const std::string bl = b_label.empty() ? model.measured_label : b_label;
  const auto& sys = model.system_labels;
  if (std::find(sys.begin(), sys.end(), bl) == sys.end()) {
    throw DimensionError("noise_operators: B must act on a system factor");
  }
  const ComplexMatrix& u = model.unitary;
  const ComplexMatrix ud = u.adjoint();
  const ComplexMatrix bf = model.embed_on(b, bl);
  ComplexMatrix e = ud * model.meter_full() * u - model.measured_full();
  ComplexMatrix d = ud * bf * u - bf;
  return {std::move(e), std::move(d)};
}

double measurement_error(const IndirectMeasurementModel& model,
                         const StateVector& input) {
  const StateVector psi = model.initial_state(input);
  const ComplexMatrix ud = model.unitary.adjoint();
  const StateVector heis = ud * (model.meter_full() * (model.unitary * psi));
  return (heis - model.measured_full() * psi).norm();
}

NoiseReport epsilon_eta(const IndirectMeasurementModel& model,
                        const ComplexMatrix& b, const StateVector& input,
                        const std::string& b_label) {
  model.validate();
  const std::string bl = b_label.empty() ? model.measured_label : b_label;
  const auto& sys = model.system_labels;
  if (std::find(sys.begin(), sys.end(), bl) == sys.end()) {
    throw DimensionError("epsilon_eta: B must act on a system factor");
  }
  require_hermitian(b, "B");
  const StateVector psi = model.initial_state(input);
  const ComplexMatrix& u = model.unitary;
  const ComplexMatrix ud = u.adjoint();
  const ComplexMatrix af = model.measured_full();
  const ComplexMatrix bf = model.embed_on(b, bl);
  const StateVector upsi = u * psi;

  NoiseReport r;
  r.epsilon = (ud * (model.meter_full() * upsi) - af * psi).norm();
  r.eta = (ud * (bf * upsi) - bf * psi).norm();
  r.sigma_A = std_dev(af, psi);
  r.sigma_B = std_dev(bf, psi);
  r.lhs = r.epsilon * r.eta + r.epsilon * r.sigma_B + r.sigma_A * r.eta;
  r.rhs = 0.5 * commutator_expectation(af, bf, psi);
  r.slack = r.lhs - r.rhs;
  return r;
}

std::vector<PovmElement> povm_elements(const IndirectMeasurementModel& model) {
  model.validate();
  const EigenDecomposition eig = herm_eig(model.meter);
  const ComplexMatrix w = isometry(model);
  const ComplexMatrix wd = w.adjoint();
  std::vector<PovmElement> out;
  for (const auto& g : eigen_groups(eig.values)) {
    const std::size_t d = model.meter.rows();
    ComplexMatrix proj(d, d);
    double mean = 0.0;
    for (std::size_t k : g) {
      mean += eig.values[k];
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          proj(i, j) += eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    PovmElement e;
    e.outcome = mean / static_cast<double>(g.size());
    e.element = wd * model.embed_on(proj, model.meter_label) * w;
    out.push_back(std::move(e));
  }
  return out;
}

BoundReport ozawa_check(const IndirectMeasurementModel& model,
                        const ComplexMatrix& b, const StateVector& input,
                        const std::string& b_label, double tolerance) {
  const NoiseReport n = epsilon_eta(model, b, input, b_label);
  BoundReport r = BoundReport::make("ozawa", n.lhs, n.rhs, tolerance);
  r.inputs = {{"epsilon", n.epsilon},
              {"eta", n.eta},
              {"sigma_A", n.sigma_A},
              {"sigma_B", n.sigma_B}};
  r.witnesses["input"] = input;
  return r;
}

BoundReport way_additive_check(const IndirectMeasurementModel& model,
                               const ConservationSpec& cons,
                               const StateVector& input, double tolerance) {
  model.validate();
  if (cons.kind != ConservationSpec::Kind::kAdditive) {
    throw DimensionError("way_additive_check: needs an additive conserved quantity");
  }
  cons.validate();
  if (cons.l_system.rows() != model.system_dim() ||
      cons.l_probe.rows() != model.probe_dim()) {
    throw DimensionError("way_additive_check: L_S or L_D does not match the bipartition");
  }
  const ComplexMatrix l = cons.total();
  const double cres = conservation_residual(model.unitary, l);
  if (cres > 1e-8) {
    throw PreconditionError(residual_message("way_additive_check: conservation [U, L]", cres, 1e-8));
  }
  const double yres = norm(commutator(model.meter_full(), l), NormKind::kOperator);
  if (yres > 1e-10) {
    throw PreconditionError(residual_message("way_additive_check: Yanase [M, L]", yres, 1e-10));
  }
  const StateVector psi = model.initial_state(input);
  const ComplexMatrix ls = model.system_full(cons.l_system);
  const ComplexMatrix ld = model.probe_full(cons.l_probe);
  const double eps = measurement_error(model, input);
  const double c = commutator_expectation(model.measured_full(), ls, psi);
  const double vs = variance(ls, psi);
  const double vd = variance(ld, psi);
  const double den = 4.0 * vs + 4.0 * vd;
  BoundReport r;
  double rhs = 0.0;
  if (den > 1e-14) {
    rhs = c * c / den;
  } else {
    r.warnings.push_back("L_S and L_D are sharp on the input; bound set to 0");
  }
  r.name = "way_additive";
  r.lhs = eps * eps;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.finalize();
  r.inputs = {{"epsilon", eps},
              {"commutator_abs", c},
              {"sigma_LS", std::sqrt(vs)},
              {"sigma_LD", std::sqrt(vd)}};
  r.diagnostics = {{"conservation_residual", cres}, {"yanase_residual", yres}};
  r.witnesses["input"] = input;
  return r;
}

// ---------------------------------------------------------- energy form

ComplexMatrix EnergyMeasurementModel::hamiltonian() const {
  return h_system + h_probe + h_interaction;
}

EnergyMeasurementModel make_energy_model(
    const HamiltonianSpec& spec, const std::vector<std::string>& system_labels,
    double tau, const StateVector& probe_init, const std::string& meter_label,
    const ComplexMatrix& meter, const std::string& measured_label,
    const ComplexMatrix& measured, const EigenDecomposition* eig) {
  EnergyMeasurementModel em;
  const HamiltonianParts parts = split_hamiltonian(spec, system_labels);
  em.h_system = parts.first;
  em.h_probe = parts.second;
  em.h_interaction = parts.interaction;
  em.tau = tau;
  em.model.layout = spec.layout;
  em.model.system_labels = system_labels;
  em.model.unitary = eig ? evolve(*eig, tau) : evolve(em.hamiltonian(), tau);
  em.model.probe_init = probe_init;
  em.model.meter_label = meter_label;
  em.model.meter = meter;
  em.model.measured_label = measured_label;
  em.model.measured = measured;
  em.model.validate();
  return em;
}

InteractionResiduals interaction_residuals(const EnergyMeasurementModel& em,
                                           const StateVector& input) {
  const StateVector psi = em.model.initial_state(input);
  return {(em.h_interaction * psi).norm(),
          (em.h_interaction * (em.model.unitary * psi)).norm()};
}

BoundReport way_energy_check(const EnergyMeasurementModel& em,
                             const StateVector& input,
                             const EnergyCheckOptions& options) {
  const IndirectMeasurementModel& model = em.model;
  model.validate();
  const StateVector psi = model.initial_state(input);
  const InteractionResiduals res = interaction_residuals(em, input);
  const double eps = measurement_error(model, input);
  const double c = commutator_expectation(model.measured_full(), em.h_system, psi);
  const double v1 = variance(em.h_system, psi);
  const double v2 = variance(em.h_probe, psi);
  const double den = 4.0 * v1 + 4.0 * v2;
  const double meter_norm = norm(model.meter, NormKind::kOperator);

  BoundReport r;
  r.name = "way_energy";
  r.lhs = eps * eps;
  if (den > 1e-14) {
    r.rhs = c * c / den;
  } else if (c <= 1e-12) {
    r.rhs = 0.0;
    r.warnings.push_back("H_I and H_II are sharp on the input; bound set to 0");
  } else {
    throw UndefinedBoundError("way_energy_check: zero energy spread with nonzero commutator");
  }
  r.tolerance = options.base_tolerance + 2.0 * (res.r0 + res.r_tau) * meter_norm;
  r.finalize();
  r.inputs = {{"epsilon", eps},
              {"commutator_abs", c},
              {"sigma_HI", std::sqrt(v1)},
              {"sigma_HII", std::sqrt(v2)},
              {"tau", em.tau}};
  r.diagnostics = {{"r0", res.r0},
                   {"r_tau", res.r_tau},
                   {"meter_norm", meter_norm},
                   {"yanase_residual",
                    norm(commutator(model.meter_full(), em.h_probe), NormKind::kOperator)}};
  if (options.check_conservation) {
    r.diagnostics["conservation_residual"] =
        conservation_residual(model.unitary, em.hamiltonian());
  }
  if (res.r0 + res.r_tau > options.residual_ceiling) {
    r.warnings.push_back("interaction residual r0 + r_tau = " +
                         format_double(res.r0 + res.r_tau) + " exceeds ceiling");
  }
  if (r.diagnostics["yanase_residual"] > 1e-10) {
    r.warnings.push_back("meter does not commute with H_II");
  }
  r.witnesses["input"] = input;
  return r;
}

BoundReport weak_yanase_check(const IndirectMeasurementModel& model,
                              const ComplexMatrix& h_full,
                              const StateVector& input, double tolerance) {
  model.validate();
  const std::size_t n = model.layout.total_dim();
  if (h_full.rows() != n || h_full.cols() != n) {
    throw DimensionError("weak_yanase_check: Hamiltonian does not match layout");
  }
  require_hermitian(h_full, "Hamiltonian");
  const ComplexMatrix& u = model.unitary;
  const ComplexMatrix m_heis = u.adjoint() * model.meter_full() * u;
  const double wres = norm(commutator(m_heis, h_full), NormKind::kOperator);
  if (wres > 1e-8) {
    throw PreconditionError(residual_message("weak_yanase_check: weak Yanase [U^dag M U, H]", wres, 1e-8));
  }
  const double cres = conservation_residual(u, h_full);
  if (cres > 1e-8) {
    throw PreconditionError(residual_message("weak_yanase_check: conservation [U, H]", cres, 1e-8));
  }
  // Probe-averaged Hamiltonian on the system: <xi| H |xi>.
  const std::size_t ds = model.system_dim();
  const std::size_t dp = model.probe_dim();
  ComplexMatrix w(n, ds);
  for (std::size_t s = 0; s < ds; ++s)
    for (std::size_t k = 0; k < dp; ++k) w(s * dp + k, s) = model.probe_init[k];
  ComplexMatrix h_eff = w.adjoint() * h_full * w;
  h_eff = 0.5 * (h_eff + h_eff.adjoint());
  const TensorLayout sys = model.layout.restricted(model.system_labels);
  const ComplexMatrix a_sys = embed(model.measured, model.measured_label, sys);
  const double c = commutator_expectation(a_sys, h_eff, input);
  const StateVector psi = model.initial_state(input);
  const double v = variance(h_full, psi);
  const double eps = measurement_error(model, input);

  BoundReport r;
  r.name = "weak_yanase";
  r.lhs = eps * eps;
  if (v > 1e-14) {
    r.rhs = c * c / (4.0 * v);
  } else {
    r.rhs = 0.0;
    r.warnings.push_back("H is sharp on the input; bound set to 0");
  }
  r.tolerance = tolerance;
  r.finalize();
  r.inputs = {{"epsilon", eps}, {"commutator_abs", c}, {"sigma_H", std::sqrt(v)}};
  r.diagnostics = {{"weak_yanase_residual", wres}, {"conservation_residual", cres}};
  r.witnesses["input"] = input;
  return r;
}

// ---------------------------------------------------------- pointer probe

void PointerProbeConfig::validate() const {
  const std::size_t m = pointer_dim;
  if (q.rows() != m || p.rows() != m || pointer_init.dim() != m) {
    throw DimensionError("pointer config: operators and state must have pointer_dim");
  }
  if (!h_pointer.empty() && h_pointer.rows() != m) {
    throw DimensionError("pointer config: pointer Hamiltonian has the wrong dimension");
  }
  require_hermitian(q, "pointer Q");
  require_hermitian(p, "pointer P");
  if (!pointer_init.is_normalized(1e-12)) {
    throw PreconditionError("pointer config: pointer state is not normalized");
  }
}

PointerProbeConfig make_pointer_config(std::size_t pointer_dim, double spread,
                                       double tau_prime_minus_tau) {
  if (pointer_dim < 2 || !(spread > 0.0) || !(tau_prime_minus_tau > 0.0)) {
    throw PreconditionError("make_pointer_config: need pointer_dim >= 2, spread > 0, time > 0");
  }
  const std::size_t m = pointer_dim;
  const double half = static_cast<double>(m / 2);
  PointerProbeConfig cfg;
  cfg.pointer_dim = m;
  std::vector<double> q(m);
  for (std::size_t j = 0; j < m; ++j) q[j] = static_cast<double>(j) - half;
  cfg.q = ComplexMatrix::diagonal(q);
  // P = F^dag diag(2 pi k / N) F with F_{kj} = exp(-2 pi i k j / N) / sqrt(N)
  // and centred k, so exp(-i m P) shifts positions by +m for integer m.
  ComplexMatrix f(m, m);
  const double r = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<double> kvals(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double kc = static_cast<double>(k) - half;
    kvals[k] = 2.0 * std::numbers::pi * kc / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j)
      f(k, j) = std::polar(r, -kvals[k] * static_cast<double>(j));
  }
  ComplexMatrix pm = f.adjoint() * ComplexMatrix::diagonal(kvals) * f;
  cfg.p = 0.5 * (pm + pm.adjoint());
  StateVector z(m);
  for (std::size_t j = 0; j < m; ++j) z[j] = std::exp(-q[j] * q[j] / (4.0 * spread * spread));
  cfg.pointer_init = z.normalized();
  cfg.tau_prime_minus_tau = tau_prime_minus_tau;
  cfg.k = 1.0 / tau_prime_minus_tau;
  return cfg;
}

std::vector<BoundReport> PointerProbeReport::checks(double tolerance) const {
  std::vector<BoundReport> out;
  BoundReport tri = BoundReport::make("pointer_triangle", alpha + epsilon_direct, beta, tolerance);
  BoundReport rev =
      BoundReport::make("pointer_reverse_triangle", alpha, std::abs(beta - epsilon_direct), tolerance);
  BoundReport eta = BoundReport::make("pointer_eta_h0", 0.0, eta_h0, tolerance);
  for (BoundReport* r : {&tri, &rev, &eta}) {
    r->inputs = {{"alpha", alpha}, {"beta", beta}, {"epsilon", epsilon_direct}};
    r->diagnostics = {{"alpha_definition", alpha_definition},
                      {"eta_h0", eta_h0},
                      {"r0", r0},
                      {"r_tau", r_tau},
                      {"yanase_residual", yanase_residual}};
    out.push_back(*r);
  }
  return out;
}

PointerProbeReport pointer_probe(const EnergyMeasurementModel& em,
                                 const StateVector& input,
                                 const PointerProbeConfig& cfg) {
  const IndirectMeasurementModel& model = em.model;
  model.validate();
  cfg.validate();
  const std::size_t m = cfg.pointer_dim;
  const double coupling = cfg.tau_prime_minus_tau * cfg.k;

  // Meter projectors and the exact pointer shifts they drive.
  const EigenDecomposition meig = herm_eig(model.meter);
  std::vector<ComplexMatrix> proj_full;
  std::vector<ComplexMatrix> shift;
  for (const auto& g : eigen_groups(meig.values)) {
    double mean = 0.0;
    for (std::size_t k : g) mean += meig.values[k];
    mean /= static_cast<double>(g.size());
    const double scaled = coupling * mean;
    if (std::abs(scaled - std::round(scaled)) > 1e-9) {
      throw PreconditionError("pointer_probe: meter eigenvalue " + format_double(mean) +
                              " is not an integer after scaling");
    }
    const std::size_t d = model.meter.rows();
    ComplexMatrix proj(d, d);
    for (std::size_t k : g)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          proj(i, j) += meig.vectors(i, k) * std::conj(meig.vectors(j, k));
    proj_full.push_back(model.embed_on(proj, model.meter_label));
    shift.push_back(evolve(cfg.p, std::round(scaled)));
  }
  auto u_prime = [&](const ComplexMatrix& x, bool adjoint) {
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t g = 0; g < proj_full.size(); ++g) {
      const ComplexMatrix s = adjoint ? shift[g].adjoint() : shift[g];
      out += apply_pointer(proj_full[g] * x, s);
    }
    return out;
  };

  const ComplexMatrix u3 =
      cfg.h_pointer.empty() ? ComplexMatrix::identity(m) : evolve(cfg.h_pointer, em.tau);
  const ComplexMatrix& u = model.unitary;
  const ComplexMatrix ud = u.adjoint();
  const StateVector psi = model.initial_state(input);
  const std::size_t n = psi.dim();

  ComplexMatrix x0(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x0(i, j) = psi[i] * cfg.pointer_init[j];
  const ComplexMatrix xt = apply_pointer(u * x0, u3);
  const ComplexMatrix y = u_prime(xt, false);
  const ComplexMatrix mf = model.meter_full();
  const ComplexMatrix af = model.measured_full();
  const ComplexMatrix h0 = em.h_system + em.h_probe;

  PointerProbeReport rep;
  const ComplexMatrix q_heis_t = u_prime(apply_pointer(y, cfg.q), true);
  rep.alpha_definition = frobenius_norm(q_heis_t - mf * xt);
  const ComplexMatrix u3d = u3.adjoint();
  const ComplexMatrix q_heis_0 = apply_pointer(ud * q_heis_t, u3d);
  rep.beta = frobenius_norm(q_heis_0 - af * x0);
  const ComplexMatrix h_heis_0 =
      apply_pointer(ud * u_prime(h0 * y, true), u3d);
  rep.eta_h0 = frobenius_norm(h_heis_0 - h0 * x0);
  rep.alpha = (cfg.q * (u3 * cfg.pointer_init)).norm();
  rep.epsilon_direct = measurement_error(model, input);
  const InteractionResiduals res = interaction_residuals(em, input);
  rep.r0 = res.r0;
  rep.r_tau = res.r_tau;
  rep.yanase_residual = norm(commutator(mf, h0), NormKind::kOperator);
  return rep;
}

}  // namespace waybound

namespace waybound {
namespace {

std::size_t random_probe_dim(Rng& rng, std::size_t probe_dim_max) {
  if (probe_dim_max < 2) throw PreconditionError("probe_dim_max must be at least 2");
  return static_cast<std::size_t>(rng.uniform_int(2, static_cast<long long>(probe_dim_max)));
}

IndirectMeasurementModel qubit_model_shell(std::size_t d) {
  IndirectMeasurementModel m;
  m.layout = TensorLayout{{"S", 2}, {"D", d}};
  m.system_labels = {"S"};
  m.meter_label = "D";
  m.measured_label = "S";
  return m;
}

// Random Hermitian that is block-diagonal in the given index groups.
ComplexMatrix block_hermitian(const std::vector<std::vector<std::size_t>>& blocks,
                              std::size_t n, Rng& rng) {
  ComplexMatrix h(n, n);
  for (const auto& b : blocks) {
    const ComplexMatrix g = random_hermitian(b.size(), rng);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) h(b[i], b[j]) = g(i, j);
  }
  return h;
}

}  // namespace

IndirectMeasurementModel random_measurement_model(Rng& rng, std::size_t probe_dim_max) {
  const std::size_t d = random_probe_dim(rng, probe_dim_max);
  IndirectMeasurementModel m = qubit_model_shell(d);
  m.unitary = random_unitary(2 * d, rng);
  m.probe_init = random_state(d, rng);
  m.meter = random_hermitian(d, rng);
  m.measured = random_hermitian(2, rng);
  m.validate();
  return m;
}

ConservingModel random_conserving_model(Rng& rng, std::size_t probe_dim_max) {
  const std::size_t d = random_probe_dim(rng, probe_dim_max);
  std::vector<double> ld(d);
  for (double& x : ld) x = static_cast<double>(rng.uniform_int(-2, 2));
  ConservingModel out{qubit_model_shell(d),
                      ConservationSpec::additive(pauli_z(), ComplexMatrix::diagonal(ld))};
  // Meter blocks follow the eigenspaces of the diagonal L_D.
  std::vector<std::vector<std::size_t>> blocks;
  for (int v = -2; v <= 2; ++v) {
    std::vector<std::size_t> b;
    for (std::size_t i = 0; i < d; ++i)
      if (ld[i] == v) b.push_back(i);
    if (!b.empty()) blocks.push_back(b);
  }
  IndirectMeasurementModel& m = out.model;
  m.unitary = block_conserving_unitary(out.cons.total(), rng);
  m.probe_init = random_state(d, rng);
  m.meter = block_hermitian(blocks, d, rng);
  m.measured = random_hermitian(2, rng);
  m.validate();
  return out;
}

WeakYanaseModel random_weak_yanase_model(Rng& rng, std::size_t probe_dim_max) {
  const std::size_t d = random_probe_dim(rng, probe_dim_max);
  WeakYanaseModel out{qubit_model_shell(d), ComplexMatrix()};
  IndirectMeasurementModel& m = out.model;
  // Meter spectrum: first half +1, rest -1, rotated by a random unitary.
  std::vector<double> mv(d);
  for (std::size_t i = 0; i < d; ++i) mv[i] = i < (d + 1) / 2 ? 1.0 : -1.0;
  const ComplexMatrix vm = random_unitary(d, rng);
  ComplexMatrix meter = vm * ComplexMatrix::diagonal(mv) * vm.adjoint();
  m.meter = 0.5 * (meter + meter.adjoint());
  // In the full space, the eigenspaces of I (x) M are spanned by
  // |s> (x) (column k of vm); H is built block-diagonally in that basis.
  const std::size_t n = 2 * d;
  const ComplexMatrix basis = kron(ComplexMatrix::identity(2), vm);
  std::vector<std::vector<std::size_t>> blocks(2);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t k = 0; k < d; ++k) blocks[mv[k] > 0 ? 0 : 1].push_back(s * d + k);
  ComplexMatrix hb(n, n);
  for (const auto& b : blocks) {
    std::vector<double> ev(b.size());
    for (double& x : ev) x = static_cast<double>(rng.uniform_int(-1, 1));
    const ComplexMatrix w = random_unitary(b.size(), rng);
    const ComplexMatrix g = w * ComplexMatrix::diagonal(ev) * w.adjoint();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) hb(b[i], b[j]) = g(i, j);
  }
  ComplexMatrix h = basis * hb * basis.adjoint();
  out.hamiltonian = 0.5 * (h + h.adjoint());
  m.unitary = block_conserving_unitary(out.hamiltonian, rng);
  m.probe_init = random_state(d, rng);
  m.measured = random_hermitian(2, rng);
  m.validate();
  return out;
}

EnergyMeasurementModel random_energy_model(Rng& rng, std::size_t probe_dim_max) {
  const std::size_t d = random_probe_dim(rng, probe_dim_max);
  EnergyMeasurementModel em;
  em.model = qubit_model_shell(d);
  std::vector<double> hd(d), md(d);
  for (std::size_t i = 0; i < d; ++i) {
    hd[i] = static_cast<double>(rng.uniform_int(-1, 1));
    md[i] = static_cast<double>(rng.uniform_int(-1, 1));
  }
  const ComplexMatrix v = random_unitary(2, rng);
  const ComplexMatrix h_s = v * ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0}) * v.adjoint();
  em.h_system = kron(0.5 * (h_s + h_s.adjoint()), ComplexMatrix::identity(d));
  em.h_probe = kron(ComplexMatrix::identity(2), ComplexMatrix::diagonal(hd));
  em.h_interaction = ComplexMatrix(2 * d, 2 * d);
  em.tau = 1.0;
  IndirectMeasurementModel& m = em.model;
  m.unitary = block_conserving_unitary(em.hamiltonian(), rng);
  m.probe_init = random_state(d, rng);
  m.meter = ComplexMatrix::diagonal(md);
  m.measured = random_hermitian(2, rng);
  m.validate();
  return em;
}

}  // namespace waybound
