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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "waybound/errors.hpp"

namespace waybound {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double op_norm(const ComplexMatrix& a) { return norm(a, NormKind::kOperator); }

std::string residual_message(const std::string& what, double value, double limit) {
  std::ostringstream msg;
  msg << what << " residual " << value << " exceeds " << limit;
  return msg.str();
}

// 2 |Im <A psi, B psi>| = |<[A, B]>| for Hermitian A, B.
double commutator_expectation(const ComplexMatrix& a, const ComplexMatrix& b,
                              const StateVector& psi) {
  return 2.0 * std::abs(inner(a * psi, b * psi).imag());
}

// Golden-section maximization on [lo, hi]; endpoints are compared at the end
// so monotone functions converge onto the boundary.
template <typename F>
double golden_max(const F& f, double lo, double hi, std::size_t* evals) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  *evals += 2;
  for (int it = 0; it < 120 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
    ++*evals;
  }
  double best = f1 >= f2 ? x1 : x2;
  double fbest = std::max(f1, f2);
  for (double x : {lo, hi}) {
    const double fx = f(x);
    ++*evals;
    if (fx > fbest) {
      fbest = fx;
      best = x;
    }
  }
  return best;
}

ComplexMatrix v_t_at(const ControlledGateSpec& spec, double theta) {
  const ComplexMatrix pu = pauli_along(spec.u);
  const cplx phase = std::polar(1.0, spec.phase_phi);
  return phase * (std::cos(theta / 2.0) * ComplexMatrix::identity(2) +
                  (kI * std::sin(theta / 2.0)) * pu);
}

// sum_a |phi_a'><phi_a| (x) V_a.
ComplexMatrix controlled(const ControlledGateSpec& spec, const ComplexMatrix& v0,
                         const ComplexMatrix& v1) {
  return kron(outer(spec.final0(), spec.phi0), v0) + kron(outer(spec.final1(), spec.phi1), v1);
}

double norm3(const std::array<double, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

void require_qubit_pair(const ControlledGateSpec& spec, const char* who) {
  if (spec.control_dim() != 2 || spec.target_dim() != 2 || !spec.explicit_v_t.empty()) {
    throw DimensionError(std::string(who) + ": needs a qubit control and a qubit target");
  }
}

}  // namespace

// ------------------------------------------------------------------- SWAP

double swap_way_rhs(double b, const StateVector& chi, double sigma_p) {
  if (chi.dim() != 2 || !chi.is_normalized(1e-10)) {
    throw PreconditionError("swap_way_rhs: chi must be a normalized qubit state");
  }
  // Rayleigh quotients, so rounding in the norm of chi cancels.
  const double n2 = inner(chi, chi).real();
  const double sy = expectation(pauli_y(), chi).real() / n2;
  const double sx = expectation(pauli_x(), chi).real() / n2;
  const double vx = 1.0 - sx * sx;
  const double den = b * b * vx + sigma_p * sigma_p;
  if (!(den > 0.0)) {
    throw UndefinedBoundError("swap_way_rhs: b^2 sigma(sigma_x)^2 + sigma_p^2 vanishes");
  }
  return b * b * sy * sy / den;
}

double g_surface(const GSurfaceQuery& q) {
  if (q.r < 0.0 || q.r > 0.5 || q.theta < 0.0 || q.theta >= 2.0 * kPi) {
    throw PreconditionError("g_surface: need r in [0, 1/2] and theta in [0, 2 pi)");
  }
  const double b2 = q.b * q.b;
  const double c = std::cos(q.theta), s = std::sin(q.theta);
  const double den = b2 * (1.0 - 4.0 * q.r * q.r * c * c) + q.sigma_p * q.sigma_p;
  if (!(den > 0.0)) throw UndefinedBoundError("g_surface: denominator vanishes");
  return 4.0 * b2 * q.r * q.r * s * s / den;
}

GSurfaceMax g_surface_max(double b, double sigma_p, std::size_t r_points,
                          std::size_t theta_points) {
  if (r_points < 2 || theta_points < 4) {
    throw PreconditionError("g_surface_max: grid too coarse");
  }
  if (!(sigma_p > 0.0)) {
    throw UndefinedBoundError("g_surface_max: sigma_p must be positive");
  }
  GSurfaceMax best;
  best.value = -1.0;
  const double dr = 0.5 / static_cast<double>(r_points - 1);
  const double dth = 2.0 * kPi / static_cast<double>(theta_points);
  const auto g = [&](double r, double th) {
    ++best.evaluations;
    return g_surface({r, th, b, sigma_p});
  };
  for (std::size_t i = 0; i < r_points; ++i) {
    const double r = static_cast<double>(i) * dr;
    for (std::size_t j = 0; j < theta_points; ++j) {
      const double th = (static_cast<double>(j) + 0.5) * dth;
      const double v = g(r, th);
      if (v > best.value) best = {v, r, th, best.evaluations};
    }
  }
  for (int round = 0; round < 4; ++round) {
    best.r = golden_max([&](double r) { return g(r, best.theta); },
                        std::max(0.0, best.r - dr), std::min(0.5, best.r + dr),
                        &best.evaluations);
    const double lo = std::max(0.0, best.theta - dth);
    const double hi = std::min(std::nextafter(2.0 * kPi, 0.0), best.theta + dth);
    best.theta = golden_max([&](double th) { return g(best.r, th); }, lo, hi,
                            &best.evaluations);
  }
  best.value = g(best.r, best.theta);
  return best;
}

double swap_fidelity_bound(double b, double sigma_p) {
  const double den = 4.0 * b * b + 4.0 * sigma_p * sigma_p;
  if (!(den > 0.0)) throw UndefinedBoundError("swap_fidelity_bound: b = sigma_p = 0");
  return 1.0 - b * b / den;
}

double swap_coefficient_factor(const StateVector& psi_sd) {
  if (psi_sd.dim() != 4) throw DimensionError("swap_coefficient_factor: needs S (x) D qubits");
  const auto c = [&](int a, int d) { return std::abs(psi_sd[2 * a + d]); };
  return 1.0 + 2.0 * (c(1, 0) * c(1, 1) + c(0, 0) * c(0, 1));
}

ComplexMatrix swap_gate() {
  return ComplexMatrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
}

// --------------------------------------------------------------- Hadamard

double hadamard_bound_rhs(double sigma_lx) {
  if (!(sigma_lx >= 0.0)) throw PreconditionError("hadamard_bound_rhs: sigma must be >= 0");
  return 1.0 / (4.0 + 16.0 * sigma_lx * sigma_lx);
}

std::array<ComplexMatrix, 3> spin_operators(std::size_t dim) {
  if (dim < 1) throw DimensionError("spin_operators: dimension must be >= 1");
  const double j = (static_cast<double>(dim) - 1.0) / 2.0;
  ComplexMatrix jp(dim, dim), jz(dim, dim);
  // Basis |j, m> with m = j - k.
  for (std::size_t k = 0; k < dim; ++k) {
    const double m = j - static_cast<double>(k);
    jz(k, k) = m;
    if (k > 0) jp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix jm = jp.adjoint();
  return {0.5 * (jp + jm), cplx(0.0, -0.5) * (jp - jm), jz};
}

HadamardModel random_hadamard_model(Rng& rng, std::size_t probe_dim) {
  const auto s = spin_operators(2);
  const auto jd = spin_operators(probe_dim);
  HadamardModel hm;
  auto& m = hm.model;
  m.layout = TensorLayout({{"S", 2}, {"D", probe_dim}});
  m.system_labels = {"S"};
  hm.cons = ConservationSpec::additive(s[0], jd[0]);
  m.unitary = block_conserving_unitary(hm.cons.total(), rng);
  m.probe_init = random_state(probe_dim, rng);
  m.meter_label = "S";
  m.meter = s[0];
  m.measured_label = "S";
  m.measured = s[2];
  m.validate();
  return hm;
}

BoundReport hadamard_check(const HadamardModel& hm, const OptimizerConfig* fidelity_cfg,
                           double tolerance) {
  const auto& m = hm.model;
  m.validate();
  if (m.system_dim() != 2) throw DimensionError("hadamard_check: S must be a qubit");
  const StateVector chi = StateVector{1.0, kI}.normalized();  // s_y = +1/2
  const BoundReport way = way_additive_check(m, hm.cons, chi, tolerance);
  const double eps = measurement_error(m, chi);
  const double sigma_lx = std_dev(hm.cons.l_probe, m.probe_init);
  BoundReport r = BoundReport::make("hadamard", eps * eps, hadamard_bound_rhs(sigma_lx),
                                    tolerance);
  r.inputs = {{"epsilon", eps}, {"sigma_Lx", sigma_lx},
              {"probe_dim", static_cast<double>(m.probe_dim())}};
  r.diagnostics = {{"way_additive_rhs", way.rhs},
                   {"way_additive_slack", way.slack},
                   {"conservation_residual", way.diagnostics.at("conservation_residual")}};
  if (fidelity_cfg) {
    QuantumChannel ch{m.layout, m.probe_labels(), m.unitary, m.probe_init};
    const double h = 1.0 / std::sqrt(2.0);
    const ComplexMatrix had{{h, h}, {h, -h}};
    const MetricEstimate f = gate_fidelity_inf(ch, had, *fidelity_cfg);
    r.diagnostics["one_minus_fidelity_sq"] = 1.0 - f.value * f.value;
    r.witnesses["fidelity_witness"] = f.witness;
  }
  r.witnesses["input"] = chi;
  return r;
}

// ----------------------------------------------------- controlled gates

ComplexMatrix pauli_along(const std::array<double, 3>& n) {
  return n[0] * pauli_x() + n[1] * pauli_y() + n[2] * pauli_z();
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::size_t ControlledGateSpec::target_dim() const {
  return explicit_v_t.empty() ? 2 : explicit_v_t.rows();
}

void ControlledGateSpec::validate() const {
  if (phi0.dim() < 2 || phi1.dim() != phi0.dim()) {
    throw DimensionError("controlled gate: phi0 and phi1 must share a dimension >= 2");
  }
  for (const StateVector* p : {&phi0, &phi1, &final0(), &final1()}) {
    if (p->dim() != phi0.dim() || !p->is_normalized(1e-12)) {
      throw PreconditionError("controlled gate: control states must be normalized");
    }
  }
  if (std::abs(inner(phi0, phi1)) > 1e-12 || std::abs(inner(final0(), final1())) > 1e-12) {
    throw PreconditionError("controlled gate: control states must be orthogonal");
  }
  if (!explicit_v_t.empty()) {
    if (!explicit_v_t.is_square() || explicit_v_t.unitarity_residual() > 1e-10) {
      throw PreconditionError("controlled gate: V_T must be unitary");
    }
    return;
  }
  if (std::abs(norm3(u) - 1.0) > 1e-12) {
    throw PreconditionError("controlled gate: u must be a unit vector");
  }
  if (theta < 0.0 || theta > kPi) throw PreconditionError("controlled gate: theta not in [0, pi]");
  if (phase_phi < 0.0 || phase_phi >= 2.0 * kPi) {
    throw PreconditionError("controlled gate: phase not in [0, 2 pi)");
  }
}

ComplexMatrix ControlledGateSpec::v_t() const {
  return explicit_v_t.empty() ? v_t_at(*this, theta) : explicit_v_t;
}

std::array<double, 3> ControlledGateSpec::v() const {
  // R^{-1} takes +x to u: axis x cross u, angle acos(u_x); v = R^{-1} z.
  const std::array<double, 3> k0 = cross({1.0, 0.0, 0.0}, u);
  const double sn = norm3(k0);
  if (sn < 1e-12) return {0.0, 0.0, 1.0};
  const std::array<double, 3> k{k0[0] / sn, k0[1] / sn, k0[2] / sn};
  const double cs = u[0];
  const std::array<double, 3> kz = cross(k, {0.0, 0.0, 1.0});
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) {
    v[i] = (i == 2 ? cs : 0.0) + kz[i] * sn + k[i] * k[2] * (1.0 - cs);
  }
  return v;
}

ComplexMatrix ControlledGateSpec::sigma_l() const { return projector(phi0) - projector(phi1); }

ComplexMatrix ControlledGateSpec::sigma_l_prime() const {
  return projector(final0()) - projector(final1());
}

StateVector ControlledGateSpec::chi0() const {
  const auto n = v();
  if (n[2] < -1.0 + 1e-12) return StateVector::basis(2, 1);
  return StateVector{cplx(1.0 + n[2], 0.0), cplx(n[0], n[1])}.normalized();
}

StateVector ControlledGateSpec::chi1() const { return pauli_along(u) * chi0(); }

ComplexMatrix ControlledGateSpec::ideal_gate() const {
  validate();
  if (control_dim() != 2) throw DimensionError("ideal_gate: control must be a qubit");
  const std::size_t dt = target_dim();
  return controlled(*this, ComplexMatrix::identity(dt), v_t());
}

ComplexMatrix ControlledGateSpec::tilde_gate() const {
  validate();
  require_qubit_pair(*this, "tilde_gate");
  return controlled(*this, v_t_at(*this, kPi + theta), v_t_at(*this, kPi));
}

ComplexMatrix ControlledSystem::hamiltonian() const {
  if (h_c.empty() || h_t.empty()) throw DimensionError("controlled system: H_C and H_T required");
  ComplexMatrix h = kron(h_c, ComplexMatrix::identity(h_t.rows())) +
                    kron(ComplexMatrix::identity(h_c.rows()), h_t);
  if (!h_int.empty()) h += h_int;
  return h;
}

std::vector<StateVector> target_probe_states(std::size_t dim) {
  std::vector<StateVector> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back(StateVector::basis(dim, i));
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      StateVector p(dim), q(dim);
      p[i] = h;
      p[j] = h;
      q[i] = h;
      q[j] = cplx(0.0, h);
      out.push_back(p);
      out.push_back(q);
    }
  }
  return out;
}

BoundReport cu_constraints(const ControlledGateSpec& spec, const ControlledSystem& sys,
                           const std::vector<StateVector>& target_states, double tolerance) {
  spec.validate();
  const std::size_t dc = spec.control_dim(), dt = spec.target_dim();
  if (sys.h_c.rows() != dc || sys.h_t.rows() != dt) {
    throw DimensionError("cu_constraints: H_C or H_T does not match the gate");
  }
  const ComplexMatrix h_int =
      sys.h_int.empty() ? ComplexMatrix::zeros(dc * dt, dc * dt) : sys.h_int;
  if (h_int.rows() != dc * dt) throw DimensionError("cu_constraints: H_int must act on C (x) T");
  const std::vector<StateVector> targets =
      target_states.empty() ? target_probe_states(dt) : target_states;

  const double m1 = std::abs(inner(spec.phi0, sys.h_c * spec.phi1));
  const double m2 = std::abs(inner(spec.phi0, sys.h_c * (sys.h_c * spec.phi1)));

  const bool evolved = !sys.unitary.empty();
  const ComplexMatrix h_int_tau =
      evolved ? sys.unitary.adjoint() * h_int * sys.unitary : ComplexMatrix();
  double weak0 = 0.0, weak_tau = 0.0, strong = 0.0;
  const std::array<const StateVector*, 2> init{&spec.phi0, &spec.phi1};
  const std::array<const StateVector*, 4> all{&spec.phi0, &spec.phi1, &spec.final0(),
                                              &spec.final1()};
  for (const StateVector& psi : targets) {
    if (psi.dim() != dt) throw DimensionError("cu_constraints: target state dimension");
    // The form vanishes on every superposition of phi0, phi1 iff all four
    // matrix elements vanish.
    for (const StateVector* a : init) {
      for (const StateVector* b : init) {
        const StateVector pa = kron(*a, psi), pb = kron(*b, psi);
        weak0 = std::max(weak0, std::abs(inner(pa, h_int * pb)));
        if (evolved) weak_tau = std::max(weak_tau, std::abs(inner(pa, h_int_tau * pb)));
      }
    }
    for (const StateVector* a : all) strong = std::max(strong, (h_int * kron(*a, psi)).norm());
  }

  // A target unitary proportional to I makes <psi|V_T|psi> constant, so the
  // moments are then unconstrained.
  const ComplexMatrix vt = spec.v_t();
  const cplx mean = vt.trace() / static_cast<double>(dt);
  const double nontrivial = op_norm(vt - mean * ComplexMatrix::identity(dt));
  const bool trivial = nontrivial <= 1e-12;

  const bool is_strong = strong <= tolerance;
  const bool is_weak = weak0 <= tolerance && (!evolved || weak_tau <= tolerance);
  const std::string regime = is_strong ? "strong" : (is_weak ? "weak" : "unassumed");
  const double binding = trivial ? 0.0 : (is_strong ? std::max(m1, m2) : m1);
  BoundReport r = BoundReport::make("cu_constraints", 0.0, binding, tolerance);
  r.labels["regime"] = regime;
  r.labels["target"] = trivial ? "trivial" : "nontrivial";
  r.diagnostics = {{"first_moment", m1},
                   {"second_moment", m2},
                   {"weak_residual_initial", weak0},
                   {"strong_residual", strong},
                   {"target_nontriviality", nontrivial}};
  if (evolved) r.diagnostics["weak_residual_evolved"] = weak_tau;
  if (!evolved) r.warnings.push_back("no unitary given: weak assumption checked before U only");
  if (regime == "unassumed") {
    r.warnings.push_back("H_int violates both assumptions; the moments are reported only");
  }
  r.inputs = {{"control_dim", static_cast<double>(dc)},
              {"target_dim", static_cast<double>(dt)},
              {"target_states", static_cast<double>(targets.size())}};
  return r;
}

BoundReport wayone_identity_check(const ControlledGateSpec& spec, const ControlledSystem& sys,
                                  const std::vector<StateVector>& psi_pool, double tolerance) {
  spec.validate();
  const std::size_t dc = spec.control_dim(), dt = spec.target_dim();
  if (sys.unitary.rows() != dc * dt || sys.h_c.rows() != dc) {
    throw DimensionError("wayone_identity_check: U must act on C (x) T");
  }
  const ComplexMatrix vt = spec.v_t();
  double gate_res = 0.0;
  for (std::size_t k = 0; k < dt; ++k) {
    const StateVector e = StateVector::basis(dt, k);
    gate_res = std::max(gate_res,
                        (sys.unitary * kron(spec.phi0, e) - kron(spec.final0(), e)).norm());
    gate_res = std::max(gate_res,
                        (sys.unitary * kron(spec.phi1, e) - kron(spec.final1(), vt * e)).norm());
  }
  if (gate_res > 1e-9) {
    throw PreconditionError(residual_message("wayone_identity_check: gate action", gate_res, 1e-9));
  }
  const double cres = conservation_residual(sys.unitary, sys.hamiltonian());
  if (cres > 1e-9) {
    throw PreconditionError(residual_message("wayone_identity_check: conservation", cres, 1e-9));
  }
  const cplx lhs = inner(spec.phi0, sys.h_c * spec.phi1);
  const cplx hp = inner(spec.final0(), sys.h_c * spec.final1());
  double worst = 0.0;
  std::size_t worst_index = 0;
  for (std::size_t i = 0; i < psi_pool.size(); ++i) {
    const double d = std::abs(lhs - hp * inner(psi_pool[i], vt * psi_pool[i]));
    if (d > worst) {
      worst = d;
      worst_index = i;
    }
  }
  BoundReport r = BoundReport::make("wayone_identity", 0.0, worst, tolerance);
  r.inputs = {{"pool_size", static_cast<double>(psi_pool.size())},
              {"first_moment", std::abs(lhs)},
              {"final_moment", std::abs(hp)}};
  r.diagnostics = {{"gate_residual", gate_res}, {"conservation_residual", cres}};
  if (!psi_pool.empty()) r.witnesses["worst"] = psi_pool[worst_index];
  return r;
}

// -------------------------------------------- two-qubit controlled gates

EnvComponents env_components(const QuantumChannel& ch, const ControlledGateSpec& spec) {
  ch.validate();
  spec.validate();
  require_qubit_pair(spec, "env_components");
  if (ch.system_labels() != std::vector<std::string>{"C", "T"} || ch.system_dim() != 4) {
    throw DimensionError("env_components: channel system must be qubits C then T");
  }
  const std::size_t a = ch.ancilla_dim();
  const ComplexMatrix w = ch.isometry();
  const std::array<StateVector, 2> phi{spec.phi0, spec.phi1};
  const std::array<StateVector, 2> fin{spec.final0(), spec.final1()};
  const std::array<StateVector, 2> chi{spec.chi0(), spec.chi1()};
  EnvComponents env;
  for (int a0 = 0; a0 < 2; ++a0) {
    for (int b0 = 0; b0 < 2; ++b0) {
      const StateVector out = w * kron(phi[a0], chi[b0]);
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          const StateVector bra = kron(fin[c], chi[d]);
          StateVector e(a);
          for (std::size_t s = 0; s < 4; ++s) {
            const cplx cb = std::conj(bra[s]);
            for (std::size_t k = 0; k < a; ++k) e[k] += cb * out[s * a + k];
          }
          env.e[a0][b0][c][d] = e;
        }
      }
    }
  }
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      cplx g = 0.0;
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) g += inner(env.e[p / 2][p % 2][j][k], env.e[q / 2][q % 2][j][k]);
      env.orthonormality_residual =
          std::max(env.orthonormality_residual, std::abs(g - (p == q ? 1.0 : 0.0)));
    }
  }
  return env;
}

std::array<std::array<double, 2>, 2> basis_fidelities(const EnvComponents& env,
                                                      const ControlledGateSpec& spec,
                                                      bool tilde) {
  const double c = std::cos(spec.theta / 2.0), s = std::sin(spec.theta / 2.0);
  std::array<std::array<double, 2>, 2> f{};
  for (int b = 0; b < 2; ++b) {
    const int nb = 1 - b;
    if (!tilde) {
      f[0][b] = env.at(0, b, 0, b).norm();
      f[1][b] = (cplx(c) * env.at(1, b, 1, b) + cplx(0.0, -s) * env.at(1, b, 1, nb)).norm();
    } else {
      f[0][b] = (cplx(s) * env.at(0, b, 0, b) + cplx(0.0, c) * env.at(0, b, 0, nb)).norm();
      f[1][b] = env.at(1, b, 1, nb).norm();
    }
  }
  return f;
}

std::vector<BoundReport> AppendixDReport::checks(double tolerance) const {
  BoundReport unc =
      BoundReport::make("appendix_d_uncertainty", rhs_uncertainty, lhs_uncertainty, tolerance);
  unc.inputs = {{"commutator_abs", commutator}, {"gamma", gamma},
                {"delta_HA_prime", delta_ha_prime}, {"norm_HA", norm_ha}};
  unc.diagnostics = {{"delta_CC", delta_cc}, {"delta_TC", delta_tc},
                     {"conservation_residual", conservation_residual}};
  BoundReport chain =
      BoundReport::make("appendix_d_fidelity_chain", chain_rhs, rhs_uncertainty, tolerance);
  chain.diagnostics = {{"F00", fidelity[0][0]}, {"F01", fidelity[0][1]},
                       {"F10", fidelity[1][0]}, {"F11", fidelity[1][1]},
                       {"f00", tilde_fidelity[0][0]}, {"f01", tilde_fidelity[0][1]},
                       {"f10", tilde_fidelity[1][0]}, {"f11", tilde_fidelity[1][1]},
                       {"orthonormality_residual", orthonormality_residual}};
  return {unc, chain};
}

AppendixDReport appendix_d_check(const QuantumChannel& ch, const ControlledGateSpec& spec,
                                 const ComplexMatrix& h_c, const ComplexMatrix& h_t,
                                 const ComplexMatrix& h_a, const StateVector& psi_c,
                                 const ComplexMatrix& h_int) {
  const EnvComponents env = env_components(ch, spec);
  const std::size_t a = ch.ancilla_dim();
  const std::size_t n = 4 * a;
  if (h_c.rows() != 2 || h_t.rows() != 2 || h_a.rows() != a) {
    throw DimensionError("appendix_d_check: H_C, H_T, H_A dimensions");
  }
  if (psi_c.dim() != 2 || !psi_c.is_normalized(1e-10)) {
    throw PreconditionError("appendix_d_check: psi_C must be a normalized qubit state");
  }
  const ComplexMatrix i2 = ComplexMatrix::identity(2), ia = ComplexMatrix::identity(a);
  const ComplexMatrix hc_full = kron(kron(h_c, i2), ia);
  const ComplexMatrix ha_full = kron(ComplexMatrix::identity(4), h_a);
  ComplexMatrix h = hc_full + kron(kron(i2, h_t), ia) + ha_full;
  if (!h_int.empty()) {
    if (h_int.rows() != n) throw DimensionError("appendix_d_check: H_int dimension");
    h += h_int;
  }
  AppendixDReport rep;
  rep.conservation_residual = conservation_residual(ch.unitary, h);
  if (rep.conservation_residual > 1e-9) {
    throw PreconditionError(
        residual_message("appendix_d_check: conservation", rep.conservation_residual, 1e-9));
  }
  rep.orthonormality_residual = env.orthonormality_residual;

  const double c = std::cos(spec.theta / 2.0), s = std::sin(spec.theta / 2.0);
  const auto v = spec.v();
  const ComplexMatrix x_t = s * pauli_along(v) - c * pauli_along(cross(v, spec.u));
  const ComplexMatrix sl = kron(spec.sigma_l(), ComplexMatrix::identity(2 * a));
  const ComplexMatrix slp = kron(spec.sigma_l_prime(), ComplexMatrix::identity(2 * a));
  const ComplexMatrix x_full = kron(kron(i2, x_t), ia);
  const ComplexMatrix ud = ch.unitary.adjoint();

  const StateVector psi0 = kron(kron(psi_c, spec.chi0()), ch.ancilla_init);
  const StateVector out = ch.unitary * psi0;
  const StateVector sl_psi = cplx(s) * (sl * psi0);
  rep.delta_cc = (cplx(s) * (ud * (slp * out)) - sl_psi).norm();
  rep.delta_tc = (ud * (x_full * out) - sl_psi).norm();

  rep.gamma = std::max(op_norm(h_c), op_norm(h_t));
  rep.norm_ha = op_norm(h_a);
  rep.delta_ha_prime = std_dev(ha_full, out);
  rep.commutator = commutator_expectation(s * sl, hc_full, psi0);
  const double den = 2.0 * std::pow(2.0 * rep.gamma + rep.delta_ha_prime, 2);
  rep.lhs_uncertainty = den > 0.0 ? rep.commutator * rep.commutator / den : 0.0;
  rep.rhs_uncertainty = rep.delta_tc * rep.delta_tc + rep.delta_cc * rep.delta_cc;

  rep.fidelity = basis_fidelities(env, spec, false);
  rep.tilde_fidelity = basis_fidelities(env, spec, true);
  const double p0 = std::norm(inner(spec.phi0, psi_c));
  const double p1 = std::norm(inner(spec.phi1, psi_c));
  const auto& F = rep.fidelity;
  const auto& f = rep.tilde_fidelity;
  rep.chain_rhs = 4.0 * p0 * (1.0 - f[0][0] * f[0][0]) + 4.0 * p1 * (1.0 - F[1][0] * F[1][0]) +
                  4.0 * p0 * (1.0 - F[0][0] * F[0][0]) + 4.0 * p1 * (1.0 - f[1][0] * f[1][0]);
  return rep;
}

double two_qubit_bound_rhs(const ControlledGateSpec& spec, const ComplexMatrix& h_c,
                           const ComplexMatrix& h_t, const ComplexMatrix& h_a) {
  spec.validate();
  const double s = std::sin(spec.theta / 2.0);
  const double comm = op_norm(commutator(spec.sigma_l(), h_c));
  const double gamma = std::max(op_norm(h_c), op_norm(h_t));
  const double den = 16.0 * std::pow(2.0 * gamma + op_norm(h_a), 2);
  const double num = s * s * comm * comm;
  if (den == 0.0) return 0.0;  // gamma = 0 forces H_C = 0, so num = 0 too
  return num / den;
}

ControlledModel exact_cz_model() {
  ControlledModel m;
  m.spec.phi0 = StateVector::basis(2, 0);
  m.spec.phi1 = StateVector::basis(2, 1);
  m.spec.phi1_prime = StateVector{0.0, -1.0};
  m.spec.theta = kPi;
  m.spec.u = {0.0, 0.0, 1.0};
  m.spec.phase_phi = 1.5 * kPi;  // e^{i phi} i Z = Z
  m.sys.h_c = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
  m.sys.h_t = ComplexMatrix::zeros(2, 2);
  m.sys.h_int = ComplexMatrix::diagonal(std::vector<double>{0.0, 0.0, 0.0, 1.0});
  m.sys.unitary = evolve(m.sys.hamiltonian(), kPi);
  return m;
}

ControlledGateSpec random_controlled_spec(Rng& rng, double theta) {
  ControlledGateSpec spec;
  const ComplexMatrix v = random_unitary(2, rng);
  spec.phi0 = v * StateVector::basis(2, 0);
  spec.phi1 = v * StateVector::basis(2, 1);
  if (rng.uniform() < 0.5) {
    const ComplexMatrix w = random_unitary(2, rng);
    spec.phi0_prime = w * StateVector::basis(2, 0);
    spec.phi1_prime = w * StateVector::basis(2, 1);
  }
  spec.theta = theta;
  spec.phase_phi = 2.0 * kPi * rng.uniform();
  double n = 0.0;
  for (double& x : spec.u) {
    x = rng.normal();
    n += x * x;
  }
  for (double& x : spec.u) x /= std::sqrt(n);
  spec.validate();
  return spec;
}

QuantumChannel perfect_two_qubit_channel(const ControlledGateSpec& spec, std::size_t anc_dim,
                                         Rng& rng) {
  QuantumChannel ch;
  ch.layout = TensorLayout({{"C", 2}, {"T", 2}, {"A", anc_dim}});
  ch.ancilla_labels = {"A"};
  ch.unitary = kron(spec.ideal_gate(), ComplexMatrix::identity(anc_dim));
  ch.ancilla_init = random_state(anc_dim, rng);
  ch.validate();
  return ch;
}

TwoQubitImplementation random_two_qubit_implementation(Rng& rng, std::size_t anc_dim) {
  if (anc_dim < 1) throw DimensionError("random_two_qubit_implementation: ancilla dim >= 1");
  TwoQubitImplementation impl;
  const auto spectrum = [&](std::size_t d) {
    std::vector<double> e(d);
    for (auto& x : e) x = static_cast<double>(rng.uniform_int(-1, 1));
    return e;
  };
  const ComplexMatrix vc = random_unitary(2, rng);
  impl.h_c = vc * ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0}) * vc.adjoint();
  const ComplexMatrix vt = random_unitary(2, rng);
  impl.h_t = vt * ComplexMatrix::diagonal(spectrum(2)) * vt.adjoint();
  impl.h_a = ComplexMatrix::diagonal(spectrum(anc_dim));
  const ComplexMatrix i2 = ComplexMatrix::identity(2), ia = ComplexMatrix::identity(anc_dim);
  const ComplexMatrix h = kron(kron(impl.h_c, i2), ia) + kron(kron(i2, impl.h_t), ia) +
                          kron(ComplexMatrix::identity(4), impl.h_a);
  impl.channel.layout = TensorLayout({{"C", 2}, {"T", 2}, {"A", anc_dim}});
  impl.channel.ancilla_labels = {"A"};
  impl.channel.unitary = block_conserving_unitary(h, rng);
  impl.channel.ancilla_init = random_state(anc_dim, rng);
  impl.channel.validate();
  return impl;
}

BoundReport two_qubit_cb_check(const TwoQubitImplementation& impl,
                               const ControlledGateSpec& spec, const OptimizerConfig& cfg,
                               double tolerance) {
  const double rhs = two_qubit_bound_rhs(spec, impl.h_c, impl.h_t, impl.h_a);
  const MetricEstimate cb = cb_distance_lower(impl.channel, spec.ideal_gate(), cfg);
  BoundReport r = BoundReport::make("two_qubit_cb", cb.value, std::sqrt(rhs), tolerance);
  r.inputs = {{"bound_rhs", rhs}, {"theta", spec.theta}};
  r.diagnostics = {{"starts", static_cast<double>(cb.starts)},
                   {"iterations", static_cast<double>(cb.iterations)},
                   {"converged", cb.converged ? 1.0 : 0.0}};
  r.labels["contract"] = cb.contract;
  r.witnesses["cb"] = cb.witness;
  return r;
}

}  // namespace waybound
