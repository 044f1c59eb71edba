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

#include "waybound/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "waybound/errors.hpp"

namespace waybound {

void QuantumChannel::validate() const {
  const auto labels = layout.labels();
  if (ancilla_labels.size() > labels.size())
    throw DimensionError("QuantumChannel: more ancilla labels than factors");
  const std::size_t first = labels.size() - ancilla_labels.size();
  for (std::size_t i = 0; i < ancilla_labels.size(); ++i)
    if (labels[first + i] != ancilla_labels[i])
      throw DimensionError("QuantumChannel: ancilla labels must be the trailing factors");
  const std::size_t n = layout.total_dim();
  if (unitary.rows() != n || unitary.cols() != n)
    throw DimensionError("QuantumChannel: unitary does not match layout");
  if (ancilla_init.dim() != ancilla_dim())
    throw DimensionError("QuantumChannel: ancilla_init dimension");
  const double ur = unitary.unitarity_residual();
  if (ur > 1e-10) {
    std::ostringstream msg;
    msg << "QuantumChannel: unitarity residual " << ur << " > 1e-10";
    throw PreconditionError(msg.str());
  }
  if (!ancilla_init.is_normalized(1e-10))
    throw PreconditionError("QuantumChannel: ancilla_init not normalized");
}

std::vector<std::string> QuantumChannel::system_labels() const {
  return layout.complement(ancilla_labels);
}

std::size_t QuantumChannel::system_dim() const {
  return layout.total_dim() / ancilla_dim();
}

std::size_t QuantumChannel::ancilla_dim() const {
  return ancilla_labels.empty() ? 1 : layout.dim_of(ancilla_labels);
}

ComplexMatrix QuantumChannel::isometry() const {
  const std::size_t s = system_dim();
  const std::size_t a = ancilla_dim();
  ComplexMatrix w(s * a, s);
  for (std::size_t r = 0; r < s * a; ++r)
    for (std::size_t j = 0; j < s; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < a; ++k) acc += unitary(r, j * a + k) * ancilla_init[k];
      w(r, j) = acc;
    }
  return w;
}

std::vector<ComplexMatrix> QuantumChannel::kraus() const {
  const std::size_t s = system_dim();
  const std::size_t a = ancilla_dim();
  const ComplexMatrix w = isometry();
  std::vector<ComplexMatrix> out(a, ComplexMatrix(s, s));
  for (std::size_t k = 0; k < a; ++k)
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) out[k](i, j) = w(i * a + k, j);
  return out;
}

namespace {

void check_density(const ComplexMatrix& rho, std::size_t dim, const char* who) {
  if (rho.rows() != dim || rho.cols() != dim) {
    std::ostringstream msg;
    msg << who << ": expected " << dim << "x" << dim << " density matrix, got "
        << rho.rows() << "x" << rho.cols();
    throw DimensionError(msg.str());
  }
  const double herm = rho.hermiticity_residual();
  const double tr_err = std::abs(rho.trace() - 1.0);
  if (herm > 1e-9 || tr_err > 1e-9) {
    std::ostringstream msg;
    msg << who << ": not a density matrix (hermiticity " << herm << ", trace error "
        << tr_err << ")";
    throw PreconditionError(msg.str());
  }
  const double low = herm_eig(0.5 * (rho + rho.adjoint())).values.front();
  if (low < -1e-9) {
    std::ostringstream msg;
    msg << who << ": smallest eigenvalue " << low << " < -1e-9";
    throw PreconditionError(msg.str());
  }
}

void check_ideal(const QuantumChannel& ch, const ComplexMatrix& ideal) {
  const std::size_t s = ch.system_dim();
  if (ideal.rows() != s || ideal.cols() != s)
    throw DimensionError("ideal gate does not match the channel's system dimension");
}

// Output factor Z with (E (x) I)(psi psi^dag) = Z Z^dag. Psi is psi reshaped
// to system x reference; Z(i * r + j, k) = (W Psi)(i * a + k, j).
ComplexMatrix output_factor(const ComplexMatrix& w, std::size_t s, std::size_t a,
                            const StateVector& psi) {
  const std::size_t r = psi.dim() / s;
  ComplexMatrix z(s * r, a);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < a; ++k) {
      const std::size_t row = i * a + k;
      for (std::size_t j = 0; j < r; ++j) {
        cplx acc = 0.0;
        for (std::size_t m = 0; m < s; ++m) acc += w(row, m) * psi[m * r + j];
        z(i * r + j, k) = acc;
      }
    }
  return z;
}

// (U_ideal (x) I) psi.
StateVector ideal_output(const ComplexMatrix& ideal, const StateVector& psi) {
  const std::size_t s = ideal.rows();
  const std::size_t r = psi.dim() / s;
  StateVector out(psi.dim());
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      cplx acc = 0.0;
      for (std::size_t m = 0; m < s; ++m) acc += ideal(i, m) * psi[m * r + j];
      out[i * r + j] = acc;
    }
  return out;
}

double fidelity_from_isometry(const ComplexMatrix& w, const ComplexMatrix& ideal,
                              std::size_t a, const StateVector& psi) {
  const std::size_t s = ideal.rows();
  const ComplexMatrix z = output_factor(w, s, a, psi);
  const StateVector phi = ideal * psi;
  double f2 = 0.0;
  for (std::size_t k = 0; k < a; ++k) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < s; ++i) acc += std::conj(z(i, k)) * phi[i];
    f2 += std::norm(acc);
  }
  return std::sqrt(std::clamp(f2, 0.0, 1.0));
}

// rho - phi phi^dag = B J B^dag with B = [Z | phi] and J = diag(1, .., 1, -1).
// A thin QR B = Q R turns this into R J R^dag, whose size is the rank of B
// rather than the joint dimension.
double distance_from_isometry(const ComplexMatrix& w, const ComplexMatrix& ideal,
                              std::size_t a, const StateVector& psi) {
  const std::size_t s = ideal.rows();
  const ComplexMatrix z = output_factor(w, s, a, psi);
  const StateVector phi = ideal_output(ideal, psi);
  const std::size_t n = z.rows();
  if (a + 1 >= n) {
    ComplexMatrix diff = z * z.adjoint();
    diff -= projector(phi);
    return std::clamp(0.5 * norm(diff, NormKind::kTrace), 0.0, 1.0);
  }
  const std::size_t m = a + 1;
  std::vector<std::vector<cplx>> q;
  std::vector<std::vector<cplx>> r(m);  // r[col][row]
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = c < a ? z(i, c) : phi[i];
    double scale = 0.0;
    for (const cplx& x : v) scale += std::norm(x);
    r[c].assign(m, 0.0);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < q.size(); ++k) {
        cplx d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += std::conj(q[k][i]) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= d * q[k][i];
        r[c][k] += d;
      }
    double nv = 0.0;
    for (const cplx& x : v) nv += std::norm(x);
    if (nv > 1e-28 * std::max(scale, 1e-300) && nv > 0.0) {
      const double len = std::sqrt(nv);
      for (cplx& x : v) x /= len;
      r[c][q.size()] = len;
      q.push_back(std::move(v));
    }
  }
  const std::size_t k = q.size();
  ComplexMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        const cplx term = r[c][i] * std::conj(r[c][j]);
        acc += c < a ? term : -term;
      }
      g(i, j) = acc;
    }
  return std::clamp(0.5 * norm(g, NormKind::kTrace), 0.0, 1.0);
}

}  // namespace

ComplexMatrix apply_channel(const QuantumChannel& ch, const ComplexMatrix& rho) {
  ch.validate();
  check_density(rho, ch.system_dim(), "apply_channel");
  const ComplexMatrix joint = kron(rho, projector(ch.ancilla_init));
  return partial_trace(ch.unitary * joint * ch.unitary.adjoint(), ch.ancilla_labels,
                       ch.layout);
}

ComplexMatrix apply_channel_kraus(const QuantumChannel& ch, const ComplexMatrix& rho) {
  ch.validate();
  check_density(rho, ch.system_dim(), "apply_channel_kraus");
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const ComplexMatrix& k : ch.kraus()) out += k * rho * k.adjoint();
  return out;
}

double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols())
    throw DimensionError("trace_distance: dimension mismatch");
  return 0.5 * norm(rho1 - rho2, NormKind::kTrace);
}

double state_fidelity(const QuantumChannel& ch, const ComplexMatrix& ideal,
                      const StateVector& psi) {
  ch.validate();
  check_ideal(ch, ideal);
  if (psi.dim() != ch.system_dim()) throw DimensionError("state_fidelity: psi dimension");
  if (!psi.is_normalized(1e-9)) throw PreconditionError("state_fidelity: psi not normalized");
  return fidelity_from_isometry(ch.isometry(), ideal, ch.ancilla_dim(), psi);
}

double extended_output_distance(const QuantumChannel& ch, const ComplexMatrix& ideal,
                                const StateVector& psi) {
  ch.validate();
  check_ideal(ch, ideal);
  if (psi.dim() % ch.system_dim() != 0 || psi.dim() == 0)
    throw DimensionError("extended_output_distance: psi dimension");
  return distance_from_isometry(ch.isometry(), ideal, ch.ancilla_dim(), psi);
}

MetricEstimate gate_fidelity_inf(const QuantumChannel& ch, const ComplexMatrix& ideal,
                                 const OptimizerConfig& cfg,
                                 const std::vector<StateVector>& extra_starts) {
  ch.validate();
  check_ideal(ch, ideal);
  const ComplexMatrix w = ch.isometry();
  const std::size_t a = ch.ancilla_dim();
  const auto objective = [&](const StateVector& psi) {
    return fidelity_from_isometry(w, ideal, a, psi);
  };
  return optimize_pure_state(objective, ch.system_dim(), Direction::kMinimize, cfg,
                             extra_starts);
}

MetricEstimate cb_distance_lower(const QuantumChannel& ch, const ComplexMatrix& ideal,
                                 const OptimizerConfig& cfg, std::size_t reference_dim,
                                 const std::vector<StateVector>& extra_starts) {
  ch.validate();
  check_ideal(ch, ideal);
  const std::size_t s = ch.system_dim();
  const std::size_t r = reference_dim == 0 ? s : reference_dim;
  const ComplexMatrix w = ch.isometry();
  const std::size_t a = ch.ancilla_dim();
  const auto objective = [&](const StateVector& psi) {
    return distance_from_isometry(w, ideal, a, psi);
  };
  return optimize_pure_state(objective, s * r, Direction::kMaximize, cfg, extra_starts);
}

BoundReport metric_chain_check(const QuantumChannel& ch, const ComplexMatrix& ideal,
                               const std::vector<StateVector>& psi_pool,
                               const OptimizerConfig& cfg, double tolerance) {
  if (psi_pool.empty()) throw DimensionError("metric_chain_check: empty pool");
  ch.validate();
  check_ideal(ch, ideal);
  const std::size_t s = ch.system_dim();
  const ComplexMatrix w = ch.isometry();
  const std::size_t a = ch.ancilla_dim();

  double worst_slack = 1e300, worst_d = 0.0, worst_gap = 0.0, max_d = 0.0;
  std::size_t worst_index = 0;
  std::vector<StateVector> seeds;
  seeds.reserve(psi_pool.size());
  for (std::size_t i = 0; i < psi_pool.size(); ++i) {
    const StateVector& psi = psi_pool[i];
    if (psi.dim() != s) throw DimensionError("metric_chain_check: pool state dimension");
    const double f = fidelity_from_isometry(w, ideal, a, psi);
    const double d = distance_from_isometry(w, ideal, a, psi);
    const double gap = 1.0 - f * f;
    if (d - gap < worst_slack) {
      worst_slack = d - gap;
      worst_d = d;
      worst_gap = gap;
      worst_index = i;
    }
    max_d = std::max(max_d, d);
    seeds.push_back(kron(psi, StateVector::basis(s, 0)));
  }
  const MetricEstimate cb = cb_distance_lower(ch, ideal, cfg, s, seeds);

  const double cb_slack = cb.value - max_d;
  BoundReport rep = cb_slack < worst_slack
                        ? BoundReport::make("metric_chain", cb.value, max_d, tolerance)
                        : BoundReport::make("metric_chain", worst_d, worst_gap, tolerance);
  rep.labels["binding"] = cb_slack < worst_slack ? "cb_vs_pointwise" : "pointwise";
  rep.diagnostics["pointwise_min_slack"] = worst_slack;
  rep.diagnostics["pointwise_worst_index"] = static_cast<double>(worst_index);
  rep.diagnostics["max_pointwise_distance"] = max_d;
  rep.diagnostics["cb_estimate"] = cb.value;
  rep.diagnostics["cb_slack"] = cb_slack;
  rep.inputs["pool_size"] = static_cast<double>(psi_pool.size());
  rep.witnesses["pointwise_worst"] = psi_pool[worst_index];
  rep.witnesses["cb"] = cb.witness;
  rep.finalize();
  return rep;
}

}  // namespace waybound
