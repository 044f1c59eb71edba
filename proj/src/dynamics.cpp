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

#include "waybound/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "waybound/serialize.hpp"

namespace waybound {
namespace {

void require_hermitian(const ComplexMatrix& op, const std::string& what) {
  const double scale = std::max(1.0, frobenius_norm(op));
  const double r = op.hermiticity_residual();
  if (r > 1e-12 * scale) {
    std::ostringstream msg;
    msg << what << ": hermiticity residual " << r << " exceeds 1e-12";
    throw PreconditionError(msg.str());
  }
}

bool all_in(const std::vector<std::string>& labels,
            const std::vector<std::string>& set) {
  return std::all_of(labels.begin(), labels.end(), [&](const std::string& l) {
    return std::find(set.begin(), set.end(), l) != set.end();
  });
}

bool none_in(const std::vector<std::string>& labels,
             const std::vector<std::string>& set) {
  return std::none_of(labels.begin(), labels.end(), [&](const std::string& l) {
    return std::find(set.begin(), set.end(), l) != set.end();
  });
}

}  // namespace

void HamiltonianSpec::validate() const {
  for (const FreeTerm& t : free_terms) {
    if (!layout.contains(t.label)) {
      throw DimensionError("HamiltonianSpec: unknown label '" + t.label + "'");
    }
    if (t.op.rows() != layout.dim_of(t.label) || !t.op.is_square()) {
      throw DimensionError("HamiltonianSpec: term on '" + t.label +
                           "' has the wrong dimension");
    }
    require_hermitian(t.op, "HamiltonianSpec free term on '" + t.label + "'");
  }
  for (const InteractionTerm& t : interaction_terms) {
    if (t.op.rows() != layout.dim_of(t.labels) || !t.op.is_square()) {
      throw DimensionError("HamiltonianSpec: interaction term has the wrong dimension");
    }
    require_hermitian(t.op, "HamiltonianSpec interaction term");
  }
}

ComplexMatrix build_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  const std::size_t n = spec.layout.total_dim();
  ComplexMatrix h(n, n);
  for (const FreeTerm& t : spec.free_terms)
    h += t.coefficient * embed(t.op, t.label, spec.layout);
  for (const InteractionTerm& t : spec.interaction_terms)
    h += t.coefficient * embed(t.op, t.labels, spec.layout);
  return h;
}

HamiltonianParts split_hamiltonian(const HamiltonianSpec& spec,
                                   const std::vector<std::string>& first) {
  spec.validate();
  const std::size_t n = spec.layout.total_dim();
  HamiltonianParts parts{ComplexMatrix(n, n), ComplexMatrix(n, n), ComplexMatrix(n, n)};
  for (const FreeTerm& t : spec.free_terms) {
    ComplexMatrix e = t.coefficient * embed(t.op, t.label, spec.layout);
    if (all_in({t.label}, first)) {
      parts.first += e;
    } else {
      parts.second += e;
    }
  }
  for (const InteractionTerm& t : spec.interaction_terms) {
    ComplexMatrix e = t.coefficient * embed(t.op, t.labels, spec.layout);
    if (all_in(t.labels, first)) {
      parts.first += e;
    } else if (none_in(t.labels, first)) {
      parts.second += e;
    } else {
      parts.interaction += e;
    }
  }
  return parts;
}

void hamiltonian_to_config(const HamiltonianSpec& spec, const std::string& prefix,
                           KeyValueConfig& out) {
  std::string layout;
  for (const Factor& f : spec.layout.factors()) {
    if (!layout.empty()) layout += ",";
    layout += f.label + ":" + std::to_string(f.dim);
  }
  out.set(prefix + "layout", layout);
  out.set(prefix + "free.count", std::to_string(spec.free_terms.size()));
  for (std::size_t i = 0; i < spec.free_terms.size(); ++i) {
    const std::string k = prefix + "free." + std::to_string(i) + ".";
    out.set(k + "label", spec.free_terms[i].label);
    out.set(k + "coefficient", format_double(spec.free_terms[i].coefficient));
    out.set(k + "op", to_json(spec.free_terms[i].op).dump());
  }
  out.set(prefix + "interaction.count", std::to_string(spec.interaction_terms.size()));
  for (std::size_t i = 0; i < spec.interaction_terms.size(); ++i) {
    const std::string k = prefix + "interaction." + std::to_string(i) + ".";
    std::string labels;
    for (const std::string& l : spec.interaction_terms[i].labels) {
      if (!labels.empty()) labels += ",";
      labels += l;
    }
    out.set(k + "labels", labels);
    out.set(k + "coefficient", format_double(spec.interaction_terms[i].coefficient));
    out.set(k + "op", to_json(spec.interaction_terms[i].op).dump());
  }
}

HamiltonianSpec hamiltonian_from_config(const KeyValueConfig& cfg,
                                        const std::string& prefix) {
  HamiltonianSpec spec;
  std::vector<Factor> factors;
  for (const std::string& item : split_list(cfg.get(prefix + "layout"))) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw UsageError("invalid value for '" + prefix + "layout': expected label:dim");
    }
    factors.push_back({item.substr(0, colon),
                       static_cast<std::size_t>(parse_int(item.substr(colon + 1),
                                                          prefix + "layout"))});
  }
  spec.layout = TensorLayout(factors);
  auto matrix = [&](const std::string& key) {
    try {
      return matrix_from_json(nlohmann::json::parse(cfg.get(key)));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("invalid value for '" + key + "': " + e.what());
    }
  };
  const long long nf = parse_int(cfg.get(prefix + "free.count"), prefix + "free.count");
  for (long long i = 0; i < nf; ++i) {
    const std::string k = prefix + "free." + std::to_string(i) + ".";
    spec.free_terms.push_back({cfg.get(k + "label"), matrix(k + "op"),
                               parse_double(cfg.get(k + "coefficient"), k + "coefficient")});
  }
  const long long ni =
      parse_int(cfg.get(prefix + "interaction.count"), prefix + "interaction.count");
  for (long long i = 0; i < ni; ++i) {
    const std::string k = prefix + "interaction." + std::to_string(i) + ".";
    spec.interaction_terms.push_back(
        {split_list(cfg.get(k + "labels")), matrix(k + "op"),
         parse_double(cfg.get(k + "coefficient"), k + "coefficient")});
  }
  spec.validate();
  return spec;
}

ComplexMatrix evolve(const ComplexMatrix& h, double tau) {
  return evolve(herm_eig(h), tau);
}

ComplexMatrix evolve(const EigenDecomposition& eig, double tau) {
  std::vector<cplx> phases(eig.values.size());
  for (std::size_t k = 0; k < phases.size(); ++k)
    phases[k] = std::polar(1.0, -tau * eig.values[k]);
  return spectral_function(eig, phases);
}

double conservation_residual(const ComplexMatrix& u, const ComplexMatrix& q) {
  if (!u.is_square() || !q.is_square() || u.rows() != q.rows()) {
    throw DimensionError("conservation_residual: operators must be square and equal size");
  }
  return norm(u * q - q * u, NormKind::kOperator);
}

std::vector<std::vector<std::size_t>> eigen_groups(const std::vector<double>& values,
                                                   double tol) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (groups.empty() || values[k] - values[k - 1] > tol) groups.emplace_back();
    groups.back().push_back(k);
  }
  return groups;
}

ComplexMatrix block_conserving_unitary(const ComplexMatrix& l, Rng& rng) {
  const EigenDecomposition eig = herm_eig(l);
  const std::size_t n = l.rows();
  ComplexMatrix block(n, n);
  for (const auto& g : eigen_groups(eig.values)) {
    const ComplexMatrix w = random_unitary(g.size(), rng);
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b) block(g[a], g[b]) = w(a, b);
  }
  return eig.vectors * block * eig.vectors.adjoint();
}

ComplexMatrix block_conserving_unitary(const ComplexMatrix& l, std::uint64_t seed) {
  Rng rng(seed);
  return block_conserving_unitary(l, rng);
}

ConservationSpec ConservationSpec::additive(ComplexMatrix l_system,
                                            ComplexMatrix l_probe) {
  ConservationSpec c;
  c.kind = Kind::kAdditive;
  c.l_system = std::move(l_system);
  c.l_probe = std::move(l_probe);
  c.validate();
  return c;
}

ConservationSpec ConservationSpec::energy(HamiltonianSpec spec) {
  ConservationSpec c;
  c.kind = Kind::kEnergy;
  c.hamiltonian = std::move(spec);
  c.validate();
  return c;
}

ComplexMatrix ConservationSpec::total() const {
  if (kind == Kind::kEnergy) return build_hamiltonian(hamiltonian);
  return kron(l_system, ComplexMatrix::identity(l_probe.rows())) +
         kron(ComplexMatrix::identity(l_system.rows()), l_probe);
}

void ConservationSpec::validate() const {
  if (kind == Kind::kEnergy) {
    hamiltonian.validate();
    return;
  }
  require_hermitian(l_system, "ConservationSpec L_S");
  require_hermitian(l_probe, "ConservationSpec L_D");
}

}  // namespace waybound
