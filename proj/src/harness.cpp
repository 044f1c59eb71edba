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

#include "waybound/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>

#include "waybound/channel.hpp"
#include "waybound/errors.hpp"
#include "waybound/gate_bounds.hpp"
#include "waybound/measurement.hpp"
#include "waybound/random.hpp"
#include "waybound/scattering.hpp"
#include "waybound/version.hpp"

namespace waybound {
namespace {

constexpr double kPi = std::numbers::pi;

using Reports = std::vector<BoundReport>;

// ------------------------------------------------------------------ schema

const ParamSpec kTrials1000{"trials", ParamKind::kInt, "1000", "number of seeded models"};
const ParamSpec kProbeDim8{"probe_dim_max", ParamKind::kInt, "8", "largest probe dimension"};

std::vector<ParamSpec> optimizer_params(const std::string& starts, const std::string& iters,
                                        const std::string& restarts) {
  return {{"starts", ParamKind::kInt, starts, "optimizer starts"},
          {"max_iters", ParamKind::kInt, iters, "simplex iterations per start"},
          {"restarts", ParamKind::kInt, restarts, "simplex re-initializations per start"}};
}

std::vector<ParamSpec> grid_params() {
  return {{"n_modes", ParamKind::kInt, "128", "photon momentum modes"},
          {"p_min", ParamKind::kReal, "0.25", "lowest grid momentum"},
          {"sigma_over_dp", ParamKind::kReal, "8", "packet width in grid steps"},
          {"profile", ParamKind::kLabel, "rectangular", "window profile (rectangular, smooth-bump)"},
          {"amplitude", ParamKind::kReal, "1", "window amplitude"},
          {"xi", ParamKind::kLabel, "sz+", "photon spin state"}};
}

template <class... Lists>
std::vector<ParamSpec> join(Lists... lists) {
  std::vector<ParamSpec> out;
  (out.insert(out.end(), lists.begin(), lists.end()), ...);
  return out;
}

std::vector<ExperimentSchema> build_schemas() {
  std::vector<ExperimentSchema> s;
  s.push_back({"ozawa-random", "error-disturbance relation on Haar measurement models",
               {kTrials1000, kProbeDim8},
               {{"slack", 1e-9, "allowed negative slack"}}});
  s.push_back({"way-additive", "additive conservation bound on block-conserving models",
               {{"trials", ParamKind::kInt, "200", "number of seeded models"}, kProbeDim8},
               {{"slack", 1e-9, "allowed negative slack"}}});
  s.push_back({"way-energy", "energy conservation bound on seeded energy models",
               {{"trials", ParamKind::kInt, "200", "number of seeded models"}, kProbeDim8},
               {{"base", 1e-6, "tolerance before the residual term"},
                {"residual_ceiling", 1e-6, "residual level that triggers a warning"}}});
  s.push_back({"weak-yanase", "bound under the weak Yanase condition",
               {{"trials", ParamKind::kInt, "200", "number of seeded models"}, kProbeDim8},
               {{"slack", 1e-9, "allowed negative slack"}}});
  s.push_back({"pointer-probe", "pointer readout chain and spread scaling",
               {{"trials", ParamKind::kInt, "20", "number of seeded models"},
                {"probe_dim_max", ParamKind::kInt, "3", "largest probe dimension"},
                {"pointer_dim", ParamKind::kInt, "64", "pointer grid size"},
                {"spread", ParamKind::kReal, "2", "pointer position spread"},
                {"tau_prime_minus_tau", ParamKind::kReal, "1", "readout duration"}},
               {{"chain", 1e-9, "slack of the readout chain"},
                {"halving", 0.05, "relative deviation of alpha ratio from 1/2"}}});
  s.push_back({"swap-sweep", "energy bound across packet widths in the scattering model",
               join(std::vector<ParamSpec>{
                        {"sigma_p", ParamKind::kRealList, "0.5,1,2,4", "momentum spreads"},
                        {"b", ParamKind::kReal, "1", "field on the nucleus spin"},
                        {"chi", ParamKind::kLabelList, "sy+", "nucleus spin states"}},
                    grid_params()),
               {{"base", 1e-6, "tolerance before the residual term"}}});
  s.push_back({"swap-fidelity", "spin-channel fidelity to SWAP after the crossing",
               join(std::vector<ParamSpec>{
                        {"b", ParamKind::kReal, "1", "field on the nucleus spin"},
                        {"sigma_p", ParamKind::kReal, "1", "momentum spread"},
                        {"check", ParamKind::kLabel, "witness", "witness or perfection"},
                        {"threshold", ParamKind::kReal, "0.999", "perfection fidelity threshold"}},
                    grid_params(), optimizer_params("32", "500", "4")),
               {{"witness", 1e-3, "allowed excess of F^2 over the bound"}}});
  s.push_back({"hadamard", "Hadamard measurement bound with a spin-j probe",
               {{"probe_dims", ParamKind::kIntList, "2,3,4,5", "probe dimensions 2j+1"},
                {"trials", ParamKind::kInt, "25", "models per probe dimension"},
                {"fidelity_starts", ParamKind::kInt, "0", "optimizer starts for 1-F^2 (0 skips)"}},
               {{"slack", 1e-9, "allowed negative slack"}}});
  s.push_back({"cu-constraints", "moment constraints and identity for the exact CZ model",
               {{"model", ParamKind::kLabel, "cz", "controlled model (cz)"},
                {"pool_states", ParamKind::kInt, "50", "random target states"}},
               {{"moments", 1e-10, "moment magnitude"},
                {"identity", 1e-9, "identity residual"}}});
  s.push_back({"appendix-d", "uncertainty step and fidelity chain for two-qubit gates",
               {{"trials", ParamKind::kInt, "100", "random conserving implementations"},
                {"anc_dim_max", ParamKind::kInt, "4", "largest ancilla dimension"},
                {"perfect_trials", ParamKind::kInt, "20", "perfect implementations"}},
               {{"chain", 1e-9, "allowed negative slack"},
                {"fixed_point", 1e-10, "perfect-implementation fixed points"}}});
  s.push_back({"two-qubit-bound", "CB distance witness against the two-qubit bound",
               join(std::vector<ParamSpec>{
                        {"trials", ParamKind::kInt, "3", "random conserving implementations"},
                        {"anc_dim", ParamKind::kInt, "2", "ancilla dimension"},
                        {"theta", ParamKind::kReal, "3.141592653589793", "rotation angle"}},
                    optimizer_params("8", "300", "1")),
               {{"cb", 1e-3, "allowed shortfall of the witness"},
                {"fixed_point", 1e-15, "substitution fixed point"}}});
  s.push_back({"g-surface", "maximum of the SWAP surface",
               {{"pairs", ParamKind::kLabelList, "1:1,1:0.5,2:1,0.3:2,1:4", "b:sigma_p pairs"},
                {"r_points", ParamKind::kInt, "101", "grid points in r"},
                {"theta_points", ParamKind::kInt, "257", "grid points in theta"}},
               {{"value", 1e-9, "maximum against b^2/(b^2+sigma_p^2)"},
                {"argmax", 1e-6, "argmax against (1/2, pi/2 or 3 pi/2)"}}});
  return s;
}

std::string canonical(const ParamSpec& p, const std::string& raw) {
  const std::string& k = p.key;
  switch (p.kind) {
    case ParamKind::kReal:
      return format_double(parse_double(raw, k));
    case ParamKind::kInt:
      return std::to_string(parse_int(raw, k));
    case ParamKind::kLabel:
      if (raw.empty() || raw.find_first_of(",;= ") != std::string::npos) {
        throw UsageError("invalid value for '" + k + "': '" + raw + "'");
      }
      return raw;
    case ParamKind::kRealList:
    case ParamKind::kIntList:
    case ParamKind::kLabelList: {
      const auto items = split_list(raw);
      if (items.empty()) throw UsageError("invalid value for '" + k + "': empty list");
      std::string out;
      for (const std::string& it : items) {
        if (!out.empty()) out += ",";
        if (p.kind == ParamKind::kRealList) {
          out += format_double(parse_double(it, k));
        } else if (p.kind == ParamKind::kIntList) {
          out += std::to_string(parse_int(it, k));
        } else {
          if (it.find_first_of(";= ") != std::string::npos) {
            throw UsageError("invalid value for '" + k + "': '" + it + "'");
          }
          out += it;
        }
      }
      return out;
    }
  }
  return raw;
}

const ParamSpec& param_spec(const ExperimentSchema& s, const std::string& key) {
  for (const ParamSpec& p : s.params)
    if (p.key == key) return p;
  throw UsageError(s.name + ": no parameter '" + key + "'");
}

// ---------------------------------------------------------------- helpers

// Integer parameter with a lower bound.
std::size_t count_at_least(const ExperimentConfig& cfg, const std::string& key, long long lo) {
  const long long v = cfg.integer(key);
  if (v < lo) {
    throw UsageError("invalid value for '" + key + "': must be >= " + std::to_string(lo));
  }
  return static_cast<std::size_t>(v);
}

double positive(const ExperimentConfig& cfg, const std::string& key) {
  const double v = cfg.real(key);
  if (!(v > 0.0)) throw UsageError("invalid value for '" + key + "': must be > 0");
  return v;
}

// Trial k runs on Rng(seed).split(k); the output is ordered by trial.
template <class F>
Reports parallel_trials(std::size_t n, std::uint64_t seed, F&& trial) {
  std::vector<Reports> out(n);
  std::vector<std::exception_ptr> errors(n);
  const Rng root(seed);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < count; ++t) {
    try {
      Rng rng = root.split(static_cast<std::uint64_t>(t));
      out[t] = trial(static_cast<std::size_t>(t), rng);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Reports flat;
  for (auto& r : out) flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

void tag(BoundReport& r, const std::string& point) { r.labels["point"] = point; }

std::string trial_point(std::size_t t) { return "trial=" + std::to_string(t); }

// Equality within tolerance, written as 0 >= |got - want| - tol.
BoundReport equality(const std::string& name, double got, double want, double tol) {
  BoundReport r = BoundReport::make(name, 0.0, std::abs(got - want), tol);
  r.diagnostics = {{"value", got}, {"expected", want}};
  return r;
}

OptimizerConfig optimizer_config(const ExperimentConfig& cfg, std::uint64_t seed) {
  OptimizerConfig o;
  o.starts = count_at_least(cfg, "starts", 1);
  o.max_iters = count_at_least(cfg, "max_iters", 1);
  o.restarts = count_at_least(cfg, "restarts", 0);
  o.seed = seed;
  return o;
}

ScenarioTemplate scenario_template(const ExperimentConfig& cfg) {
  ScenarioTemplate t;
  t.n_modes = count_at_least(cfg, "n_modes", 16);
  t.p_min = positive(cfg, "p_min");
  t.sigma_over_dp = positive(cfg, "sigma_over_dp");
  t.profile = window_profile_from_string(cfg.label("profile"));
  t.amplitude = positive(cfg, "amplitude");
  t.b = cfg.real("b");
  t.xi = named_spin_state(cfg.label("xi"));
  return t;
}

// ------------------------------------------------------------ experiments

Reports run_ozawa(const ExperimentConfig& cfg) {
  const std::size_t pd = count_at_least(cfg, "probe_dim_max", 2);
  const double tol = cfg.tolerance("slack");
  return parallel_trials(count_at_least(cfg, "trials", 0), cfg.seed, [&](std::size_t t, Rng& rng) {
    const IndirectMeasurementModel m = random_measurement_model(rng, pd);
    const ComplexMatrix b = random_hermitian(2, rng);
    BoundReport r = ozawa_check(m, b, random_state(2, rng), "", tol);
    r.inputs["probe_dim"] = static_cast<double>(m.probe_dim());
    tag(r, trial_point(t));
    return Reports{r};
  });
}

Reports run_way_additive(const ExperimentConfig& cfg) {
  const std::size_t pd = count_at_least(cfg, "probe_dim_max", 2);
  const double tol = cfg.tolerance("slack");
  return parallel_trials(count_at_least(cfg, "trials", 0), cfg.seed, [&](std::size_t t, Rng& rng) {
    const ConservingModel cm = random_conserving_model(rng, pd);
    BoundReport r = way_additive_check(cm.model, cm.cons, random_state(2, rng), tol);
    r.inputs["probe_dim"] = static_cast<double>(cm.model.probe_dim());
    tag(r, trial_point(t));
    return Reports{r};
  });
}

Reports run_way_energy(const ExperimentConfig& cfg) {
  const std::size_t pd = count_at_least(cfg, "probe_dim_max", 2);
  EnergyCheckOptions opt;
  opt.base_tolerance = cfg.tolerance("base");
  opt.residual_ceiling = cfg.tolerance("residual_ceiling");
  return parallel_trials(count_at_least(cfg, "trials", 0), cfg.seed, [&](std::size_t t, Rng& rng) {
    const EnergyMeasurementModel em = random_energy_model(rng, pd);
    BoundReport r = way_energy_check(em, random_state(2, rng), opt);
    r.inputs["probe_dim"] = static_cast<double>(em.model.probe_dim());
    tag(r, trial_point(t));
    return Reports{r};
  });
}

Reports run_weak_yanase(const ExperimentConfig& cfg) {
  const std::size_t pd = count_at_least(cfg, "probe_dim_max", 2);
  const double tol = cfg.tolerance("slack");
  return parallel_trials(count_at_least(cfg, "trials", 0), cfg.seed, [&](std::size_t t, Rng& rng) {
    const WeakYanaseModel wm = random_weak_yanase_model(rng, pd);
    BoundReport r = weak_yanase_check(wm.model, wm.hamiltonian, random_state(2, rng), tol);
    r.inputs["probe_dim"] = static_cast<double>(wm.model.probe_dim());
    tag(r, trial_point(t));
    return Reports{r};
  });
}

Reports run_pointer_probe(const ExperimentConfig& cfg) {
  const std::size_t pd = count_at_least(cfg, "probe_dim_max", 2);
  const std::size_t dim = count_at_least(cfg, "pointer_dim", 4);
  const double spread = positive(cfg, "spread");
  const double dt = positive(cfg, "tau_prime_minus_tau");
  const double chain = cfg.tolerance("chain"), halving = cfg.tolerance("halving");
  const PointerProbeConfig wide = make_pointer_config(dim, spread, dt);
  const PointerProbeConfig narrow = make_pointer_config(dim, spread / 2.0, dt);
  return parallel_trials(count_at_least(cfg, "trials", 0), cfg.seed, [&](std::size_t t, Rng& rng) {
    const EnergyMeasurementModel em = random_energy_model(rng, pd);
    const StateVector in = random_state(2, rng);
    const PointerProbeReport rep = pointer_probe(em, in, wide);
    Reports out = rep.checks(chain);
    const double ratio = pointer_probe(em, in, narrow).alpha / rep.alpha;
    BoundReport h = BoundReport::make("pointer_alpha_halving", 0.0, std::abs(2.0 * ratio - 1.0),
                                      halving);
    h.diagnostics = {{"alpha", rep.alpha}, {"ratio", ratio}};
    out.push_back(h);
    for (BoundReport& r : out) {
      r.inputs["spread"] = spread;
      tag(r, trial_point(t));
    }
    return out;
  });
}

Reports run_swap_sweep(const ExperimentConfig& cfg) {
  const ScenarioTemplate base = scenario_template(cfg);
  const std::vector<double> sps = cfg.reals("sigma_p");
  for (double sp : sps) {
    if (!(sp > 0.0)) throw UsageError("invalid value for 'sigma_p': must be > 0");
  }
  const auto rows = epsilon_sweep(base, sps, cfg.labels("chi"), cfg.seed, cfg.tolerance("base"));
  Reports out;
  for (const SweepRow& row : rows) {
    BoundReport r = row.report;
    r.inputs["sigma_p"] = row.sigma_p;
    r.labels["chi"] = row.chi_label;
    tag(r, "sigma_p=" + format_double(row.sigma_p) + ";chi=" + row.chi_label);
    out.push_back(r);
  }
  return out;
}

Reports run_swap_fidelity(const ExperimentConfig& cfg) {
  const ScenarioTemplate base = scenario_template(cfg);
  const double sp = positive(cfg, "sigma_p");
  const std::string check = cfg.label("check");
  if (check != "witness" && check != "perfection") {
    throw UsageError("invalid value for 'check': '" + check + "' (witness, perfection)");
  }
  const ScatterScenario s = base.make(sp, named_spin_state("sy+"));
  const ScatterResult res = run_scatter(s);
  const OptimizerConfig opt = optimizer_config(cfg, Rng(cfg.seed).next_u64());
  BoundReport r = check == "witness"
                      ? swap_fidelity_witness_check(res, base.b, sp, opt, cfg.tolerance("witness"))
                      : swap_perfection_check(res, opt, cfg.real("threshold"));
  r.inputs["g"] = s.g;
  r.diagnostics["r0"] = res.r0;
  r.diagnostics["r_tau"] = res.r_tau;
  r.warnings.insert(r.warnings.end(), res.warnings.begin(), res.warnings.end());
  tag(r, "b=" + format_double(base.b) + ";sigma_p=" + format_double(sp));
  return {r};
}

Reports run_hadamard(const ExperimentConfig& cfg) {
  const std::vector<long long> dims = cfg.integers("probe_dims");
  for (long long d : dims) {
    if (d < 2) throw UsageError("invalid value for 'probe_dims': dimensions must be >= 2");
  }
  const std::size_t per = count_at_least(cfg, "trials", 0);
  const std::size_t fstarts = count_at_least(cfg, "fidelity_starts", 0);
  const double tol = cfg.tolerance("slack");
  return parallel_trials(dims.size() * per, cfg.seed, [&](std::size_t t, Rng& rng) {
    const std::size_t d = static_cast<std::size_t>(dims[t / per]);
    const HadamardModel hm = random_hadamard_model(rng, d);
    OptimizerConfig fc;
    fc.starts = fstarts;
    fc.seed = rng.next_u64();
    BoundReport r = hadamard_check(hm, fstarts > 0 ? &fc : nullptr, tol);
    tag(r, "probe_dim=" + std::to_string(d) + ";trial=" + std::to_string(t % per));
    return Reports{r};
  });
}

Reports run_cu_constraints(const ExperimentConfig& cfg) {
  if (cfg.label("model") != "cz") {
    throw UsageError("invalid value for 'model': '" + cfg.label("model") + "' (cz)");
  }
  const ControlledModel m = exact_cz_model();
  Rng rng(cfg.seed);
  std::vector<StateVector> pool;
  const std::size_t n = count_at_least(cfg, "pool_states", 1);
  for (std::size_t i = 0; i < n; ++i) pool.push_back(random_state(2, rng));
  BoundReport moments = cu_constraints(m.spec, m.sys, {}, cfg.tolerance("moments"));
  BoundReport identity = wayone_identity_check(m.spec, m.sys, pool, cfg.tolerance("identity"));
  tag(moments, "model=cz");
  tag(identity, "model=cz");
  return {moments, identity};
}

Reports run_appendix_d(const ExperimentConfig& cfg) {
  const std::size_t amax = count_at_least(cfg, "anc_dim_max", 1);
  const std::size_t n = count_at_least(cfg, "trials", 0);
  const double chain = cfg.tolerance("chain"), fixed = cfg.tolerance("fixed_point");
  // Random trials first, then the perfect implementations on later streams.
  return parallel_trials(n + count_at_least(cfg, "perfect_trials", 0), cfg.seed,
                         [&](std::size_t t, Rng& rng) {
    ControlledGateSpec spec = random_controlled_spec(rng, kPi * rng.uniform());
    const auto anc = static_cast<std::size_t>(
        rng.uniform_int(static_cast<long long>(std::min<std::size_t>(2, amax)),
                        static_cast<long long>(amax)));
    Reports out;
    if (t < n) {
      const TwoQubitImplementation impl = random_two_qubit_implementation(rng, anc);
      out = appendix_d_check(impl.channel, spec, impl.h_c, impl.h_t, impl.h_a,
                             random_state(2, rng))
                .checks(chain);
    } else {
      // H_C = |phi1><phi1| and H_T = u.sigma commute with U_CU when the
      // control states are left in place.
      spec.phi0_prime = StateVector();
      spec.phi1_prime = StateVector();
      const QuantumChannel ch = perfect_two_qubit_channel(spec, anc, rng);
      const AppendixDReport rep =
          appendix_d_check(ch, spec, projector(spec.phi1), pauli_along(spec.u),
                           ComplexMatrix::zeros(anc, anc), random_state(2, rng));
      const double c = std::cos(spec.theta / 2.0);
      out = rep.checks(chain);
      out.push_back(equality("appendix_d_delta_cc", rep.delta_cc, 0.0, fixed));
      out.push_back(equality("appendix_d_delta_tc_sq", rep.delta_tc * rep.delta_tc, c * c, fixed));
    }
    const std::string point = (t < n ? "random;trial=" + std::to_string(t)
                                     : "perfect;trial=" + std::to_string(t - n));
    for (BoundReport& r : out) {
      r.inputs["theta"] = spec.theta;
      r.inputs["anc_dim"] = static_cast<double>(anc);
      tag(r, point);
    }
    return out;
  });
}

Reports run_two_qubit_bound(const ExperimentConfig& cfg) {
  const double theta = cfg.real("theta");
  if (theta < 0.0 || theta > kPi + 1e-15) {
    throw UsageError("invalid value for 'theta': must lie in [0, pi]");
  }
  ControlledGateSpec spec;
  spec.phi0 = StateVector::basis(2, 0);
  spec.phi1 = StateVector::basis(2, 1);
  spec.theta = std::min(theta, kPi);
  spec.u = {1.0, 0.0, 0.0};
  const ComplexMatrix z2 = ComplexMatrix::zeros(2, 2);
  // Substitution theta = pi, H_C = sigma_x, H_T = H_A = 0 gives 1/16.
  ControlledGateSpec fixed_spec = spec;
  fixed_spec.theta = kPi;
  Reports out{equality("two_qubit_rhs_substitution",
                       two_qubit_bound_rhs(fixed_spec, pauli_x(), z2, z2), 1.0 / 16.0,
                       cfg.tolerance("fixed_point"))};
  tag(out.back(), "theta=pi;h_c=sigma_x");
  const std::size_t anc = count_at_least(cfg, "anc_dim", 1);
  const double tol = cfg.tolerance("cb");
  const Reports trials =
      parallel_trials(count_at_least(cfg, "trials", 0), cfg.seed, [&](std::size_t t, Rng& rng) {
        const TwoQubitImplementation impl = random_two_qubit_implementation(rng, anc);
        BoundReport r = two_qubit_cb_check(impl, spec, optimizer_config(cfg, rng.next_u64()), tol);
        tag(r, trial_point(t));
        return Reports{r};
      });
  out.insert(out.end(), trials.begin(), trials.end());
  return out;
}

Reports run_g_surface(const ExperimentConfig& cfg) {
  const std::size_t rp = count_at_least(cfg, "r_points", 3);
  const std::size_t tp = count_at_least(cfg, "theta_points", 4);
  Reports out;
  for (const std::string& pair : cfg.labels("pairs")) {
    const auto parts = split_list(pair, ':');
    if (parts.size() != 2) throw UsageError("invalid value for 'pairs': '" + pair + "'");
    const double b = parse_double(parts[0], "pairs"), sp = parse_double(parts[1], "pairs");
    if (!(sp > 0.0)) throw UsageError("invalid value for 'pairs': sigma_p must be > 0");
    const GSurfaceMax m = g_surface_max(b, sp, rp, tp);
    BoundReport v = equality("g_surface_max", m.value, b * b / (b * b + sp * sp),
                             cfg.tolerance("value"));
    const double dtheta = std::min(std::abs(m.theta - kPi / 2), std::abs(m.theta - 1.5 * kPi));
    BoundReport a = BoundReport::make("g_surface_argmax", 0.0,
                                      std::max(std::abs(m.r - 0.5), dtheta),
                                      cfg.tolerance("argmax"));
    a.diagnostics = {{"r", m.r}, {"theta", m.theta}};
    for (BoundReport* r : {&v, &a}) {
      r->inputs = {{"b", b}, {"sigma_p", sp}};
      r->diagnostics["evaluations"] = static_cast<double>(m.evaluations);
      tag(*r, "b=" + format_double(b) + ";sigma_p=" + format_double(sp));
    }
    out.push_back(v);
    out.push_back(a);
  }
  return out;
}

Reports dispatch(const ExperimentConfig& cfg) {
  const std::string& e = cfg.experiment;
  if (e == "ozawa-random") return run_ozawa(cfg);
  if (e == "way-additive") return run_way_additive(cfg);
  if (e == "way-energy") return run_way_energy(cfg);
  if (e == "weak-yanase") return run_weak_yanase(cfg);
  if (e == "pointer-probe") return run_pointer_probe(cfg);
  if (e == "swap-sweep") return run_swap_sweep(cfg);
  if (e == "swap-fidelity") return run_swap_fidelity(cfg);
  if (e == "hadamard") return run_hadamard(cfg);
  if (e == "cu-constraints") return run_cu_constraints(cfg);
  if (e == "appendix-d") return run_appendix_d(cfg);
  if (e == "two-qubit-bound") return run_two_qubit_bound(cfg);
  if (e == "g-surface") return run_g_surface(cfg);
  throw UsageError("unknown experiment '" + e + "'");
}

}  // namespace

// ----------------------------------------------------------------- public

const std::vector<ExperimentSchema>& experiment_schemas() {
  static const std::vector<ExperimentSchema> schemas = build_schemas();
  return schemas;
}

const ExperimentSchema& experiment_schema(const std::string& name) {
  for (const ExperimentSchema& s : experiment_schemas())
    if (s.name == name) return s;
  throw UsageError("unknown experiment '" + name + "'");
}

ExperimentConfig ExperimentConfig::from_entries(const KeyValueConfig& kv,
                                                const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (kv.has("experiment")) {
    const std::string& named = kv.get("experiment");
    if (!experiment.empty() && named != experiment) {
      throw UsageError("config names experiment '" + named + "' but '" + experiment +
                       "' was requested");
    }
    cfg.experiment = named;
  }
  if (cfg.experiment.empty()) throw UsageError("config: missing key 'experiment'");
  const ExperimentSchema& schema = experiment_schema(cfg.experiment);
  if (!kv.has("seed")) throw UsageError("config: missing key 'seed'");
  const long long seed = parse_int(kv.get("seed"), "seed");
  if (seed < 0) throw UsageError("invalid value for 'seed': must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  for (const ParamSpec& p : schema.params) cfg.params[p.key] = canonical(p, p.default_value);
  for (const ToleranceSpec& t : schema.tolerances) cfg.tolerances[t.name] = t.default_value;
  const std::string tol_prefix = "tolerance.";
  for (const auto& [key, value] : kv.entries()) {
    if (key == "experiment" || key == "seed") continue;
    if (key == "output") {
      cfg.output_path = value;
    } else if (key.rfind(tol_prefix, 0) == 0) {
      const std::string name = key.substr(tol_prefix.size());
      if (!cfg.tolerances.count(name)) throw UsageError("unknown key '" + key + "'");
      const double v = parse_double(value, key);
      if (v < 0.0) throw UsageError("invalid value for '" + key + "': must be >= 0");
      cfg.tolerances[name] = v;
    } else if (cfg.params.count(key)) {
      cfg.params[key] = canonical(param_spec(schema, key), value);
    } else {
      throw UsageError("unknown key '" + key + "' for experiment '" + cfg.experiment + "'");
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text, const std::string& experiment) {
  return from_entries(KeyValueConfig::parse(text), experiment);
}

std::string ExperimentConfig::emit() const {
  KeyValueConfig kv;
  kv.set("experiment", experiment);
  kv.set("seed", std::to_string(seed));
  if (!output_path.empty()) kv.set("output", output_path);
  for (const auto& [k, v] : params) kv.set(k, v);
  for (const auto& [k, v] : tolerances) kv.set("tolerance." + k, format_double(v));
  return kv.emit();
}

const std::string& ExperimentConfig::label(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw UsageError(experiment + ": no parameter '" + key + "'");
  return it->second;
}

double ExperimentConfig::real(const std::string& key) const {
  return parse_double(label(key), key);
}

long long ExperimentConfig::integer(const std::string& key) const {
  return parse_int(label(key), key);
}

std::vector<std::string> ExperimentConfig::labels(const std::string& key) const {
  return split_list(label(key));
}

std::vector<double> ExperimentConfig::reals(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& s : labels(key)) out.push_back(parse_double(s, key));
  return out;
}

std::vector<long long> ExperimentConfig::integers(const std::string& key) const {
  std::vector<long long> out;
  for (const std::string& s : labels(key)) out.push_back(parse_int(s, key));
  return out;
}

double ExperimentConfig::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) throw UsageError(experiment + ": no tolerance '" + name + "'");
  return it->second;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  return nlohmann::json{{"experiment", cfg.experiment},
                        {"seed", cfg.seed},
                        {"output", cfg.output_path},
                        {"params", cfg.params},
                        {"tolerances", cfg.tolerances}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.experiment = j.at("experiment").get<std::string>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.output_path = j.at("output").get<std::string>();
  cfg.params = j.at("params").get<std::map<std::string, std::string>>();
  cfg.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  return cfg;
}

std::size_t ResultRecord::passed() const {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const BoundReport& r) { return r.pass; }));
}

nlohmann::json to_json(const ResultRecord& rec) {
  nlohmann::json reports = nlohmann::json::array();
  for (const BoundReport& r : rec.reports) reports.push_back(to_json(r));
  nlohmann::json j{{"config", to_json(rec.config)},
                   {"reports", reports},
                   {"version", rec.version},
                   {"summary",
                    {{"total", rec.reports.size()},
                     {"passed", rec.passed()},
                     {"failed", rec.reports.size() - rec.passed()},
                     {"pass", rec.all_pass()}}}};
  if (rec.wall_time_seconds) j["wall_time_seconds"] = *rec.wall_time_seconds;
  return j;
}

ResultRecord record_from_json(const nlohmann::json& j) {
  ResultRecord rec;
  rec.config = config_from_json(j.at("config"));
  for (const auto& r : j.at("reports")) rec.reports.push_back(report_from_json(r));
  rec.version = j.at("version").get<std::string>();
  if (j.contains("wall_time_seconds")) rec.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  return rec;
}

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::kJson;
  if (s == "csv") return OutputFormat::kCsv;
  throw UsageError("invalid value for 'format': '" + s + "' (json, csv)");
}

std::string emit_report(const ResultRecord& rec, OutputFormat format) {
  if (format == OutputFormat::kJson) return to_json(rec).dump(2) + "\n";
  std::string out = "experiment,point,lhs,rhs,slack,pass\n";
  for (const BoundReport& r : rec.reports) {
    std::string point = r.name;
    const auto it = r.labels.find("point");
    if (it != r.labels.end()) point += "[" + it->second + "]";
    out += rec.config.experiment + "," + point + "," + format_double(r.lhs) + "," +
           format_double(r.rhs) + "," + format_double(r.slack) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

ResultRecord run_experiment(const ExperimentConfig& cfg, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.config = cfg;
  rec.version = kVersion;
  rec.reports = dispatch(cfg);
  if (timing) {
    rec.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

int exit_code(const ResultRecord& rec) { return rec.all_pass() ? 0 : 2; }

void apply_thread_cap() {
  const char* env = std::getenv("WAYBOUND_THREADS");
  if (env == nullptr) return;
  const long long n = parse_int(env, "WAYBOUND_THREADS");
  if (n < 1) throw UsageError("invalid value for 'WAYBOUND_THREADS': must be >= 1");
  omp_set_num_threads(static_cast<int>(std::min<long long>(n, omp_get_max_threads())));
}

}  // namespace waybound
