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

// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
//
// Each criterion runs the harness experiment and re-evaluates the raw lhs,
// rhs and diagnostics against its own threshold instead of trusting the
// report's pass flag. Wall time is checked against the budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "waybound/harness.hpp"

namespace {

using waybound::BoundReport;
using waybound::ExperimentConfig;
using waybound::ResultRecord;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

ResultRecord run(const std::string& experiment, const std::string& text) {
  return waybound::run_experiment(ExperimentConfig::parse(text, experiment));
}

std::string num(double x) { return waybound::format_double(x); }

double diag(const BoundReport& r, const std::string& key) {
  const auto it = r.diagnostics.find(key);
  return it == r.diagnostics.end() ? NAN : it->second;
}

Outcome ozawa() {
  Outcome o;
  const ResultRecord rec = run("ozawa-random", "seed=2026\ntrials=1000\nprobe_dim_max=8\n");
  o.require(rec.reports.size() == 1000, "expected 1000 reports");
  double worst = INFINITY;
  for (const BoundReport& r : rec.reports) {
    worst = std::min(worst, r.lhs - r.rhs);
    o.require(r.inputs.at("probe_dim") <= 8, "probe dimension above 8");
  }
  o.require(worst >= -1e-9, "slack " + num(worst));
  if (o.pass) o.detail = "1000 models, worst slack " + num(worst);
  return o;
}

Outcome way_additive() {
  Outcome o;
  const ResultRecord rec = run("way-additive", "seed=2026\ntrials=200\n");
  o.require(rec.reports.size() == 200, "expected 200 reports");
  double worst = INFINITY;
  for (const BoundReport& r : rec.reports) worst = std::min(worst, r.lhs - r.rhs);
  o.require(worst >= -1e-9, "eps^2 - rhs " + num(worst));
  if (o.pass) o.detail = "200 models, worst eps^2 - rhs " + num(worst);
  return o;
}

Outcome energy_sweep() {
  Outcome o;
  const ResultRecord rec = run("swap-sweep",
                               "seed=2026\nb=1\nchi=sy+\nsigma_p=0.5,1,2,4\nn_modes=128\n");
  o.require(rec.reports.size() == 4, "expected 4 sweep points");
  double worst = INFINITY;
  for (const BoundReport& r : rec.reports) {
    // ||sigma_z|| = 1.
    const double allowance = 2.0 * (diag(r, "r0") + diag(r, "r_tau")) + 1e-6;
    const double margin = r.lhs - (r.rhs - allowance);
    worst = std::min(worst, margin);
    o.require(margin >= 0.0, "point " + r.labels.at("point") + " short by " + num(-margin));
    if (r.inputs.at("sigma_p") == 1.0) {
      o.require(r.rhs == 0.5, "rhs at sigma_p = 1 is " + num(r.rhs));
    }
  }
  if (o.pass) o.detail = "4 points, smallest margin " + num(worst) + ", rhs(1) = 0.5";
  return o;
}

Outcome swap_perfection() {
  Outcome o;
  const ResultRecord rec =
      run("swap-fidelity", "seed=2026\nb=0\nsigma_p=1\ncheck=perfection\nn_modes=128\n");
  o.require(rec.reports.size() == 1, "expected one report");
  const BoundReport& r = rec.reports.at(0);
  // dp = sigma_p / 8, window width L / 8 with L = 2 pi / dp, amplitude 1.
  const double width = 2.0 * kPi / (1.0 / 8.0) / 8.0;
  const double g_want = kPi / (4.0 * width * 1.0);
  o.require(std::abs(r.inputs.at("g") - g_want) <= 1e-15 * g_want,
            "g = " + num(r.inputs.at("g")) + " against " + num(g_want));
  o.require(r.lhs >= 0.999, "fidelity " + num(r.lhs));
  if (o.pass) o.detail = "inf F = " + num(r.lhs) + " with g = " + num(r.inputs.at("g"));
  return o;
}

Outcome swap_witness() {
  Outcome o;
  const ResultRecord rec =
      run("swap-fidelity", "seed=2026\nb=1\nsigma_p=1\ncheck=witness\nn_modes=128\n");
  const BoundReport& r = rec.reports.at(0);
  o.require(r.lhs == 0.875, "bound " + num(r.lhs));
  o.require(r.rhs <= 0.875 + 1e-3, "witness F^2 = " + num(r.rhs));
  if (o.pass) o.detail = "witness F^2 = " + num(r.rhs) + " <= 0.876";
  return o;
}

Outcome g_surface() {
  Outcome o;
  const ResultRecord rec = run("g-surface", "seed=2026\npairs=1:1,1:0.5,2:1,0.3:2,1:4\n");
  o.require(rec.reports.size() == 10, "expected 5 pairs");
  for (const BoundReport& r : rec.reports) {
    if (r.name == "g_surface_max") {
      o.require(r.rhs <= 1e-9, "max off by " + num(r.rhs));
    } else {
      const double rr = diag(r, "r"), th = diag(r, "theta");
      const double dt = std::min(std::abs(th - kPi / 2), std::abs(th - 1.5 * kPi));
      o.require(std::abs(rr - 0.5) <= 1e-9 && dt <= 1e-6,
                "argmax (" + num(rr) + ", " + num(th) + ")");
    }
  }
  if (o.pass) o.detail = "5 pairs at b^2/(b^2+sigma_p^2), argmax (1/2, pi/2 or 3pi/2)";
  return o;
}

Outcome pointer_probe() {
  Outcome o;
  const ResultRecord rec = run("pointer-probe", "seed=2026\ntrials=20\n");
  double worst_ratio = 0.0;
  std::size_t runs = 0;
  for (const BoundReport& r : rec.reports) {
    if (r.name == "pointer_eta_h0") {
      o.require(r.rhs <= 1e-9, "eta(H0) = " + num(r.rhs));
      ++runs;
    } else if (r.name == "pointer_triangle") {
      o.require(r.rhs <= r.lhs + 1e-9, "beta above alpha + eps");
    } else if (r.name == "pointer_alpha_halving") {
      worst_ratio = std::max(worst_ratio, r.rhs);
      o.require(r.rhs <= 0.05, "alpha ratio " + num(diag(r, "ratio")));
    }
  }
  o.require(runs == 20, "expected 20 runs");
  if (o.pass) o.detail = "20 runs, worst |2 ratio - 1| = " + num(worst_ratio);
  return o;
}

Outcome cu_constraints() {
  Outcome o;
  const ResultRecord rec = run("cu-constraints", "seed=2026\nmodel=cz\npool_states=50\n");
  o.require(rec.reports.size() == 2, "expected two reports");
  const BoundReport& m = rec.reports.at(0);
  const BoundReport& id = rec.reports.at(1);
  o.require(diag(m, "first_moment") <= 1e-10, "first moment " + num(diag(m, "first_moment")));
  o.require(diag(m, "second_moment") <= 1e-10, "second moment " + num(diag(m, "second_moment")));
  o.require(id.rhs <= 1e-9, "identity residual " + num(id.rhs));
  if (o.pass) o.detail = "moments <= 1e-10, identity residual " + num(id.rhs) + " on 50 states";
  return o;
}

Outcome appendix_d() {
  Outcome o;
  const ResultRecord rec =
      run("appendix-d", "seed=2026\ntrials=100\nanc_dim_max=4\nperfect_trials=20\n");
  double worst_unc = INFINITY, worst_chain = INFINITY, worst_fixed = 0.0;
  std::size_t random_trials = 0;
  for (const BoundReport& r : rec.reports) {
    o.require(r.inputs.at("anc_dim") <= 4, "ancilla above 4");
    if (r.name == "appendix_d_uncertainty") {
      worst_unc = std::min(worst_unc, r.lhs - r.rhs);
      if (r.labels.at("point").rfind("random", 0) == 0) ++random_trials;
    } else if (r.name == "appendix_d_fidelity_chain") {
      worst_chain = std::min(worst_chain, r.lhs - r.rhs);
    } else {
      worst_fixed = std::max(worst_fixed, r.rhs);
    }
  }
  o.require(random_trials == 100, "expected 100 random implementations");
  o.require(worst_unc >= -1e-9, "uncertainty slack " + num(worst_unc));
  o.require(worst_chain >= -1e-9, "chain slack " + num(worst_chain));
  o.require(worst_fixed <= 1e-10, "fixed point off by " + num(worst_fixed));
  if (o.pass) {
    o.detail = "slack " + num(std::min(worst_unc, worst_chain)) + ", fixed points within " +
               num(worst_fixed);
  }
  return o;
}

Outcome two_qubit() {
  Outcome o;
  const ResultRecord rec = run("two-qubit-bound", "seed=2026\ntrials=3\n");
  const BoundReport& fixed = rec.reports.at(0);
  o.require(fixed.rhs <= 1e-15, "rhs off 1/16 by " + num(fixed.rhs));
  double worst = INFINITY;
  for (std::size_t i = 1; i < rec.reports.size(); ++i) {
    const BoundReport& r = rec.reports[i];
    o.require(r.rhs > 0.0, "trivial bound in the family");
    worst = std::min(worst, r.lhs - r.rhs);
  }
  o.require(rec.reports.size() == 4, "expected 3 implementations");
  o.require(worst >= -1e-3, "D - sqrt(rhs) = " + num(worst));
  if (o.pass) o.detail = "rhs = 1/16, worst D - sqrt(rhs) = " + num(worst);
  return o;
}

Outcome determinism() {
  Outcome o;
  for (const auto& s : waybound::experiment_schemas()) {
    std::ifstream in(std::filesystem::path(WAYBOUND_GOLDEN_DIR) / (s.name + ".cfg"));
    std::ostringstream text;
    text << in.rdbuf();
    const ExperimentConfig cfg = ExperimentConfig::parse(text.str(), s.name);
    const auto json = [&] {
      return waybound::emit_report(waybound::run_experiment(cfg), waybound::OutputFormat::kJson);
    };
    o.require(json() == json(), s.name + " differs between runs");
  }
  if (o.pass) o.detail = "12 subcommands byte-identical across two runs";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "ozawa inequality", 60, ozawa},
      {2, "additive conservation bound", 60, way_additive},
      {3, "energy bound in scattering", 300, energy_sweep},
      {4, "swap near-perfection at b = 0", 120, swap_perfection},
      {5, "swap fidelity witness", 300, swap_witness},
      {6, "surface maximum", 10, g_surface},
      {7, "pointer-probe chain", 60, pointer_probe},
      {8, "controlled-U constraints", 30, cu_constraints},
      {9, "two-qubit uncertainty and fidelity chain", 120, appendix_d},
      {10, "two-qubit CB bound", 300, two_qubit},
      {11, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += " (over the " + num(c.budget_seconds) + " s budget)";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d %s: %s (%.1f s) %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
