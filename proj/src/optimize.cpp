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

#include "waybound/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "waybound/errors.hpp"
#include "waybound/kernels.hpp"
#include "waybound/random.hpp"

namespace waybound {

std::vector<double> state_to_params(const StateVector& psi) {
  const std::size_t d = psi.dim();
  if (d == 0) throw DimensionError("state_to_params: empty state");
  std::vector<double> tail(d + 1, 0.0);
  for (std::size_t k = d; k-- > 0;) tail[k] = tail[k + 1] + std::norm(psi[k]);
  for (double& t : tail) t = std::sqrt(t);
  std::vector<double> params(2 * (d - 1));
  for (std::size_t k = 1; k < d; ++k) params[k - 1] = std::atan2(tail[k], std::abs(psi[k - 1]));
  // Phases relative to psi_0; when psi_0 vanishes the global phase is free.
  const double ref = std::abs(psi[0]) > 0.0 ? std::arg(psi[0]) : 0.0;
  for (std::size_t k = 1; k < d; ++k) params[d - 2 + k] = std::arg(psi[k]) - ref;
  return params;
}

StateVector params_to_state(const std::vector<double>& params, std::size_t dim) {
  if (params.size() != 2 * (dim - 1)) throw DimensionError("params_to_state: size");
  StateVector psi(dim);
  double running = 1.0;
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    const double mag = running * std::cos(params[k]);
    psi[k] = k == 0 ? cplx(mag) : std::polar(mag, params[dim - 2 + k]);
    running *= std::sin(params[k]);
  }
  psi[dim - 1] = dim == 1 ? cplx(1.0) : std::polar(running, params[2 * dim - 3]);
  return psi;
}

namespace {

struct RunResult {
  std::vector<double> x;
  double f = 0.0;  // sign-adjusted: always minimized
  std::size_t iterations = 0;
  bool converged = false;
};

class Minimizer {
 public:
  Minimizer(const StateObjective& objective, std::size_t dim, double sign)
      : objective_(objective), dim_(dim), sign_(sign) {}

  double eval(const std::vector<double>& x) const {
    const double v = objective_(params_to_state(x, dim_));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "optimize_pure_state: objective returned " << v << " at params [";
      for (std::size_t i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
      msg << "]";
      throw NumericalError(msg.str());
    }
    return sign_ * v;
  }

  // Adaptive Nelder-Mead (coefficients scaled with dimension).
  RunResult simplex(std::vector<double> x0, double step, std::size_t max_iters,
                    double tol) const {
    const std::size_t n = x0.size();
    const double nd = static_cast<double>(n);
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / nd;
    const double gamma = 0.75 - 1.0 / (2.0 * nd);
    const double delta = 1.0 - 1.0 / nd;

    std::vector<std::vector<double>> v(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) v[i + 1][i] += step;
    std::vector<double> f(n + 1);
    for (std::size_t i = 0; i <= n; ++i) f[i] = eval(v[i]);

    std::vector<std::size_t> order(n + 1);
    RunResult out;
    std::vector<double> c(n), xr(n), xt(n);
    for (; out.iterations < max_iters; ++out.iterations) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second = order[n - 1];

      double diameter = 0.0;
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          diameter = std::max(diameter, std::abs(v[i][j] - v[best][j]));
      if (diameter <= tol) {
        out.converged = true;
        break;
      }

      std::fill(c.begin(), c.end(), 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t j = 0; j < n; ++j) c[j] += v[i][j] / nd;
      }
      for (std::size_t j = 0; j < n; ++j) xr[j] = c[j] + alpha * (c[j] - v[worst][j]);
      const double fr = eval(xr);
      if (fr < f[best]) {
        for (std::size_t j = 0; j < n; ++j) xt[j] = c[j] + beta * (xr[j] - c[j]);
        const double fe = eval(xt);
        if (fe < fr) {
          v[worst] = xt;
          f[worst] = fe;
        } else {
          v[worst] = xr;
          f[worst] = fr;
        }
        continue;
      }
      if (fr < f[second]) {
        v[worst] = xr;
        f[worst] = fr;
        continue;
      }
      const bool outside = fr < f[worst];
      for (std::size_t j = 0; j < n; ++j)
        xt[j] = outside ? c[j] + gamma * (xr[j] - c[j]) : c[j] - gamma * (c[j] - v[worst][j]);
      const double fc = eval(xt);
      if (fc < std::min(fr, f[worst])) {
        v[worst] = xt;
        f[worst] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == best) continue;
        for (std::size_t j = 0; j < n; ++j) v[i][j] = v[best][j] + delta * (v[i][j] - v[best][j]);
        f[i] = eval(v[i]);
      }
    }
    const std::size_t best = static_cast<std::size_t>(
        std::min_element(f.begin(), f.end()) - f.begin());
    out.x = v[best];
    out.f = f[best];
    return out;
  }

  RunResult refine(const std::vector<double>& x0, const OptimizerConfig& cfg) const {
    RunResult best = simplex(x0, 0.5, cfg.max_iters, cfg.tolerance);
    std::size_t total = best.iterations;
    double step = 0.1;
    for (std::size_t r = 0; r < cfg.restarts; ++r, step *= 0.1) {
      RunResult next = simplex(best.x, step, cfg.max_iters, cfg.tolerance);
      total += next.iterations;
      const bool improved = next.f < best.f;
      if (improved) best = std::move(next);
      else best.converged = best.converged || next.converged;
      if (!improved && best.converged) break;
    }
    best.iterations = total;
    return best;
  }

 private:
  const StateObjective& objective_;
  std::size_t dim_;
  double sign_;
};

}  // namespace

MetricEstimate optimize_pure_state(const StateObjective& objective, std::size_t dim,
                                   Direction direction, const OptimizerConfig& cfg,
                                   const std::vector<StateVector>& extra_starts) {
  if (dim == 0) throw DimensionError("optimize_pure_state: dim must be >= 1");
  for (const StateVector& s : extra_starts)
    if (s.dim() != dim) throw DimensionError("optimize_pure_state: extra start dimension");
  const double sign = direction == Direction::kMinimize ? 1.0 : -1.0;
  const Minimizer minimizer(objective, dim, sign);

  MetricEstimate est;
  est.contract = direction == Direction::kMinimize
                     ? "upper estimate of the infimum"
                     : "lower estimate of the supremum";
  if (dim == 1) {
    est.witness = StateVector{1.0};
    est.value = objective(est.witness);
    if (!std::isfinite(est.value)) throw NumericalError("optimize_pure_state: non-finite");
    est.starts = 1;
    est.converged = true;
    return est;
  }

  const std::size_t n_extra = extra_starts.size();
  const std::size_t total = n_extra + cfg.starts;
  if (total == 0) throw DimensionError("optimize_pure_state: no starts");
  std::vector<std::vector<double>> x0(total);
  for (std::size_t i = 0; i < n_extra; ++i) x0[i] = state_to_params(extra_starts[i]);
  const Rng root(cfg.seed);
  for (std::size_t k = 0; k < cfg.starts; ++k) {
    Rng rng = root.split(k);
    x0[n_extra + k] = state_to_params(random_state(dim, rng));
  }

  std::vector<RunResult> runs(total);
  std::vector<std::string> failures(total);
  // Starts are independent; each slot is written by one thread only.
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::size_t i = 0; i < total; ++i) {
    try {
      runs[i] = minimizer.refine(x0[i], cfg);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  }
  for (const std::string& f : failures)
    if (!f.empty()) throw NumericalError(f);

  std::size_t best = 0;
  for (std::size_t i = 0; i < total; ++i) {
    est.iterations += runs[i].iterations;
    if (runs[i].f < runs[best].f) best = i;  // strict: lowest index wins ties
  }
  est.best_start = best;
  est.starts = total;
  est.converged = runs[best].converged;
  est.witness = params_to_state(runs[best].x, dim);
  est.value = objective(est.witness);
  return est;
}

}  // namespace waybound
