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

#include "waybound/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <string>

namespace waybound::kernels {
namespace {

// Work below this many complex multiply-adds stays on one thread.
constexpr std::size_t kParallelWork = 1u << 15;

// Complex arithmetic spelled out on real parts: std::complex operator* goes
// through the NaN-recovery slow path under strict IEEE settings.
inline void mul_add(double ar, double ai, double br, double bi, double& cr,
                    double& ci) {
  cr += ar * br - ai * bi;
  ci += ar * bi + ai * br;
}

struct Rotation {
  std::size_t p = 0;
  std::size_t q = 0;
  double c = 1.0;
  double s = 0.0;
  double er = 1.0;  // e = exp(i arg a_pq)
  double ei = 0.0;
  double new_pp = 0.0;
  double new_qq = 0.0;
};

double frobenius(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const cplx& z : a) s += std::norm(z);
  return std::sqrt(s);
}

double off_diagonal(const std::vector<cplx>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a[i * n + j]);
  return std::sqrt(s);
}

// Rotation J = [[c, s e], [-s conj(e), c]] on (p, q) with J^dagger B J
// diagonal for the 2x2 block B. False when the pair is below threshold.
bool make_rotation(const std::vector<cplx>& a, std::size_t n, std::size_t p,
                   std::size_t q, double skip, Rotation& r) {
  const cplx z = a[p * n + q];
  const double az = std::abs(z);
  if (!(az > skip)) return false;
  const double app = a[p * n + p].real();
  const double aqq = a[q * n + q].real();
  const double tau = (aqq - app) / (2.0 * az);
  double t;
  if (std::abs(tau) > 1e150) {
    t = 0.5 / tau;
  } else {
    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  }
  r.p = p;
  r.q = q;
  r.c = 1.0 / std::sqrt(1.0 + t * t);
  r.s = t * r.c;
  r.er = z.real() / az;
  r.ei = z.imag() / az;
  r.new_pp = app - t * az;
  r.new_qq = aqq + t * az;
  return true;
}

// Row update A <- J^dagger A restricted to rows p, q.
inline void rotate_rows(cplx* a, std::size_t n, const Rotation& r) {
  cplx* rp = a + r.p * n;
  cplx* rq = a + r.q * n;
  const double se_r = r.s * r.er, se_i = r.s * r.ei;
  for (std::size_t j = 0; j < n; ++j) {
    const double xr = rp[j].real(), xi = rp[j].imag();
    const double yr = rq[j].real(), yi = rq[j].imag();
    // p: c x - s e y ; q: s conj(e) x + c y
    rp[j] = cplx(r.c * xr - (se_r * yr - se_i * yi),
                 r.c * xi - (se_r * yi + se_i * yr));
    rq[j] = cplx((se_r * xr + se_i * xi) + r.c * yr,
                 (se_r * xi - se_i * xr) + r.c * yi);
  }
}

// Column update on one row: A <- A J for entries (i, p), (i, q).
inline void rotate_cols(cplx* row, const Rotation& r) {
  const double se_r = r.s * r.er, se_i = r.s * r.ei;
  const double xr = row[r.p].real(), xi = row[r.p].imag();
  const double yr = row[r.q].real(), yi = row[r.q].imag();
  // p: c x - s conj(e) y ; q: s e x + c y
  row[r.p] = cplx(r.c * xr - (se_r * yr + se_i * yi),
                  r.c * xi - (se_r * yi - se_i * yr));
  row[r.q] = cplx((se_r * xr - se_i * xi) + r.c * yr,
                  (se_r * xi + se_i * xr) + r.c * yi);
}

inline void settle(cplx* a, std::size_t n, const Rotation& r) {
  a[r.p * n + r.q] = 0.0;
  a[r.q * n + r.p] = 0.0;
  a[r.p * n + r.p] = r.new_pp;
  a[r.q * n + r.q] = r.new_qq;
}

std::vector<cplx> identity(std::size_t n) {
  std::vector<cplx> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  return v;
}

JacobiResult finish(std::vector<cplx>& a, std::vector<cplx>& v, std::size_t n,
                    int sweeps, double off, bool converged) {
  JacobiResult out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i * n + i].real();
  out.vectors = std::move(v);
  out.sweeps = sweeps;
  out.off_norm = off;
  out.converged = converged;
  return out;
}

}  // namespace

int thread_count() {
  static const int count = [] {
    if (const char* env = std::getenv("WAYBOUND_THREADS")) {
      try {
        const int k = std::stoi(env);
        if (k >= 1) return k;
      } catch (...) {
      }
    }
    return omp_get_max_threads();
  }();
  return count;
}

namespace serial {

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m,
            std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double cr = 0.0, ci = 0.0;
      for (std::size_t l = 0; l < k; ++l) {
        const cplx x = a[i * k + l];
        const cplx y = b[l * n + j];
        mul_add(x.real(), x.imag(), y.real(), y.imag(), cr, ci);
      }
      c[i * n + j] = cplx(cr, ci);
    }
  }
}

JacobiResult jacobi_eigh(std::vector<cplx> a, std::size_t n, double rel_tol,
                         int max_sweeps) {
  std::vector<cplx> v = identity(n);
  const double target = rel_tol * frobenius(a);
  const double skip = n > 0 ? 0.01 * target / static_cast<double>(n) : 0.0;
  double off = off_diagonal(a, n);
  int sweep = 0;
  while (off > target && sweep < max_sweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Rotation r;
        if (!make_rotation(a, n, p, q, skip, r)) continue;
        rotate_rows(a.data(), n, r);
        for (std::size_t i = 0; i < n; ++i) rotate_cols(a.data() + i * n, r);
        for (std::size_t i = 0; i < n; ++i) rotate_cols(v.data() + i * n, r);
        settle(a.data(), n, r);
      }
    }
    ++sweep;
    off = off_diagonal(a, n);
  }
  return finish(a, v, n, sweep, off, off <= target);
}

}  // namespace serial

namespace parallel {

namespace {

// Row i of C = A B, accumulated in k order into acc (2 n doubles).
void matmul_row(const cplx* a, const cplx* b, cplx* c, std::size_t i, std::size_t k,
                std::size_t n, std::vector<double>& acc) {
  acc.assign(2 * n, 0.0);
  for (std::size_t l = 0; l < k; ++l) {
    const double xr = a[i * k + l].real(), xi = a[i * k + l].imag();
    const cplx* brow = b + l * n;
    for (std::size_t j = 0; j < n; ++j) {
      mul_add(xr, xi, brow[j].real(), brow[j].imag(), acc[2 * j], acc[2 * j + 1]);
    }
  }
  for (std::size_t j = 0; j < n; ++j) c[i * n + j] = cplx(acc[2 * j], acc[2 * j + 1]);
}

}  // namespace

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m,
            std::size_t k, std::size_t n) {
  const bool wide = m * k * n >= kParallelWork && m > 1;
  if (!wide) {
    std::vector<double> acc;
    for (std::size_t i = 0; i < m; ++i) matmul_row(a, b, c, i, k, n, acc);
    return;
  }
  const long long rows = static_cast<long long>(m);
#pragma omp parallel num_threads(thread_count())
  {
    std::vector<double> acc;
#pragma omp for schedule(static)
    for (long long ii = 0; ii < rows; ++ii)
      matmul_row(a, b, c, static_cast<std::size_t>(ii), k, n, acc);
  }
}

JacobiResult jacobi_eigh(std::vector<cplx> a, std::size_t n, double rel_tol,
                         int max_sweeps) {
  std::vector<cplx> v = identity(n);
  const double target = rel_tol * frobenius(a);
  const double skip = n > 0 ? 0.01 * target / static_cast<double>(n) : 0.0;
  // Circle-method tournament on m players; player m-1 is a dummy when n is
  // odd.
  const std::size_t m = n + (n % 2);
  const int threads = thread_count();
  const bool wide = n * n >= kParallelWork / 8;
  std::vector<Rotation> rots;
  rots.reserve(m / 2);
  double off = off_diagonal(a, n);
  int sweep = 0;
  while (off > target && sweep < max_sweeps && n > 1) {
    for (std::size_t round = 0; round + 1 < m; ++round) {
      rots.clear();
      for (std::size_t k = 0; k < m / 2; ++k) {
        std::size_t i1, i2;
        if (k == 0) {
          i1 = m - 1;
          i2 = round;
        } else {
          i1 = (round + k) % (m - 1);
          i2 = (round + m - 1 - k) % (m - 1);
        }
        if (i1 >= n || i2 >= n) continue;
        Rotation r;
        if (make_rotation(a, n, std::min(i1, i2), std::max(i1, i2), skip, r))
          rots.push_back(r);
      }
      if (rots.empty()) continue;
      const long long nr = static_cast<long long>(rots.size());
      const long long nn = static_cast<long long>(n);
      cplx* ap = a.data();
      cplx* vp = v.data();
      if (wide) {
#pragma omp parallel num_threads(threads)
        {
#pragma omp for schedule(static)
          for (long long t = 0; t < nr; ++t) rotate_rows(ap, n, rots[t]);
#pragma omp for schedule(static)
          for (long long i = 0; i < nn; ++i)
            for (const Rotation& r : rots) rotate_cols(ap + i * n, r);
#pragma omp for schedule(static)
          for (long long i = 0; i < nn; ++i)
            for (const Rotation& r : rots) rotate_cols(vp + i * n, r);
        }
      } else {
        // Same update order without the cost of entering a parallel region.
        for (long long t = 0; t < nr; ++t) rotate_rows(ap, n, rots[t]);
        for (long long i = 0; i < nn; ++i)
          for (const Rotation& r : rots) rotate_cols(ap + i * n, r);
        for (long long i = 0; i < nn; ++i)
          for (const Rotation& r : rots) rotate_cols(vp + i * n, r);
      }
      for (const Rotation& r : rots) settle(ap, n, r);
    }
    ++sweep;
    off = off_diagonal(a, n);
  }
  return finish(a, v, n, sweep, off, off <= target);
}

}  // namespace parallel

}  // namespace waybound::kernels
