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

#include "waybound/random.hpp"

#include <cmath>
#include <numbers>

namespace waybound {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : key_(mix(seed + kGolden)) {}

Rng::Rng(std::uint64_t key, bool) : key_(key) {}

Rng Rng::split(std::uint64_t index) const {
  return Rng(mix(key_ ^ mix(index * kGolden + 0x632BE59BD9B4E019ull)), true);
}

std::uint64_t Rng::next_u64() { return mix(key_ + (++counter_) * kGolden); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

long long Rng::uniform_int(long long lo, long long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(next_u64() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im) * std::sqrt(0.5);
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (cplx& z : g.entries()) z = rng.complex_normal();
  // Modified Gram-Schmidt twice over the columns; the positive diagonal of
  // the implied R keeps the distribution Haar.
  for (std::size_t k = 0; k < dim; ++k) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        cplx d = 0.0;
        for (std::size_t i = 0; i < dim; ++i) d += std::conj(g(i, j)) * g(i, k);
        for (std::size_t i = 0; i < dim; ++i) g(i, k) -= d * g(i, j);
      }
    }
    double n = 0.0;
    for (std::size_t i = 0; i < dim; ++i) n += std::norm(g(i, k));
    n = std::sqrt(n);
    for (std::size_t i = 0; i < dim; ++i) g(i, k) /= n;
  }
  return g;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (cplx& z : g.entries()) z = rng.complex_normal();
  ComplexMatrix h(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return h;
}

StateVector random_state(std::size_t dim, Rng& rng) {
  StateVector v(dim);
  for (cplx& z : v.amplitudes()) z = rng.complex_normal();
  return v.normalized();
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_hermitian(dim, rng);
}

StateVector random_state(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(dim, rng);
}

}  // namespace waybound
