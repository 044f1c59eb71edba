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

#ifndef WAYBOUND_RANDOM_HPP_
#define WAYBOUND_RANDOM_HPP_

#include <cstddef>
#include <cstdint>

#include "waybound/linalg.hpp"

namespace waybound {

/// Counter-based splittable generator: output k of a stream is
/// splitmix64(key + k * golden). Splitting derives an independent key, so
/// per-trial streams do not depend on evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Child stream number `index`; the parent is left untouched.
  Rng split(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Integer uniform on [lo, hi].
  long long uniform_int(long long lo, long long hi);
  double normal();
  /// Standard complex normal, E|z|^2 = 1.
  cplx complex_normal();

  std::uint64_t key() const { return key_; }

 private:
  Rng(std::uint64_t key, bool);
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class RandomKind { kUnitary, kPureState, kHermitian };

/// Haar unitary: Gram-Schmidt on a complex Ginibre matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
/// (G + G^dagger) / 2 with G Ginibre.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);
/// Normalized complex Gaussian vector.
StateVector random_state(std::size_t dim, Rng& rng);

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);
ComplexMatrix random_hermitian(std::size_t dim, std::uint64_t seed);
StateVector random_state(std::size_t dim, std::uint64_t seed);

}  // namespace waybound

#endif  // WAYBOUND_RANDOM_HPP_
