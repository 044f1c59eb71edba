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

// Dense complex kernels. Each kernel has a plain serial reference and an
// OpenMP production version. Threads only ever own disjoint output rows, so
// no floating-point reduction crosses a thread boundary and results do not
// depend on the thread count.

#ifndef WAYBOUND_KERNELS_HPP_
#define WAYBOUND_KERNELS_HPP_

#include <complex>
#include <cstddef>
#include <vector>

namespace waybound::kernels {

using cplx = std::complex<double>;

/// Output of a Jacobi diagonalization. `values` are the unsorted diagonal
/// after convergence; column k of `vectors` (row-major n x n) belongs to
/// values[k].
struct JacobiResult {
  std::vector<double> values;
  std::vector<cplx> vectors;
  int sweeps = 0;
  double off_norm = 0.0;
  bool converged = false;
};

/// Threads used by the parallel kernels. Reads WAYBOUND_THREADS once; falls
/// back to the OpenMP default.
int thread_count();

namespace serial {

/// c = a * b with a (m x k), b (k x n), all row-major. Naive i-j-k loop.
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m,
            std::size_t k, std::size_t n);

/// Cyclic-by-row Jacobi on a Hermitian row-major matrix. Stops when the
/// off-diagonal Frobenius norm is at most rel_tol * ||a||_F.
JacobiResult jacobi_eigh(std::vector<cplx> a, std::size_t n, double rel_tol,
                         int max_sweeps);

}  // namespace serial

namespace parallel {

/// Same contract and bit-identical result as serial::matmul (the sum over k
/// runs in the same order); i-k-j loop with rows spread over threads.
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t m,
            std::size_t k, std::size_t n);

/// Jacobi with round-robin pair ordering: each round applies n/2 disjoint
/// rotations at once. Same stopping rule as the serial version.
JacobiResult jacobi_eigh(std::vector<cplx> a, std::size_t n, double rel_tol,
                         int max_sweeps);

}  // namespace parallel

}  // namespace waybound::kernels

#endif  // WAYBOUND_KERNELS_HPP_
