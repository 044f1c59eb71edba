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

// Dense complex matrices and kets on labeled tensor-product spaces.
//
// Storage is row-major. Every dimension is capped at kMaxDimension; products
// that would exceed it raise DimensionError.

#ifndef WAYBOUND_LINALG_HPP_
#define WAYBOUND_LINALG_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "waybound/errors.hpp"

namespace waybound {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxDimension = 4096;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(const std::vector<double>& d);
  static ComplexMatrix diagonal(const std::vector<cplx>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  const std::vector<cplx>& entries() const { return data_; }
  std::vector<cplx>& entries() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const;

  /// Frobenius norm of h - h^dagger.
  double hermiticity_residual() const;
  /// Frobenius norm of U^dagger U - I.
  double unitarity_residual() const;
  /// True when every entry is finite.
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  bool operator==(const ComplexMatrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim);
  explicit StateVector(std::vector<cplx> amplitudes);
  StateVector(std::initializer_list<cplx> amplitudes);

  static StateVector basis(std::size_t dim, std::size_t k);

  std::size_t dim() const { return amp_.size(); }
  cplx& operator[](std::size_t i) { return amp_[i]; }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }

  double norm() const;
  StateVector normalized() const;
  bool is_normalized(double tol = 1e-12) const;

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(cplx s);

  bool operator==(const StateVector& o) const = default;

 private:
  std::vector<cplx> amp_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(double s, ComplexMatrix a);
StateVector operator*(const ComplexMatrix& a, const StateVector& v);
StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(cplx s, StateVector a);

/// <a|b>.
cplx inner(const StateVector& a, const StateVector& b);
/// <psi|op|psi>.
cplx expectation(const ComplexMatrix& op, const StateVector& psi);
/// Population variance <A^2> - <A>^2 of a Hermitian op, clamped at 0.
double variance(const ComplexMatrix& op, const StateVector& psi);
double std_dev(const ComplexMatrix& op, const StateVector& psi);

ComplexMatrix outer(const StateVector& a, const StateVector& b);
ComplexMatrix projector(const StateVector& psi);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector kron(const StateVector& a, const StateVector& b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

enum class NormKind { kOperator, kTrace, kEuclidean };

/// Operator norm is the largest singular value, trace norm their sum.
/// kEuclidean on a matrix is only defined for a single row or column.
double norm(const ComplexMatrix& x, NormKind kind);
/// Only kEuclidean is defined for kets.
double norm(const StateVector& x, NormKind kind);
double frobenius_norm(const ComplexMatrix& x);
/// Largest absolute entry of a - b; DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Spectral decomposition of a Hermitian matrix by Jacobi rotations.
/// Degenerate columns (values within 1e-9) are re-orthonormalized by
/// Gram-Schmidt in column-index order.
EigenDecomposition herm_eig(const ComplexMatrix& h);

/// V diag(f(lambda)) V^dagger.
ComplexMatrix spectral_function(const EigenDecomposition& eig,
                                const std::vector<cplx>& f_values);

struct Factor {
  std::string label;
  std::size_t dim = 1;
  bool operator==(const Factor&) const = default;
};

/// Ordered labeled tensor factors. Index of the full space is the
/// mixed-radix number with the first factor most significant.
class TensorLayout {
 public:
  TensorLayout() = default;
  explicit TensorLayout(std::vector<Factor> factors);
  TensorLayout(std::initializer_list<Factor> factors);

  std::size_t total_dim() const { return total_; }
  std::size_t size() const { return factors_.size(); }
  const std::vector<Factor>& factors() const { return factors_; }
  const Factor& factor(std::size_t i) const { return factors_[i]; }
  bool contains(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;
  std::size_t dim_of(const std::string& label) const;
  std::size_t dim_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels() const;
  /// Factors whose labels are in `keep`, in layout order.
  TensorLayout restricted(const std::vector<std::string>& keep) const;
  /// Labels not in `drop`, in layout order.
  std::vector<std::string> complement(const std::vector<std::string>& drop) const;

  bool operator==(const TensorLayout&) const = default;

 private:
  std::vector<Factor> factors_;
  std::size_t total_ = 1;
};

/// op acting on target, identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, const std::string& target,
                    const TensorLayout& layout);
/// op acting on the tensor product of targets taken in the listed order
/// (which need not be layout order), identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op,
                    const std::vector<std::string>& targets,
                    const TensorLayout& layout);

/// Trace over the discarded factors; kept factors stay in layout order.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::string>& discard,
                            const TensorLayout& layout);

/// Contracts a full-space ket with bras on some factors, returning the
/// unnormalized ket on the remaining factors (layout order).
StateVector contract_factors(
    const StateVector& full,
    const std::vector<std::pair<std::string, StateVector>>& bras,
    const TensorLayout& layout);

/// Ket on the full layout from one ket per factor, in layout order.
StateVector product_state(const std::vector<StateVector>& parts);

/// Throws DimensionError if n exceeds kMaxDimension.
void check_dimension(std::size_t n, const char* what);

}  // namespace waybound

#endif  // WAYBOUND_LINALG_HPP_
