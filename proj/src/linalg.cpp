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

#include "waybound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "waybound/kernels.hpp"

namespace waybound {
namespace {

constexpr double kJacobiTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kDegeneracyTol = 1e-9;
// Above this size the operator norm comes from power iteration on A^dagger A
// instead of a full eigendecomposition.
constexpr std::size_t kExactNormDim = 128;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": shape mismatch " << a.rows() << "x" << a.cols()
        << " vs " << b.rows() << "x" << b.cols();
    throw DimensionError(msg.str());
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
}

// Digits of a full index in a layout, most significant first.
std::vector<std::size_t> digits_of(std::size_t index,
                                   const std::vector<Factor>& factors) {
  std::vector<std::size_t> d(factors.size());
  for (std::size_t f = factors.size(); f-- > 0;) {
    d[f] = index % factors[f].dim;
    index /= factors[f].dim;
  }
  return d;
}

double power_operator_norm(const ComplexMatrix& a) {
  const std::size_t n = a.cols();
  StateVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    x[i] = cplx(1.0 + t, 0.5 - t);
  }
  x = x.normalized();
  const ComplexMatrix ad = a.adjoint();
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    StateVector y = ad * (a * x);
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    x = y;
    x *= 1.0 / ny;
    if (std::abs(ny - lambda) <= 1e-14 * ny) {
      lambda = ny;
      break;
    }
    lambda = ny;
  }
  return std::sqrt(lambda);
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  ComplexMatrix g = a.adjoint() * a;
  // Symmetrize away rounding before the Hermitian solver.
  ComplexMatrix gs = 0.5 * (g + g.adjoint());
  EigenDecomposition e = herm_eig(gs);
  std::vector<double> s;
  s.reserve(e.values.size());
  for (double v : e.values) s.push_back(std::sqrt(std::max(v, 0.0)));
  return s;
}

}  // namespace

void check_dimension(std::size_t n, const char* what) {
  if (n > kMaxDimension) {
    std::ostringstream msg;
    msg << what << ": dimension " << n << " exceeds cap " << kMaxDimension;
    throw DimensionError(msg.str());
  }
}

// ---------------------------------------------------------------- matrices

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  check_dimension(rows, "ComplexMatrix rows");
  check_dimension(cols, "ComplexMatrix cols");
  data_.assign(rows * cols, 0.0);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_dimension(rows, "ComplexMatrix rows");
  check_dimension(cols, "ComplexMatrix cols");
  if (data_.size() != rows * cols) {
    throw DimensionError("ComplexMatrix: entry count does not match shape");
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ComplexMatrix: ragged rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

cplx ComplexMatrix::trace() const {
  require_square(*this, "trace");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::hermiticity_residual() const {
  require_square(*this, "hermiticity_residual");
  double s = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      s += std::norm((*this)(r, c) - std::conj((*this)(c, r)));
  return std::sqrt(s);
}

double ComplexMatrix::unitarity_residual() const {
  require_square(*this, "unitarity_residual");
  ComplexMatrix g = adjoint() * (*this);
  for (std::size_t i = 0; i < rows_; ++i) g(i, i) -= 1.0;
  return frobenius_norm(g);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "matmul: inner dimensions " << a.cols() << " and " << b.rows();
    throw DimensionError(msg.str());
  }
  ComplexMatrix c(a.rows(), b.cols());
  kernels::parallel::matmul(a.entries().data(), b.entries().data(),
                            c.entries().data(), a.rows(), a.cols(), b.cols());
  return c;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix operator*(double s, ComplexMatrix a) {
  a *= cplx(s, 0.0);
  return a;
}

StateVector operator*(const ComplexMatrix& a, const StateVector& v) {
  if (a.cols() != v.dim()) {
    throw DimensionError("matvec: matrix cols do not match ket dim");
  }
  StateVector out(a.rows());
  kernels::parallel::matmul(a.entries().data(), v.amplitudes().data(),
                            out.amplitudes().data(), a.rows(), a.cols(), 1);
  return out;
}

// ------------------------------------------------------------------ kets

StateVector::StateVector(std::size_t dim) : amp_(dim, 0.0) {
  check_dimension(dim, "StateVector");
}

StateVector::StateVector(std::vector<cplx> amplitudes)
    : amp_(std::move(amplitudes)) {
  check_dimension(amp_.size(), "StateVector");
}

StateVector::StateVector(std::initializer_list<cplx> amplitudes)
    : amp_(amplitudes) {}

StateVector StateVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw DimensionError("basis: index out of range");
  StateVector v(dim);
  v[k] = 1.0;
  return v;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& z : amp_) s += std::norm(z);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw PreconditionError("normalized: zero vector");
  StateVector v = *this;
  v *= 1.0 / n;
  return v;
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

StateVector& StateVector::operator+=(const StateVector& o) {
  if (o.dim() != dim()) throw DimensionError("ket +: dim mismatch");
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += o.amp_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  if (o.dim() != dim()) throw DimensionError("ket -: dim mismatch");
  for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= o.amp_[i];
  return *this;
}

StateVector& StateVector::operator*=(cplx s) {
  for (cplx& z : amp_) z *= s;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) {
  a += b;
  return a;
}

StateVector operator-(StateVector a, const StateVector& b) {
  a -= b;
  return a;
}

StateVector operator*(cplx s, StateVector a) {
  a *= s;
  return a;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner: dim mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

cplx expectation(const ComplexMatrix& op, const StateVector& psi) {
  return inner(psi, op * psi);
}

double variance(const ComplexMatrix& op, const StateVector& psi) {
  const StateVector a = op * psi;
  const double mean = inner(psi, a).real();
  const double second = inner(a, a).real();
  return std::max(second - mean * mean, 0.0);
}

double std_dev(const ComplexMatrix& op, const StateVector& psi) {
  return std::sqrt(variance(op, psi));
}

ComplexMatrix outer(const StateVector& a, const StateVector& b) {
  ComplexMatrix m(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

ComplexMatrix projector(const StateVector& psi) { return outer(psi, psi); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t r = a.rows() * b.rows();
  const std::size_t c = a.cols() * b.cols();
  check_dimension(r, "kron");
  check_dimension(c, "kron");
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx x = a(i, j);
      if (x == cplx(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return m;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  check_dimension(a.dim() * b.dim(), "kron");
  StateVector v(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) v[i * b.dim() + k] = a[i] * b[k];
  return v;
}

ComplexMatrix pauli_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() {
  return ComplexMatrix{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}};
}
ComplexMatrix pauli_z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

// ----------------------------------------------------------------- norms

double frobenius_norm(const ComplexMatrix& x) {
  double s = 0.0;
  for (const cplx& z : x.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

double norm(const ComplexMatrix& x, NormKind kind) {
  switch (kind) {
    case NormKind::kEuclidean:
      if (x.rows() != 1 && x.cols() != 1) {
        throw DimensionError("norm: euclidean norm needs a row or column");
      }
      return frobenius_norm(x);
    case NormKind::kOperator: {
      if (x.empty()) return 0.0;
      if (frobenius_norm(x) == 0.0) return 0.0;
      if (std::max(x.rows(), x.cols()) > kExactNormDim) {
        return x.rows() < x.cols() ? power_operator_norm(x.adjoint())
                                   : power_operator_norm(x);
      }
      const std::vector<double> s =
          singular_values(x.rows() < x.cols() ? x.adjoint() : x);
      return s.back();
    }
    case NormKind::kTrace: {
      if (x.empty()) return 0.0;
      const double scale = std::max(1.0, frobenius_norm(x));
      if (x.is_square() && x.hermiticity_residual() <= 1e-12 * scale) {
        const EigenDecomposition e = herm_eig(x);
        double s = 0.0;
        for (double v : e.values) s += std::abs(v);
        return s;
      }
      const std::vector<double> s =
          singular_values(x.rows() < x.cols() ? x.adjoint() : x);
      return std::accumulate(s.begin(), s.end(), 0.0);
    }
  }
  throw DimensionError("norm: unknown kind");
}

double norm(const StateVector& x, NormKind kind) {
  if (kind != NormKind::kEuclidean) {
    throw DimensionError("norm: only the euclidean norm applies to a ket");
  }
  return x.norm();
}

// ------------------------------------------------------------ eigensolver

EigenDecomposition herm_eig(const ComplexMatrix& h) {
  require_square(h, "herm_eig");
  const std::size_t n = h.rows();
  const double scale = std::max(1.0, frobenius_norm(h));
  const double res = h.hermiticity_residual();
  if (!(res <= 1e-10 * scale)) {
    std::ostringstream msg;
    msg << "herm_eig: hermiticity residual " << res << " exceeds 1e-10";
    throw PreconditionError(msg.str());
  }
  std::vector<cplx> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = 0.5 * (h(i, j) + std::conj(h(j, i)));
  kernels::JacobiResult jr =
      kernels::parallel::jacobi_eigh(std::move(a), n, kJacobiTol, kJacobiMaxSweeps);
  if (!jr.converged) {
    throw PreconditionError("herm_eig: Jacobi iteration did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return jr.values[x] < jr.values[y];
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = jr.values[order[k]];
    for (std::size_t i = 0; i < n; ++i)
      out.vectors(i, k) = jr.vectors[i * n + order[k]];
  }

  // Gram-Schmidt inside each degenerate cluster, lowest column first.
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && out.values[end] - out.values[end - 1] <=
                          kDegeneracyTol * std::max(1.0, std::abs(out.values[end])))
      ++end;
    for (std::size_t k = start + 1; k < end; ++k) {
      for (std::size_t j = start; j < k; ++j) {
        cplx d = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          d += std::conj(out.vectors(i, j)) * out.vectors(i, k);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) -= d * out.vectors(i, j);
      }
      double nk = 0.0;
      for (std::size_t i = 0; i < n; ++i) nk += std::norm(out.vectors(i, k));
      nk = std::sqrt(nk);
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) /= nk;
    }
    start = end;
  }
  return out;
}

ComplexMatrix spectral_function(const EigenDecomposition& eig,
                                const std::vector<cplx>& f_values) {
  const ComplexMatrix& v = eig.vectors;
  if (f_values.size() != v.cols()) {
    throw DimensionError("spectral_function: value count mismatch");
  }
  ComplexMatrix w = v;
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t k = 0; k < w.cols(); ++k) w(i, k) *= f_values[k];
  return w * v.adjoint();
}

// ---------------------------------------------------------------- layouts

TensorLayout::TensorLayout(std::vector<Factor> factors)
    : factors_(std::move(factors)) {
  std::set<std::string> seen;
  total_ = 1;
  for (const Factor& f : factors_) {
    if (f.dim < 1) throw DimensionError("TensorLayout: factor dim must be >= 1");
    if (!seen.insert(f.label).second) {
      throw DimensionError("TensorLayout: duplicate label '" + f.label + "'");
    }
    total_ *= f.dim;
    check_dimension(total_, "TensorLayout");
  }
}

TensorLayout::TensorLayout(std::initializer_list<Factor> factors)
    : TensorLayout(std::vector<Factor>(factors)) {}

bool TensorLayout::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

std::size_t TensorLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return i;
  throw DimensionError("TensorLayout: unknown label '" + label + "'");
}

std::size_t TensorLayout::dim_of(const std::string& label) const {
  return factors_[index_of(label)].dim;
}

std::size_t TensorLayout::dim_of(const std::vector<std::string>& labels) const {
  std::size_t d = 1;
  for (const std::string& l : labels) d *= dim_of(l);
  return d;
}

std::vector<std::string> TensorLayout::labels() const {
  std::vector<std::string> out;
  for (const Factor& f : factors_) out.push_back(f.label);
  return out;
}

TensorLayout TensorLayout::restricted(const std::vector<std::string>& keep) const {
  for (const std::string& l : keep) index_of(l);
  std::vector<Factor> out;
  for (const Factor& f : factors_)
    if (std::find(keep.begin(), keep.end(), f.label) != keep.end()) out.push_back(f);
  return TensorLayout(out);
}

std::vector<std::string> TensorLayout::complement(
    const std::vector<std::string>& drop) const {
  for (const std::string& l : drop) index_of(l);
  std::vector<std::string> out;
  for (const Factor& f : factors_)
    if (std::find(drop.begin(), drop.end(), f.label) == drop.end())
      out.push_back(f.label);
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const std::string& target,
                    const TensorLayout& layout) {
  return embed(op, std::vector<std::string>{target}, layout);
}

ComplexMatrix embed(const ComplexMatrix& op,
                    const std::vector<std::string>& targets,
                    const TensorLayout& layout) {
  std::vector<std::size_t> tidx;
  for (const std::string& t : targets) {
    const std::size_t i = layout.index_of(t);
    if (std::find(tidx.begin(), tidx.end(), i) != tidx.end()) {
      throw DimensionError("embed: repeated target '" + t + "'");
    }
    tidx.push_back(i);
  }
  const std::size_t td = layout.dim_of(targets);
  if (op.rows() != td || op.cols() != td) {
    std::ostringstream msg;
    msg << "embed: operator is " << op.rows() << "x" << op.cols()
        << " but target dimension is " << td;
    throw DimensionError(msg.str());
  }
  const std::size_t n = layout.total_dim();
  const std::size_t rest = n / td;
  const auto& fs = layout.factors();
  // groups[r * td + t] = full index with rest digits r and target digits t.
  std::vector<std::size_t> groups(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = digits_of(i, fs);
    std::size_t t = 0;
    for (std::size_t k : tidx) t = t * fs[k].dim + d[k];
    std::size_t r = 0;
    for (std::size_t f = 0; f < fs.size(); ++f)
      if (std::find(tidx.begin(), tidx.end(), f) == tidx.end())
        r = r * fs[f].dim + d[f];
    groups[r * td + t] = i;
  }
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < rest; ++r)
    for (std::size_t a = 0; a < td; ++a)
      for (std::size_t b = 0; b < td; ++b)
        out(groups[r * td + a], groups[r * td + b]) = op(a, b);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::string>& discard,
                            const TensorLayout& layout) {
  const std::size_t n = layout.total_dim();
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionError("partial_trace: operator does not match layout");
  }
  std::vector<bool> drop(layout.size(), false);
  for (const std::string& l : discard) drop[layout.index_of(l)] = true;
  const auto& fs = layout.factors();
  std::size_t dd = 1;
  for (std::size_t f = 0; f < fs.size(); ++f)
    if (drop[f]) dd *= fs[f].dim;
  const std::size_t kd = n / dd;
  std::vector<std::size_t> groups(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = digits_of(i, fs);
    std::size_t k = 0, r = 0;
    for (std::size_t f = 0; f < fs.size(); ++f) {
      if (drop[f]) {
        r = r * fs[f].dim + d[f];
      } else {
        k = k * fs[f].dim + d[f];
      }
    }
    groups[k * dd + r] = i;
  }
  ComplexMatrix out(kd, kd);
  for (std::size_t a = 0; a < kd; ++a)
    for (std::size_t b = 0; b < kd; ++b) {
      cplx s = 0.0;
      for (std::size_t r = 0; r < dd; ++r) s += rho(groups[a * dd + r], groups[b * dd + r]);
      out(a, b) = s;
    }
  return out;
}

StateVector contract_factors(
    const StateVector& full,
    const std::vector<std::pair<std::string, StateVector>>& bras,
    const TensorLayout& layout) {
  if (full.dim() != layout.total_dim()) {
    throw DimensionError("contract_factors: ket does not match layout");
  }
  const auto& fs = layout.factors();
  std::vector<const StateVector*> bra_of(fs.size(), nullptr);
  for (const auto& [label, bra] : bras) {
    const std::size_t f = layout.index_of(label);
    if (bra.dim() != fs[f].dim) {
      throw DimensionError("contract_factors: bra dim mismatch on '" + label + "'");
    }
    if (bra_of[f]) throw DimensionError("contract_factors: repeated label");
    bra_of[f] = &bra;
  }
  std::size_t kd = 1;
  for (std::size_t f = 0; f < fs.size(); ++f)
    if (!bra_of[f]) kd *= fs[f].dim;
  StateVector out(kd);
  for (std::size_t i = 0; i < full.dim(); ++i) {
    if (full[i] == cplx(0.0)) continue;
    const auto d = digits_of(i, fs);
    cplx coef = 1.0;
    std::size_t k = 0;
    for (std::size_t f = 0; f < fs.size(); ++f) {
      if (bra_of[f]) {
        coef *= std::conj((*bra_of[f])[d[f]]);
      } else {
        k = k * fs[f].dim + d[f];
      }
    }
    out[k] += coef * full[i];
  }
  return out;
}

StateVector product_state(const std::vector<StateVector>& parts) {
  StateVector v{cplx(1.0)};
  for (const StateVector& p : parts) v = kron(v, p);
  return v;
}

}  // namespace waybound
