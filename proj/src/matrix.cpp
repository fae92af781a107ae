// Copyright 2026 The qgacs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qgacs/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qgacs/error.hpp"

namespace qgacs {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch,
         std::string(op) + ": shape " + std::to_string(a.rows()) + "x" +
             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
             std::to_string(b.cols()));
  }
}

void require_square(const ComplexMatrix& m, const char* op) {
  if (!m.is_square()) {
    fail(ErrorCode::dimension_mismatch, std::string(op) + ": matrix is not square");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    fail(ErrorCode::dimension_mismatch, "matrix entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::dimension_mismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  const std::size_t d = v.size();
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (v[i] == Complex{}) continue;
    for (std::size_t j = 0; j < d; ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::dimension_mismatch, "matrix product: inner dims differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

unsigned qubit_count(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    fail(ErrorCode::dimension_mismatch, "dimension " + std::to_string(dim) + " is not a power of two");
  }
  return static_cast<unsigned>(std::countr_zero(dim));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t keep_dim, std::size_t trace_dim,
                            Subsystem traced) {
  const std::size_t d = keep_dim * trace_dim;
  if (m.rows() != d || m.cols() != d) {
    fail(ErrorCode::dimension_mismatch,
         "partial_trace: expected " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  }
  ComplexMatrix out(keep_dim, keep_dim);
  for (std::size_t i = 0; i < keep_dim; ++i) {
    for (std::size_t j = 0; j < keep_dim; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < trace_dim; ++k) {
        s += traced == Subsystem::second ? m(i * trace_dim + k, j * trace_dim + k)
                                         : m(k * keep_dim + i, k * keep_dim + j);
      }
      out(i, j) = s;
    }
  }
  return out;
}

ComplexMatrix block(const ComplexMatrix& a, std::size_t i, std::size_t j, std::size_t n) {
  if (a.rows() != n * n || a.cols() != n * n) {
    fail(ErrorCode::dimension_mismatch, "block: matrix is not n^2 x n^2");
  }
  if (i < 1 || i > n || j < 1 || j > n) {
    fail(ErrorCode::invalid_argument, "block: index out of range (1-based)");
  }
  ComplexMatrix out(n, n);
  const std::size_t r0 = n * (i - 1);
  const std::size_t c0 = n * (j - 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = a(r0 + r, c0 + c);
  return out;
}

ComplexMatrix m_reduce(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t n) {
  if (a.rows() != n * n || a.cols() != n * n) {
    fail(ErrorCode::dimension_mismatch, "m_reduce: first argument is not n^2 x n^2");
  }
  if (b.rows() != n || b.cols() != n) {
    fail(ErrorCode::dimension_mismatch, "m_reduce: second argument is not n x n");
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Tr(A[i,j] B) = sum_{r,s} A(n i + r, n j + s) B(s, r)
      Complex s{};
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) s += a(n * i + r, n * j + c) * b(c, r);
      out(i, j) = s;
    }
  }
  return out;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    fail(ErrorCode::dimension_mismatch, "trace_product: incompatible shapes");
  }
  Complex s{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  return s;
}

double expectation(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.rows() != v.size() || a.cols() != v.size()) {
    fail(ErrorCode::dimension_mismatch, "expectation: vector length does not match matrix");
  }
  Complex s{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == Complex{}) continue;
    Complex row{};
    for (std::size_t j = 0; j < v.size(); ++j) row += a(i, j) * v[j];
    s += std::conj(v[i]) * row;
  }
  return s.real();
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * u.adjoint();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double d = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
  return d;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  return max_abs_diff(m * m.adjoint(), ComplexMatrix::identity(m.rows())) <= tol;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  require_square(m, "hermitize");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = z;
      out(j, i) = std::conj(z);
    }
  }
  return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigen");
  ComplexMatrix a = hermitize(m);
  const std::size_t d = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(d);

  double frob2 = 0.0;
  for (const auto& z : a.entries()) frob2 += std::norm(z);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += std::norm(a(p, q));
    if (off == 0.0 || off <= 1e-32 * frob2) break;

    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < d; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < d; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out{std::vector<double>(d), ComplexMatrix(d, d)};
  for (std::size_t k = 0; k < d; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < d; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

PsdCheck validate_psd(const ComplexMatrix& m, double tol) {
  require_square(m, "validate_psd");
  if (!is_hermitian(m, tol)) fail(ErrorCode::not_psd, "validate_psd: matrix is not Hermitian");
  const auto eig = hermitian_eigen(m);
  const double min_eig = eig.values.empty() ? 0.0 : eig.values.front();
  return {min_eig >= -tol, min_eig};
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& y) {
  const auto eig = hermitian_eigen(y);
  if (eig.values.empty() || eig.values.front() <= 0.0) {
    fail(ErrorCode::not_psd, "inverse_sqrt: matrix is not positive definite");
  }
  return apply_spectral(eig, [](double x) { return 1.0 / std::sqrt(x); });
}

namespace {

HermitianEigen relative_spectrum(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_square(x, "domination_exponent");
  require_same_shape(x, y, "domination_exponent");
  const ComplexMatrix w = inverse_sqrt(y);
  return hermitian_eigen(w * x * w);
}

}  // namespace

double domination_exponent(const ComplexMatrix& x, const ComplexMatrix& y) {
  const auto eig = relative_spectrum(x, y);
  return std::log2(eig.values.back());
}

double lower_domination_exponent(const ComplexMatrix& x, const ComplexMatrix& y) {
  const auto eig = relative_spectrum(x, y);
  return std::log2(eig.values.front());
}

int ceil_bits(double log2_value) {
  return static_cast<int>(std::ceil(log2_value - 1e-9));
}

int domination_bits(const ComplexMatrix& x, const ComplexMatrix& y) {
  int d = ceil_bits(domination_exponent(x, y));
  double scale = 0.0;
  for (const auto& z : y.entries()) scale = std::max(scale, std::abs(z));
  for (const auto& z : x.entries()) scale = std::max(scale, std::abs(z));
  for (int guard = 0; guard < 4; ++guard) {
    const ComplexMatrix gap = std::ldexp(1.0, d) * y - x;
    if (validate_psd(hermitize(gap), 1e-12 * std::max(1.0, std::ldexp(scale, d))).is_psd) break;
    ++d;
  }
  return d;
}

// ---------------------------------------------------------------------------

SemiDensityMatrix::SemiDensityMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}

SemiDensityMatrix::SemiDensityMatrix(ComplexMatrix m) {
  require_square(m, "SemiDensityMatrix");
  qubit_count(m.rows());
  if (!m.all_finite()) fail(ErrorCode::invalid_argument, "SemiDensityMatrix: non-finite entry");
  if (!is_hermitian(m, tol::semi_density_hermitian)) {
    fail(ErrorCode::not_psd, "SemiDensityMatrix: not Hermitian within 1e-12");
  }
  m_ = hermitize(m);
  const double tr = m_.trace().real();
  if (tr < -tol::psd || tr > 1.0 + tol::psd) {
    fail(ErrorCode::not_psd, "SemiDensityMatrix: trace " + std::to_string(tr) + " outside [0, 1]");
  }
  const auto check = validate_psd(m_, tol::psd);
  if (!check.is_psd) {
    fail(ErrorCode::not_psd,
         "SemiDensityMatrix: minimum eigenvalue " + std::to_string(check.min_eig));
  }
}

SemiDensityMatrix SemiDensityMatrix::assume_psd(ComplexMatrix m) {
  require_square(m, "SemiDensityMatrix");
  qubit_count(m.rows());
  if (!is_hermitian(m, tol::semi_density_hermitian)) {
    fail(ErrorCode::not_psd, "SemiDensityMatrix: not Hermitian within 1e-12");
  }
  ComplexMatrix h = hermitize(m);
  const double tr = h.trace().real();
  if (tr < -tol::psd || tr > 1.0 + tol::psd) {
    fail(ErrorCode::not_psd, "SemiDensityMatrix: trace " + std::to_string(tr) + " outside [0, 1]");
  }
  return SemiDensityMatrix(std::move(h), Trusted{});
}

SemiDensityMatrix SemiDensityMatrix::maximally_mixed(unsigned n_qubits) {
  const std::size_t d = std::size_t{1} << n_qubits;
  return SemiDensityMatrix(ComplexMatrix::identity(d) * Complex(std::ldexp(1.0, -static_cast<int>(n_qubits))),
                           Trusted{});
}

SemiDensityMatrix SemiDensityMatrix::zero(std::size_t dim) {
  qubit_count(dim);
  return SemiDensityMatrix(ComplexMatrix(dim, dim), Trusted{});
}

PureState::PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  qubit_count(amps_.size());
  double n2 = 0.0;
  for (const auto& z : amps_) n2 += std::norm(z);
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-10) {
    fail(ErrorCode::invalid_argument, "PureState: squared norm " + std::to_string(n2) + " != 1");
  }
}

PureState PureState::basis(unsigned n_qubits, std::size_t index) {
  const std::size_t d = std::size_t{1} << n_qubits;
  if (index >= d) fail(ErrorCode::invalid_argument, "PureState::basis: index out of range");
  std::vector<Complex> v(d);
  v[index] = 1.0;
  return PureState(std::move(v));
}

SemiDensityMatrix PureState::density() const {
  return SemiDensityMatrix::assume_psd(projector());
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Complex> v(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) v[i * b.dim() + j] = a[i] * b[j];
  return PureState(std::move(v));
}

UnitaryTransform::UnitaryTransform(ComplexMatrix u) : u_(std::move(u)) {
  require_square(u_, "UnitaryTransform");
  qubit_count(u_.rows());
  if (!is_unitary(u_, tol::unitary)) fail(ErrorCode::invalid_argument, "UnitaryTransform: U U^dagger != I");
}

UnitaryTransform UnitaryTransform::identity(std::size_t dim) {
  return UnitaryTransform(ComplexMatrix::identity(dim));
}

SemiDensityMatrix UnitaryTransform::apply(const SemiDensityMatrix& s) const {
  if (s.dim() != dim()) fail(ErrorCode::dimension_mismatch, "UnitaryTransform::apply: dims differ");
  return SemiDensityMatrix::assume_psd(conjugate(u_, s.matrix()));
}

PureState UnitaryTransform::apply(const PureState& p) const {
  if (p.dim() != dim()) fail(ErrorCode::dimension_mismatch, "UnitaryTransform::apply: dims differ");
  std::vector<Complex> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    Complex s{};
    for (std::size_t j = 0; j < dim(); ++j) s += u_(i, j) * p[j];
    out[i] = s;
  }
  // Renormalise the ~1e-16 drift so the result satisfies the unit-norm check.
  double n2 = 0.0;
  for (const auto& z : out) n2 += std::norm(z);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : out) z *= inv;
  return PureState(std::move(out));
}

SemiDensityMatrix tensor(const SemiDensityMatrix& a, const SemiDensityMatrix& b) {
  return SemiDensityMatrix::assume_psd(tensor(a.matrix(), b.matrix()));
}

SemiDensityMatrix partial_trace(const SemiDensityMatrix& s, std::size_t keep_dim,
                                std::size_t trace_dim, Subsystem traced) {
  return SemiDensityMatrix::assume_psd(partial_trace(s.matrix(), keep_dim, trace_dim, traced));
}

}  // namespace qgacs
