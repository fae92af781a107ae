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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qgacs {

using Complex = std::complex<double>;

// Tolerance ladder shared by every module.
namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double identity = 1e-9;
inline constexpr double semi_density_hermitian = 1e-12;
inline constexpr double admission = 1e-10;
}  // namespace tol

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |v><v|
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Which factor of a bipartite space an operation acts on.
enum class Subsystem { first, second };

/// Number of qubits for a power-of-two dimension; throws otherwise.
unsigned qubit_count(std::size_t dim);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace over one factor of a (keep_dim * trace_dim)-dimensional
/// space. `traced` names the factor that is removed.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t keep_dim,
                            std::size_t trace_dim, Subsystem traced);

/// The n x n block A[i,j] of an n^2 x n^2 matrix; i and j are 1-based.
ComplexMatrix block(const ComplexMatrix& a, std::size_t i, std::size_t j, std::size_t n);

/// M_{AB}: the n x n matrix of block traces Tr(A[i,j] B). Satisfies
/// Tr A(C (x) B) = Tr M_{AB} C for every n x n matrix C.
ComplexMatrix m_reduce(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t n);

/// Tr(ab) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Re <v|a|v>.
double expectation(const ComplexMatrix& a, std::span<const Complex> v);

/// u m u^dagger
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol = tol::hermitian);
bool is_unitary(const ComplexMatrix& m, double tol = tol::unitary);
ComplexMatrix hermitize(const ComplexMatrix& m);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // eigenvectors as columns
};

/// Cyclic Jacobi eigensolver on the Hermitized input.
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

struct PsdCheck {
  bool is_psd;
  double min_eig;
};

/// Smallest eigenvalue of the Hermitized matrix; throws when the input is
/// not Hermitian within `tol`.
PsdCheck validate_psd(const ComplexMatrix& m, double tol = tol::psd);

/// V f(D) V^dagger for a function applied to each eigenvalue.
template <class F>
ComplexMatrix apply_spectral(const HermitianEigen& eig, F&& f) {
  const std::size_t d = eig.values.size();
  ComplexMatrix out(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const Complex vik = eig.vectors(i, k) * fk;
      for (std::size_t j = 0; j < d; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

/// y^{-1/2} for positive definite y.
ComplexMatrix inverse_sqrt(const ComplexMatrix& y);

/// log2 of the largest eigenvalue of y^{-1/2} x y^{-1/2}: the least c with
/// x <= 2^c y. Requires y positive definite.
double domination_exponent(const ComplexMatrix& x, const ComplexMatrix& y);

/// log2 of the smallest eigenvalue of y^{-1/2} x y^{-1/2}: the greatest c
/// with x >= 2^c y.
double lower_domination_exponent(const ComplexMatrix& x, const ComplexMatrix& y);

/// Least integer D with x <= 2^D y, from domination_exponent and confirmed
/// by a PSD check of 2^D y - x.
int domination_bits(const ComplexMatrix& x, const ComplexMatrix& y);

/// Ceiling of a log2 quantity with a 1e-9 allowance for rounding.
int ceil_bits(double log2_value);

class PureState;

/// Hermitian PSD matrix with trace in [0, 1].
class SemiDensityMatrix {
 public:
  /// Full validation: Hermitian, PSD and trace bound.
  explicit SemiDensityMatrix(ComplexMatrix m);

  /// For results of PSD-preserving operations on validated inputs. Checks
  /// Hermiticity and trace but skips the eigensolve.
  static SemiDensityMatrix assume_psd(ComplexMatrix m);
  static SemiDensityMatrix maximally_mixed(unsigned n_qubits);
  static SemiDensityMatrix zero(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  unsigned qubits() const { return qubit_count(m_.rows()); }
  double trace() const { return m_.trace().real(); }

 private:
  struct Trusted {};
  SemiDensityMatrix(ComplexMatrix m, Trusted);
  ComplexMatrix m_;
};

/// Unit vector in a qubit space.
class PureState {
 public:
  explicit PureState(std::vector<Complex> amplitudes);
  static PureState basis(unsigned n_qubits, std::size_t index);

  std::size_t dim() const noexcept { return amps_.size(); }
  unsigned qubits() const { return qubit_count(amps_.size()); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  ComplexMatrix projector() const { return ComplexMatrix::outer(amps_); }
  SemiDensityMatrix density() const;

  friend PureState tensor(const PureState& a, const PureState& b);

 private:
  std::vector<Complex> amps_;
};

class UnitaryTransform {
 public:
  explicit UnitaryTransform(ComplexMatrix u);
  static UnitaryTransform identity(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return u_; }
  std::size_t dim() const noexcept { return u_.rows(); }
  UnitaryTransform adjoint() const { return UnitaryTransform(u_.adjoint()); }

  SemiDensityMatrix apply(const SemiDensityMatrix& s) const;
  PureState apply(const PureState& p) const;

 private:
  ComplexMatrix u_;
};

SemiDensityMatrix tensor(const SemiDensityMatrix& a, const SemiDensityMatrix& b);
SemiDensityMatrix partial_trace(const SemiDensityMatrix& s, std::size_t keep_dim,
                                std::size_t trace_dim, Subsystem traced);

}  // namespace qgacs
