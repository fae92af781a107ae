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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qgacs/matrix.hpp"

namespace qgacs {

/// Reduced fraction with positive denominator. Arithmetic throws on int64
/// overflow instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num) : num_(num) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  mpq_class to_mpq() const;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational abs(const Rational& r);

/// re + i im with rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  Complex to_complex() const { return {re.to_double(), im.to_double()}; }
  GaussianRational conj() const { return {re, -im}; }
  /// |z|^2
  Rational norm() const { return re * re + im * im; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

/// Dense matrix of Gaussian rationals. Used for elementary states, unitaries,
/// POVM elements and densities whose code length matters.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  GaussianRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GaussianRational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RationalMatrix adjoint() const;
  GaussianRational trace() const;
  RationalMatrix scaled(const Rational& s) const;
  ComplexMatrix to_complex() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix tensor(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

/// Exact sum of |z|^2 over the entries.
mpq_class exact_norm_squared(const std::vector<GaussianRational>& v);

}  // namespace qgacs
