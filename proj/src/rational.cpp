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

#include "qgacs/rational.hpp"

#include <numeric>

#include "qgacs/error.hpp"

namespace qgacs {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::internal, "rational overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::internal, "rational overflow");
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorCode::invalid_argument, "rational with zero denominator");
  if (num == INT64_MIN || den == INT64_MIN) fail(ErrorCode::internal, "rational overflow");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

mpq_class Rational::to_mpq() const {
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t da = a.den_ / g;
  const std::int64_t db = b.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)),
                  checked_mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.num_ == 0 || b.num_ == 0) return {};
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) fail(ErrorCode::invalid_argument, "rational division by zero");
  return a * Rational(b.den_, b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 l = static_cast<__int128>(a.num_) * b.den_;
  const __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l <=> r;
}

Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i).re = 1;
  return m;
}

RationalMatrix RationalMatrix::adjoint() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j).conj();
  return out;
}

GaussianRational RationalMatrix::trace() const {
  if (rows_ != cols_) fail(ErrorCode::dimension_mismatch, "trace of non-square matrix");
  GaussianRational t;
  for (std::size_t i = 0; i < rows_; ++i) t = t + (*this)(i, i);
  return t;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
  RationalMatrix out = *this;
  for (auto& z : out.data_) z = {z.re * s, z.im * s};
  return out;
}

ComplexMatrix RationalMatrix::to_complex() const {
  std::vector<Complex> v(data_.size());
  for (std::size_t k = 0; k < data_.size(); ++k) v[k] = data_[k].to_complex();
  return ComplexMatrix(rows_, cols_, std::move(v));
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::dimension_mismatch, "rational product: inner dims differ");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GaussianRational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j).is_zero()) continue;
        out(i, j) = out(i, j) + aik * b(k, j);
      }
    }
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    fail(ErrorCode::dimension_mismatch, "rational sum: shapes differ");
  }
  RationalMatrix out = a;
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
  return out;
}

RationalMatrix tensor(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l)
          out(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
    }
  return out;
}

mpq_class exact_norm_squared(const std::vector<GaussianRational>& v) {
  mpq_class s = 0;
  for (const auto& z : v) {
    const mpq_class re = z.re.to_mpq();
    const mpq_class im = z.im.to_mpq();
    s += re * re + im * im;
  }
  return s;
}

}  // namespace qgacs
