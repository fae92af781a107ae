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

#include "qgacs/quantum_ops.hpp"

#include <cmath>

#include "qgacs/codec.hpp"
#include "qgacs/error.hpp"
#include "qgacs/universal.hpp"

namespace qgacs {

Povm::Povm(std::vector<ComplexMatrix> outcomes) : outcomes_(std::move(outcomes)) { validate(); }

Povm::Povm(std::vector<RationalMatrix> outcomes) {
  for (const auto& e : outcomes) outcomes_.push_back(e.to_complex());
  exact_ = std::move(outcomes);
  validate();
  const std::size_t d = dim();
  RationalMatrix sum(d, d);
  for (const auto& e : *exact_) sum = sum + e;
  if (!(sum == RationalMatrix::identity(d))) {
    fail(ErrorCode::invalid_argument, "POVM elements do not sum exactly to the identity");
  }
}

void Povm::validate() const {
  if (outcomes_.empty()) fail(ErrorCode::invalid_argument, "POVM without outcomes");
  const std::size_t d = outcomes_.front().rows();
  qubit_count(d);
  ComplexMatrix sum(d, d);
  for (std::size_t k = 0; k < outcomes_.size(); ++k) {
    const auto& e = outcomes_[k];
    if (e.rows() != d || e.cols() != d) fail(ErrorCode::dimension_mismatch, "POVM elements differ in size");
    if (!is_hermitian(e)) fail(ErrorCode::not_psd, "POVM element " + std::to_string(k) + " not Hermitian");
    if (!validate_psd(e).is_psd) fail(ErrorCode::not_psd, "POVM element " + std::to_string(k) + " not PSD");
    sum += e;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > tol::hermitian) {
    fail(ErrorCode::invalid_argument, "POVM elements do not sum to the identity");
  }
}

Povm Povm::computational(unsigned n_qubits) {
  const std::size_t d = std::size_t{1} << n_qubits;
  std::vector<RationalMatrix> out;
  for (std::size_t k = 0; k < d; ++k) {
    RationalMatrix e(d, d);
    e(k, k).re = 1;
    out.push_back(std::move(e));
  }
  return Povm(std::move(out));
}

Povm Povm::rotated(unsigned n_qubits) {
  const RationalMatrix r = rational_rotation(n_qubits);
  const std::size_t d = r.rows();
  std::vector<RationalMatrix> out;
  for (std::size_t k = 0; k < d; ++k) {
    RationalMatrix e(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) e(i, j) = r(i, k) * r(j, k).conj();
    out.push_back(std::move(e));
  }
  return Povm(std::move(out));
}

Povm Povm::coarse_three(unsigned n_qubits) {
  const std::size_t d = std::size_t{1} << n_qubits;
  const Rational half(1, 2);
  RationalMatrix a(d, d), b(d, d), c(d, d);
  a(0, 0).re = half;
  b(0, 0).re = half;
  for (std::size_t i = 1; i < d; ++i) {
    b(i, i).re = half;
    c(i, i).re = half;
  }
  return Povm(std::vector<RationalMatrix>{a, b, c});
}

std::size_t Povm::code_length() const {
  if (!exact_) fail(ErrorCode::invalid_argument, "POVM has no elementary description");
  std::size_t len = nat_length(exact_->size());
  for (const auto& e : *exact_) len += matrix_complexity(e);
  return len;
}

std::vector<double> apply_povm(const Povm& e, const ComplexMatrix& sigma) {
  if (sigma.rows() != e.dim()) fail(ErrorCode::dimension_mismatch, "apply_povm: dimensions differ");
  std::vector<double> p;
  p.reserve(e.size());
  for (const auto& ek : e.outcomes()) p.push_back(trace_product(ek, sigma).real());
  return p;
}

RationalMatrix rational_rotation(unsigned n_qubits) {
  RationalMatrix r(2, 2);
  r(0, 0).re = Rational(3, 5);
  r(0, 1).re = Rational(4, 5);
  r(1, 0).re = Rational(4, 5);
  r(1, 1).re = Rational(-3, 5);
  RationalMatrix out = RationalMatrix::identity(1);
  for (unsigned q = 0; q < n_qubits; ++q) out = tensor(out, r);
  return out;
}

RationalMatrix copy_unitary_exact(unsigned n_qubits) {
  const std::size_t d = std::size_t{1} << n_qubits;
  RationalMatrix u(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u(i * d + (j ^ i), i * d + j).re = 1;
  return u;
}

UnitaryTransform copy_unitary(unsigned n_qubits) {
  return UnitaryTransform(copy_unitary_exact(n_qubits).to_complex());
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ stream));
}

std::pair<double, double> normal_pair(std::mt19937_64& rng) {
  const double u1 = 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;  // (0, 1]
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * M_PI * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

PureState HaarSampler::sample(std::uint64_t index) const {
  auto rng = rng_stream(seed_, index);
  const std::size_t d = std::size_t{1} << n_;
  std::vector<Complex> v(d);
  double n2 = 0.0;
  for (auto& z : v) {
    const auto [a, b] = normal_pair(rng);
    z = {a, b};
    n2 += a * a + b * b;
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : v) z *= inv;
  return PureState(std::move(v));
}

RationalMatrix random_elementary_density(unsigned n_qubits, std::mt19937_64& rng) {
  const std::size_t d = std::size_t{1} << n_qubits;
  for (int attempt = 0; attempt < 100; ++attempt) {
    RationalMatrix g(d, d + 2);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d + 2; ++j) {
        g(i, j).re = static_cast<std::int64_t>(rng() % 5) - 2;
        g(i, j).im = static_cast<std::int64_t>(rng() % 5) - 2;
      }
    RationalMatrix rho = g * g.adjoint();
    const Rational tr = rho.trace().re;
    if (tr.is_zero()) continue;
    rho = rho.scaled(Rational(1, tr.num()));
    const auto eig = hermitian_eigen(rho.to_complex());
    if (eig.values.front() > 1e-5) return rho;
  }
  fail(ErrorCode::internal, "random_elementary_density: no invertible draw");
}

ComplexMatrix random_density(unsigned n_qubits, std::mt19937_64& rng) {
  const std::size_t d = std::size_t{1} << n_qubits;
  ComplexMatrix g(d, d);
  for (auto& z : g.entries()) {
    const auto [a, b] = normal_pair(rng);
    z = {a, b};
  }
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return hermitize(rho);
}

CloneOutput clone_pipeline(const PureState& psi, const UnitaryTransform& c) {
  const std::size_t d = psi.dim();
  if (c.dim() != d * d) fail(ErrorCode::dimension_mismatch, "clone_pipeline: C must act on 2n qubits");
  const PureState input = tensor(psi, PureState::basis(psi.qubits(), 0));
  const PureState out = c.apply(input);
  CloneOutput r;
  r.joint = out.projector();
  r.first = partial_trace(r.joint, d, d, Subsystem::second);
  r.second = partial_trace(r.joint, d, d, Subsystem::first);
  return r;
}

}  // namespace qgacs
