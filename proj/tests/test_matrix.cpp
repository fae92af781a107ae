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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgacs/error.hpp"
#include "qgacs/matrix.hpp"
#include "support.hpp"

using namespace qgacs;
using qgacs::testing::Gen;
namespace oracle = qgacs::testing::oracle;

namespace {

ComplexMatrix counting_matrix() {
  ComplexMatrix a(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = static_cast<double>(4 * i + j + 1);
  return a;
}

ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Complex> e;
  std::size_t r = 0, c = 0;
  for (const auto& row : rows) {
    c = row.size();
    for (double x : row) e.emplace_back(x, 0.0);
    ++r;
  }
  return ComplexMatrix(r, c, e);
}

}  // namespace

TEST_CASE("tensor of basis states and identities") {
  const ComplexMatrix k0 = real_matrix({{1}, {0}});
  const ComplexMatrix k1 = real_matrix({{0}, {1}});
  const ComplexMatrix v = tensor(k0, k1);
  CHECK(v.rows() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(v(i, 0) == Complex(i == 1 ? 1.0 : 0.0));
  CHECK(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
}

TEST_CASE("tensor agrees with the index-formula product") {
  Gen g(11);
  for (int it = 0; it < 50; ++it) {
    const std::size_t r1 = 1 + g.natural(3), c1 = 1 + g.natural(3), r2 = 1 + g.natural(3), c2 = 1 + g.natural(3);
    const ComplexMatrix a = g.matrix(r1, c1), b = g.matrix(r2, c2);
    CHECK(max_abs_diff(tensor(a, b), oracle::kron(a, b)) < 1e-15);
  }
}

TEST_CASE("trace is multiplicative over tensor products") {
  Gen g(12);
  for (int it = 0; it < 100; ++it) {
    const ComplexMatrix a = g.matrix(2, 2), b = g.matrix(2, 2);
    CHECK(std::abs(tensor(a, b).trace() - a.trace() * b.trace()) < 1e-12);
  }
}

TEST_CASE("partial trace") {
  Gen g(13);
  SUBCASE("product states factor") {
    for (int it = 0; it < 50; ++it) {
      const ComplexMatrix s = g.density(2), r = g.psd(4);
      const ComplexMatrix out = partial_trace(tensor(s, r), 2, 4, Subsystem::second);
      CHECK(max_abs_diff(out, s * r.trace()) < 1e-12);
      const ComplexMatrix out2 = partial_trace(tensor(s, r), 4, 2, Subsystem::first);
      CHECK(max_abs_diff(out2, r * s.trace()) < 1e-12);
    }
  }
  SUBCASE("Bell state reduces to I/2") {
    std::vector<Complex> phi(4);
    phi[0] = phi[3] = 1.0 / std::sqrt(2.0);
    const ComplexMatrix out = partial_trace(ComplexMatrix::outer(phi), 2, 2, Subsystem::second);
    CHECK(max_abs_diff(out, ComplexMatrix::identity(2) * Complex(0.5)) < 1e-15);
  }
  SUBCASE("identity") {
    CHECK(partial_trace(ComplexMatrix::identity(4), 2, 2, Subsystem::second) == ComplexMatrix::identity(2) * Complex(2.0));
  }
  SUBCASE("matches the sandwich formula on random inputs") {
    for (int it = 0; it < 30; ++it) {
      const std::size_t k = std::size_t{1} << (1 + g.natural(2)), t = std::size_t{1} << (1 + g.natural(2));
      const ComplexMatrix m = g.matrix(k * t, k * t);
      CHECK(max_abs_diff(partial_trace(m, k, t, Subsystem::second), oracle::partial_trace(m, k, t, true)) < 1e-12);
      CHECK(max_abs_diff(partial_trace(m, k, t, Subsystem::first), oracle::partial_trace(m, k, t, false)) < 1e-12);
    }
  }
  SUBCASE("adjunction Tr (t x I) s = Tr t Tr_2 s") {
    for (int it = 0; it < 30; ++it) {
      const ComplexMatrix t = g.hermitian(4), s = g.density(16);
      const double lhs = trace_product(tensor(t, ComplexMatrix::identity(4)), s).real();
      const double rhs = trace_product(t, partial_trace(s, 4, 4, Subsystem::second)).real();
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("blocks of the worked 4x4 example") {
  const ComplexMatrix a = counting_matrix();
  CHECK(block(a, 1, 1, 2) == real_matrix({{1, 2}, {5, 6}}));
  CHECK(block(a, 1, 2, 2) == real_matrix({{3, 4}, {7, 8}}));
  CHECK(block(a, 2, 1, 2) == real_matrix({{9, 10}, {13, 14}}));
  CHECK(block(a, 2, 2, 2) == real_matrix({{11, 12}, {15, 16}}));
  CHECK(block(ComplexMatrix::identity(4), 1, 2, 2) == ComplexMatrix(2, 2));
  CHECK_THROWS_AS(block(a, 0, 1, 2), Error);
  CHECK_THROWS_AS(block(a, 3, 1, 2), Error);
}

TEST_CASE("M reduction") {
  const ComplexMatrix a = counting_matrix();
  CHECK(m_reduce(a, ComplexMatrix::identity(2), 2) == real_matrix({{7, 11}, {23, 27}}));
  CHECK(m_reduce(a, real_matrix({{1, 0}, {0, 0}}), 2) == real_matrix({{1, 3}, {9, 11}}));

  Gen g(14);
  for (std::size_t n : {2, 4, 8}) {
    CAPTURE(n);
    for (int it = 0; it < 100; ++it) {
      const ComplexMatrix A = g.psd(n * n), B = g.psd(n), C = g.psd(n);
      const Complex lhs = trace_product(A, tensor(C, B));
      const Complex rhs = trace_product(m_reduce(A, B, n), C);
      CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
      if (it < 5) CHECK(max_abs_diff(m_reduce(A, B, n), oracle::m_matrix(A, B, n)) < 1e-9);
    }
  }
}

TEST_CASE("M reduction is monotone in A") {
  Gen g(15);
  for (int it = 0; it < 30; ++it) {
    const ComplexMatrix c = g.psd(4), extra = g.psd(4), e = g.psd(2);
    const ComplexMatrix gap = m_reduce(c + extra, e, 2) - m_reduce(c, e, 2);
    CHECK(validate_psd(hermitize(gap), 1e-9).min_eig > -1e-9);
  }
}

TEST_CASE("validate_psd") {
  CHECK(validate_psd(ComplexMatrix::identity(2)).is_psd);
  CHECK(validate_psd(ComplexMatrix::identity(2)).min_eig == doctest::Approx(1.0));
  const auto neg = validate_psd(real_matrix({{1, 0}, {0, -0.5}}));
  CHECK_FALSE(neg.is_psd);
  CHECK(neg.min_eig == doctest::Approx(-0.5));
  const auto proj = validate_psd(real_matrix({{1, 0}, {0, 0}}));
  CHECK(proj.is_psd);
  CHECK(std::abs(proj.min_eig) < 1e-15);
  CHECK_THROWS_AS(validate_psd(real_matrix({{1, 1}, {0, 1}})), Error);
}

TEST_CASE("Jacobi eigensolver") {
  Gen g(16);
  for (std::size_t d : {2, 3, 4, 8, 16, 64}) {
    CAPTURE(d);
    const ComplexMatrix h = g.hermitian(d);
    const auto eig = hermitian_eigen(h);
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
    CHECK(is_unitary(eig.vectors, 1e-9));
    // H v = lambda v column by column.
    double worst = 0.0;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) {
        Complex hv{};
        for (std::size_t j = 0; j < d; ++j) hv += h(i, j) * eig.vectors(j, k);
        worst = std::max(worst, std::abs(hv - eig.values[k] * eig.vectors(i, k)));
      }
    CHECK(worst < 1e-9);
    double tr = 0.0;
    for (double v : eig.values) tr += v;
    CHECK(std::abs(tr - h.trace().real()) < 1e-9);
    if (d == 2) CHECK(std::abs(eig.values[0] - oracle::min_eigenvalue_2x2(h)) < 1e-12);
  }
}

TEST_CASE("spectral functions") {
  Gen g(17);
  for (int it = 0; it < 20; ++it) {
    const ComplexMatrix p = g.psd(4) + ComplexMatrix::identity(4) * Complex(0.1);
    const ComplexMatrix w = inverse_sqrt(p);
    CHECK(max_abs_diff(w * p * w, ComplexMatrix::identity(4)) < 1e-9);
  }
}

TEST_CASE("domination exponents") {
  Gen g(18);
  for (int it = 0; it < 30; ++it) {
    const ComplexMatrix y = g.psd(4) + ComplexMatrix::identity(4) * Complex(0.05);
    const ComplexMatrix x = g.psd(4);
    const double c = domination_exponent(x, y);
    const double lo = lower_domination_exponent(x, y);
    CHECK(lo <= c + 1e-12);
    const int bits = domination_bits(x, y);
    // 2^bits y - x is PSD, 2^(bits-1) y - x is not.
    CHECK(validate_psd(hermitize(y * Complex(std::ldexp(1.0, bits)) - x), 1e-9).min_eig > -1e-9);
    CHECK(validate_psd(hermitize(y * Complex(std::ldexp(1.0, bits - 1)) - x), 1e-9).min_eig < 0.0);
    // Scaling x by 2 moves the exponent by one.
    CHECK(std::abs(domination_exponent(x * Complex(2.0), y) - c - 1.0) < 1e-9);
  }
  CHECK(domination_bits(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == 0);
  CHECK(ceil_bits(3.0 + 1e-12) == 3);
  CHECK(ceil_bits(3.1) == 4);
}

TEST_CASE("conjugation and cyclic trace") {
  Gen g(19);
  const ComplexMatrix cnot = real_matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  CHECK(is_unitary(cnot));
  for (int it = 0; it < 50; ++it) {
    const ComplexMatrix nu = g.psd(4), rho = g.density(4);
    const double a = trace_product(conjugate(cnot, nu), rho).real();
    const double b = trace_product(nu, conjugate(cnot.adjoint(), rho)).real();
    CHECK(std::abs(a - b) < 1e-10);
  }
}

TEST_CASE("semi-density validation") {
  CHECK_NOTHROW(SemiDensityMatrix(ComplexMatrix::identity(2) * Complex(0.5)));
  CHECK_THROWS_AS(SemiDensityMatrix(ComplexMatrix::identity(2)), Error);
  CHECK_THROWS_AS(SemiDensityMatrix(real_matrix({{0.5, 0}, {0, -0.1}})), Error);
  CHECK_THROWS_AS(SemiDensityMatrix(real_matrix({{0.5, 0.1}, {0, 0.2}})), Error);
  const auto mm = SemiDensityMatrix::maximally_mixed(3);
  CHECK(mm.dim() == 8);
  CHECK(mm.trace() == doctest::Approx(1.0));
  CHECK(SemiDensityMatrix::zero(4).trace() == 0.0);
}

TEST_CASE("pure states and unitaries") {
  CHECK_THROWS_AS(PureState({1.0, 1.0}), Error);
  const PureState b = PureState::basis(2, 3);
  CHECK(b[3] == Complex(1.0));
  CHECK(b.projector().trace() == Complex(1.0));
  const PureState t = tensor(PureState::basis(1, 0), PureState::basis(1, 1));
  CHECK(t[1] == Complex(1.0));
  CHECK_THROWS_AS(UnitaryTransform(real_matrix({{1, 1}, {0, 1}})), Error);
  Gen g(20);
  const UnitaryTransform u(hermitian_eigen(g.hermitian(4)).vectors);
  const PureState psi(g.unit_vector(4));
  const PureState out = u.apply(psi);
  double n = 0.0;
  for (auto z : out.amplitudes()) n += std::norm(z);
  CHECK(std::abs(n - 1.0) < 1e-12);
  const auto s = u.apply(psi.density());
  CHECK(max_abs_diff(s.matrix(), out.projector()) < 1e-12);
}

TEST_CASE("qubit count") {
  CHECK(qubit_count(8) == 3);
  CHECK_THROWS_AS(qubit_count(6), Error);
}
