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
#include "qgacs/rational.hpp"
#include "support.hpp"

using namespace qgacs;
using qgacs::testing::Gen;

TEST_CASE("normalization") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, -5) == Rational(0));
  CHECK(Rational(0, 7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("arithmetic agrees with GMP") {
  Gen g(21);
  for (int it = 0; it < 2000; ++it) {
    const Rational a = g.rational(1000, 1000), b = g.rational(1000, 1000);
    const mpq_class x = a.to_mpq(), y = b.to_mpq();
    CHECK((a + b).to_mpq() == x + y);
    CHECK((a - b).to_mpq() == x - y);
    CHECK((a * b).to_mpq() == x * y);
    if (!b.is_zero()) CHECK((a / b).to_mpq() == x / y);
    CHECK(((a <=> b) < 0) == (x < y));
    CHECK(((a <=> b) == 0) == (x == y));
  }
}

TEST_CASE("overflow is reported") {
  const Rational big(std::int64_t{1} << 62);
  CHECK_THROWS_AS(big * big, Error);
  CHECK_THROWS_AS(big + big, Error);
  CHECK_THROWS_AS(Rational(1, std::int64_t{1} << 62) + Rational(1, (std::int64_t{1} << 62) - 1), Error);
}

TEST_CASE("to_string") {
  CHECK(Rational(3, 5).to_string() == "3/5");
  CHECK(Rational(-4).to_string() == "-4");
}

TEST_CASE("gaussian rationals") {
  Gen g(22);
  for (int it = 0; it < 500; ++it) {
    const GaussianRational a = g.gaussian(), b = g.gaussian();
    const Complex za = a.to_complex(), zb = b.to_complex();
    CHECK(std::abs((a * b).to_complex() - za * zb) < 1e-9);
    CHECK(std::abs((a + b).to_complex() - (za + zb)) < 1e-12);
    CHECK(a.norm().to_mpq() == a.re.to_mpq() * a.re.to_mpq() + a.im.to_mpq() * a.im.to_mpq());
    CHECK((a * a.conj()).im.is_zero());
  }
}

TEST_CASE("rational matrices") {
  Gen g(23);
  for (int it = 0; it < 50; ++it) {
    const RationalMatrix a = g.rational_matrix(4), b = g.rational_matrix(4);
    CHECK(max_abs_diff((a * b).to_complex(), a.to_complex() * b.to_complex()) < 1e-9);
    CHECK(max_abs_diff((a + b).to_complex(), a.to_complex() + b.to_complex()) < 1e-12);
    CHECK(max_abs_diff(a.adjoint().to_complex(), a.to_complex().adjoint()) == 0.0);
    CHECK(max_abs_diff(tensor(a, b).to_complex(), tensor(a.to_complex(), b.to_complex())) < 1e-9);
    CHECK(a.adjoint().adjoint() == a);
  }
  const RationalMatrix r = [] {
    RationalMatrix m(2, 2);
    m(0, 0).re = Rational(3, 5);
    m(0, 1).re = Rational(4, 5);
    m(1, 0).re = Rational(4, 5);
    m(1, 1).re = Rational(-3, 5);
    return m;
  }();
  CHECK(r * r.adjoint() == RationalMatrix::identity(2));
  CHECK(RationalMatrix::identity(3).trace().re == Rational(3));
}

TEST_CASE("exact norm") {
  const std::vector<GaussianRational> v = {{Rational(3, 5), Rational(0)}, {Rational(0), Rational(4, 5)}};
  CHECK(exact_norm_squared(v) == 1);
  const std::vector<GaussianRational> w = {{Rational(1, 2), Rational(1, 2)}};
  CHECK(exact_norm_squared(w) == mpq_class(1, 2));
}
