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

#include <cstdio>
#include <cstring>

#include "qgacs/error.hpp"
#include "qgacs/io.hpp"
#include "support.hpp"

using namespace qgacs;
using qgacs::testing::Gen;

TEST_CASE("double matrix round trip is bit exact") {
  Gen g(71);
  for (int it = 0; it < 50; ++it) {
    const auto d = static_cast<std::size_t>(1 + g.integer(0, 7));
    const ComplexMatrix m = g.matrix(d, d);
    const auto j = matrix_to_json(m);
    CHECK(j.at("dim") == m.rows());
    CHECK_FALSE(is_exact_matrix_json(j));
    const ComplexMatrix back = matrix_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back == m);
  }
}

TEST_CASE("exact matrix round trip") {
  Gen g(72);
  for (int it = 0; it < 50; ++it) {
    const RationalMatrix m = g.rational_matrix(static_cast<std::size_t>(1 + g.integer(0, 7)));
    const auto j = matrix_to_json(m);
    CHECK(is_exact_matrix_json(j));
    CHECK(rational_matrix_from_json(nlohmann::json::parse(j.dump())) == m);
    CHECK(max_abs_diff(matrix_from_json(j), m.to_complex()) == 0.0);
  }
}

TEST_CASE("malformed matrices are rejected") {
  using nlohmann::json;
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"dim":2,"rows":[[[1,0]]]})")), Error);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"dim":1,"rows":[[[1]]]})")), Error);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":[[[1,0]]]})")), Error);
  CHECK_THROWS_AS(rational_matrix_from_json(json::parse(R"({"dim":1,"rows":[[[1,0,0,1]]]})")), Error);
  CHECK(max_abs_diff(matrix_from_json(json::parse(R"({"dim":1,"rows":[[[1,2,0,1]]]})")),
                     ComplexMatrix::identity(1) * Complex(0.5)) == 0.0);
}

TEST_CASE("mu file reloads bit exactly") {
  for (auto [n, b] : {std::pair{1u, 20u}, std::pair{2u, 24u}, std::pair{3u, 20u}}) {
    CAPTURE(n);
    const auto mu = universal_matrix(n, b);
    const auto j = nlohmann::json::parse(mu_to_json(*mu).dump());
    const UniversalMatrix back = mu_from_json(j);
    CHECK(back.qubits() == n);
    CHECK(back.budget() == b);
    CHECK(back.matrix() == mu->matrix());
    REQUIRE(back.ledger().size() == mu->ledger().size());
    for (std::size_t k = 0; k < back.ledger().size(); ++k) CHECK(back.ledger()[k].code == mu->ledger()[k].code);
  }
}

TEST_CASE("tampered mu files are rejected") {
  const auto mu = universal_matrix(1, 16);
  const auto good = mu_to_json(*mu);

  auto j = good;
  j["ledger"].erase(j["ledger"].begin());
  CHECK_THROWS_AS(mu_from_json(j), Error);

  j = good;
  auto& m = j["matrix"]["rows"][0][0][0];
  m = m.get<double>() + 1e-15;
  CHECK_THROWS_AS(mu_from_json(j), Error);

  j = good;
  j["ledger"][1]["entries"][0][1] = 7;
  CHECK_THROWS_AS(mu_from_json(j), Error);

  j = good;
  j["budget"] = 20;
  CHECK_THROWS_AS(mu_from_json(j), Error);

  j = good;
  j["format"] = "other";
  CHECK_THROWS_AS(mu_from_json(j), Error);
}

TEST_CASE("files") {
  const std::string path = "test_io_tmp.json";
  write_text_file(path, "{\"x\":1}\n");
  CHECK(read_text_file(path) == "{\"x\":1}\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("does/not/exist.json"), Error);
}
