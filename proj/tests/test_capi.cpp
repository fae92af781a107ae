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

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "qgacs/qgacs.h"

TEST_CASE("status names and version") {
  CHECK(std::string(qg_status_name(QG_OK)) == "ok");
  CHECK(std::string(qg_version()).size() > 0);
  CHECK(std::string(qg_status_name(static_cast<qg_status>(99))) == "unknown status");
}

TEST_CASE("null arguments") {
  qg_mu* mu = nullptr;
  CHECK(qg_mu_build(1, 16, nullptr) == QG_ERR_NULL);
  CHECK(std::string(qg_last_error()).size() > 0);
  CHECK(qg_mu_trace(nullptr, nullptr) == QG_ERR_NULL);
  CHECK(qg_matrix_create(2, nullptr, nullptr) == QG_ERR_NULL);
  CHECK(qg_mu_load(nullptr, &mu) == QG_ERR_NULL);
  qg_mu_free(nullptr);
  qg_matrix_free(nullptr);
  qg_report_free(nullptr);
  qg_string_free(nullptr);
}

TEST_CASE("mu handle") {
  qg_mu* mu = nullptr;
  CHECK(qg_mu_build(0, 16, &mu) == QG_ERR_INVALID_ARGUMENT);
  REQUIRE(qg_mu_build(2, 20, &mu) == QG_OK);
  unsigned n = 0, b = 0;
  double tr = 0.0;
  size_t size = 0;
  CHECK(qg_mu_qubits(mu, &n) == QG_OK);
  CHECK(qg_mu_budget(mu, &b) == QG_OK);
  CHECK(qg_mu_trace(mu, &tr) == QG_OK);
  CHECK(qg_mu_ledger_size(mu, &size) == QG_OK);
  CHECK(n == 2);
  CHECK(b == 20);
  CHECK(tr > 0.0);
  CHECK(tr <= 1.0);
  CHECK(size > 0);

  const char* path = "test_capi_mu.json";
  REQUIRE(qg_mu_save(mu, path) == QG_OK);
  qg_mu* back = nullptr;
  REQUIRE(qg_mu_load(path, &back) == QG_OK);
  qg_matrix *a = nullptr, *c = nullptr;
  REQUIRE(qg_mu_matrix(mu, &a) == QG_OK);
  REQUIRE(qg_mu_matrix(back, &c) == QG_OK);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      double ar, ai, cr, ci;
      qg_matrix_get(a, i, j, &ar, &ai);
      qg_matrix_get(c, i, j, &cr, &ci);
      CHECK(ar == cr);
      CHECK(ai == ci);
    }
  double re, im;
  CHECK(qg_matrix_get(a, 4, 0, &re, &im) == QG_ERR_INVALID_ARGUMENT);
  qg_matrix_free(a);
  qg_matrix_free(c);
  qg_mu_free(back);
  std::remove(path);
  CHECK(qg_mu_load("missing.json", &back) == QG_ERR_IO);
  qg_mu_free(mu);
}

TEST_CASE("scores") {
  qg_mu* mu = nullptr;
  REQUIRE(qg_mu_build(1, 20, &mu) == QG_OK);
  const std::vector<double> zero{1, 0, 0, 0, 0, 0, 0, 0};
  qg_matrix* z = nullptr;
  REQUIRE(qg_matrix_create(2, zero.data(), &z) == QG_OK);
  int inf = 1, h = -1;
  REQUIRE(qg_entropy(z, mu, &inf, &h) == QG_OK);
  CHECK(inf == 0);
  CHECK(h >= 0);

  const std::vector<double> nan_entries{NAN, 0, 0, 0, 0, 0, 0, 0};
  qg_matrix* bad = nullptr;
  CHECK(qg_matrix_create(2, nan_entries.data(), &bad) == QG_ERR_INVALID_ARGUMENT);
  const std::vector<double> neg{-1, 0, 0, 0, 0, 0, 0, 0};
  REQUIRE(qg_matrix_create(2, neg.data(), &bad) == QG_OK);
  CHECK(qg_entropy(bad, mu, &inf, &h) == QG_ERR_NOT_PSD);
  qg_matrix_free(bad);

  qg_matrix* mixed = nullptr;
  REQUIRE(qg_matrix_maximally_mixed(1, &mixed) == QG_OK);
  double d = 0.0;
  char* report = nullptr;
  REQUIRE(qg_deficiency(z, mixed, mu, 0, &d, &report) == QG_OK);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"family_id\"") != std::string::npos);
  qg_string_free(report);
  CHECK(std::isfinite(d));

  double i = 0.0;
  REQUIRE(qg_mutual_information(z, z, mu, 0, &i, nullptr) == QG_OK);
  double i2 = 0.0;
  qg_matrix* big = nullptr;
  REQUIRE(qg_matrix_maximally_mixed(2, &big) == QG_OK);
  CHECK(qg_mutual_information(z, big, mu, 0, &i2, nullptr) == QG_ERR_DIMENSION);
  qg_matrix_free(big);
  qg_matrix_free(mixed);
  qg_matrix_free(z);
  qg_mu_free(mu);
}

TEST_CASE("experiments") {
  CHECK(std::string(qg_experiment_names()).find("no-cloning") != std::string::npos);
  qg_params p;
  qg_params_default(&p);
  CHECK(p.qubits == 2);
  p.qubits = 1;
  p.budget = 20;
  p.generator_budget = 14;
  p.instances = 3;
  qg_report* r = nullptr;
  CHECK(qg_experiment_run("nope", &p, &r) == QG_ERR_INVALID_ARGUMENT);
  p.budget = 41;
  CHECK(qg_experiment_run("build", &p, &r) == QG_ERR_INVALID_ARGUMENT);
  p.budget = 20;
  REQUIRE(qg_experiment_run("build", &p, &r) == QG_OK);
  int has = 0, passed = 0;
  CHECK(qg_report_verdict(r, &has, &passed) == QG_OK);
  CHECK(has == 1);
  CHECK(passed == 1);
  char* json = nullptr;
  char* csv = nullptr;
  REQUIRE(qg_report_json(r, &json) == QG_OK);
  REQUIRE(qg_report_csv(r, &csv) == QG_OK);
  CHECK(std::string(json).find("\"verdict\"") != std::string::npos);
  CHECK(std::strlen(csv) > 0);
  qg_string_free(json);
  qg_string_free(csv);
  qg_report_free(r);
}
