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
#include "qgacs/experiments.hpp"

using namespace qgacs;

namespace {

ExperimentParams small(unsigned n) {
  ExperimentParams p;
  p.qubits = n;
  p.budget = 20;
  p.generator_budget = 14;
  p.instances = 5;
  p.samples = 200;
  return p;
}

}  // namespace

TEST_CASE("every experiment is registered") {
  const auto& names = experiment_names();
  CHECK(names.size() == 10);
  CHECK_THROWS_AS(run_experiment("nope", small(1)), Error);
}

TEST_CASE("small runs pass, audit and repeat") {
  for (const auto& name : experiment_names()) {
    if (name == "no-cloning" || name == "explore-conjectures") continue;
    CAPTURE(name);
    const ExperimentReport a = run_experiment(name, small(1));
    CHECK(a.passed);
    CHECK(a.audit());
    CHECK(a.failures.empty());
    const ExperimentReport b = run_experiment(name, small(1));
    CHECK(a.to_json() == b.to_json());
    CHECK(a.to_csv() == b.to_csv());
  }
}

TEST_CASE("conjecture exploration is data only") {
  const ExperimentReport r = run_experiment("explore-conjectures", small(1));
  CHECK_FALSE(r.has_verdict);
  CHECK(r.to_json().at("verdict") == "data");
}

TEST_CASE("seed changes the sampled data") {
  ExperimentParams p = small(1);
  const auto a = run_experiment("entropy", p).to_json();
  p.seed += 1;
  const auto b = run_experiment("entropy", p).to_json();
  CHECK(a.at("monte_carlo") != b.at("monte_carlo"));
}

TEST_CASE("charged and free constants are both reported") {
  ExperimentParams p = small(1);
  const auto charged = run_experiment("conservation", p);
  p.charge_transforms = false;
  const auto free = run_experiment("conservation", p);
  CHECK(charged.passed);
  CHECK(free.passed);
  for (const auto& [k, v] : free.measured_constants) {
    auto it = charged.measured_constants.find(k);
    if (it != charged.measured_constants.end()) CHECK(v <= it->second);
  }
}

TEST_CASE("report checks") {
  ExperimentReport r;
  CHECK(r.check_le(1.0, 1.0, "eq"));
  CHECK(r.passed);
  CHECK_FALSE(r.check_le(2.0, 1.0, "gt"));
  CHECK_FALSE(r.passed);
  CHECK(r.failures.size() == 1);
  r.add_constant("c", {{"a", 1.0}, {"b", 2.5}});
  CHECK(r.measured_constants.at("c") == 3.5);
  CHECK(r.audit());
  r.measured_constants["c"] = 4.0;
  CHECK_FALSE(r.audit());
}
