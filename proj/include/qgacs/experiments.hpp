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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace qgacs {

struct ExperimentParams {
  unsigned qubits = 2;
  unsigned budget = 30;
  /// 0 selects the experiment's own default.
  std::uint64_t samples = 0;
  std::uint64_t seed = 20260101;
  bool charge_transforms = true;
  unsigned generator_budget = 18;
  /// Random instances per check.
  unsigned instances = 50;
};

struct ConstantTerm {
  std::string name;
  double bits = 0.0;
};

struct ExperimentReport {
  std::string experiment_id;
  ExperimentParams params;
  /// False for data-only commands.
  bool has_verdict = true;
  bool passed = true;
  std::map<std::string, double> measured_constants;
  /// Itemized terms behind each measured constant.
  std::map<std::string, std::vector<ConstantTerm>> constant_ledger;
  nlohmann::json records = nlohmann::json::array();
  nlohmann::json monte_carlo = nlohmann::json::array();
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  /// Registers a constant as the sum of its terms.
  double add_constant(const std::string& name, std::vector<ConstantTerm> terms);
  /// Every ledger constant equals the sum of its terms.
  bool audit() const;
  void fail(const std::string& what);
  /// Asserts a <= b + 1e-9 and records a failure otherwise.
  bool check_le(double a, double b, const std::string& what);

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();
ExperimentReport run_experiment(const std::string& name, const ExperimentParams& params);

ExperimentReport exp_mu_build(const ExperimentParams& p);
ExperimentReport exp_entropy(const ExperimentParams& p);
ExperimentReport exp_deficiency(const ExperimentParams& p);
ExperimentReport exp_mutual_info(const ExperimentParams& p);
ExperimentReport exp_addition(const ExperimentParams& p);
ExperimentReport exp_conservation(const ExperimentParams& p);
ExperimentReport exp_selfinfo(const ExperimentParams& p);
ExperimentReport exp_povm(const ExperimentParams& p);
ExperimentReport exp_nocloning(const ExperimentParams& p);
ExperimentReport explore_conjectures(const ExperimentParams& p);

}  // namespace qgacs
