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

// Command-line front end. Links only the C interface.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgacs/qgacs.h"

namespace {

using json = nlohmann::json;

struct CliError {
  int exit_code;
  std::string message;
};

void check(qg_status s) {
  if (s != QG_OK) throw CliError{2, std::string(qg_status_name(s)) + ": " + qg_last_error()};
}

struct MuDeleter {
  void operator()(qg_mu* p) const { qg_mu_free(p); }
};
struct MatrixDeleter {
  void operator()(qg_matrix* p) const { qg_matrix_free(p); }
};
struct ReportDeleter {
  void operator()(qg_report* p) const { qg_report_free(p); }
};
using MuPtr = std::unique_ptr<qg_mu, MuDeleter>;
using MatrixPtr = std::unique_ptr<qg_matrix, MatrixDeleter>;
using ReportPtr = std::unique_ptr<qg_report, ReportDeleter>;

std::string take(char* s) {
  std::string out(s ? s : "");
  qg_string_free(s);
  return out;
}

MatrixPtr load_matrix(const std::string& path) {
  qg_matrix* m = nullptr;
  check(qg_matrix_load(path.c_str(), &m));
  return MatrixPtr(m);
}

unsigned qubits_of(const qg_matrix* m) {
  std::size_t d = 0;
  check(qg_matrix_dim(m, &d));
  unsigned n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  if ((std::size_t{1} << n) != d) throw CliError{2, "matrix dimension " + std::to_string(d) + " is not a power of two"};
  return n;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    FILE* f = std::fopen(out.c_str(), "wb");
    if (!f) throw CliError{2, "cannot write '" + out + "'"};
    const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
    if (std::fclose(f) != 0 || !ok) throw CliError{2, "write to '" + out + "' failed"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qgacs: budgeted quantum algorithmic information lab"};
  app.require_subcommand(1);
  CLI::App* mu = app.add_subcommand("mu", "universal semi-density matrix and experiments");

  std::string command;
  qg_params params;
  qg_params_default(&params);
  std::string charge = "true";
  std::string out;
  std::string format = "json";
  std::string sigma_path, rho_path, mu_path;

  const std::vector<std::string> commands = {"build",    "entropy",      "deficiency", "mutual-info",
                                             "addition", "conservation", "selfinfo",   "povm",
                                             "no-cloning", "explore-conjectures"};
  mu->add_option("command", command, "build | entropy | deficiency | mutual-info | addition | conservation | "
                                     "selfinfo | povm | no-cloning | explore-conjectures")
      ->required()
      ->check(CLI::IsMember(commands));
  mu->add_option("--qubits", params.qubits, "qubits per system")->check(CLI::Range(1u, 6u));
  mu->add_option("--budget", params.budget, "code-length budget in bits")->check(CLI::Range(1u, 40u));
  mu->add_option("--samples", params.samples, "Monte Carlo samples (0: experiment default)");
  mu->add_option("--seed", params.seed, "random seed");
  mu->add_option("--charge-transforms", charge, "charge transform description lengths")
      ->check(CLI::IsMember({"true", "false"}));
  auto* gen_opt =
      mu->add_option("--generator-budget", params.generator_budget, "ledger code length that generates tests");
  mu->add_option("--instances", params.instances, "random instances per check");
  mu->add_option("--out", out, "output file (mu file for build, report otherwise)");
  mu->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  mu->add_option("--sigma", sigma_path, "matrix file to score");
  mu->add_option("--rho", rho_path, "reference matrix file");
  mu->add_option("--mu", mu_path, "saved mu file to use instead of building one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  params.charge_transforms = charge == "true" ? 1 : 0;
  if (gen_opt->count() == 0) params.generator_budget = std::min(params.generator_budget, params.budget);

  try {
    if (command == "build") {
      MuPtr m;
      {
        qg_mu* raw = nullptr;
        check(qg_mu_build(params.qubits, params.budget, &raw));
        m.reset(raw);
      }
      if (!out.empty()) check(qg_mu_save(m.get(), out.c_str()));
      qg_report* raw = nullptr;
      check(qg_experiment_run("build", &params, &raw));
      ReportPtr report(raw);
      char* text = nullptr;
      check(format == "csv" ? qg_report_csv(report.get(), &text) : qg_report_json(report.get(), &text));
      emit(take(text), "");
      int has_verdict = 0, passed = 0;
      check(qg_report_verdict(report.get(), &has_verdict, &passed));
      return passed ? 0 : 1;
    }

    const bool direct = !sigma_path.empty() &&
                        (command == "entropy" || command == "deficiency" || command == "mutual-info");
    if (direct) {
      MatrixPtr sigma = load_matrix(sigma_path);
      MuPtr m;
      qg_mu* raw = nullptr;
      if (!mu_path.empty()) {
        check(qg_mu_load(mu_path.c_str(), &raw));
      } else {
        check(qg_mu_build(qubits_of(sigma.get()), params.budget, &raw));
      }
      m.reset(raw);
      json result;
      if (command == "entropy") {
        int inf = 0, value = 0;
        check(qg_entropy(sigma.get(), m.get(), &inf, &value));
        result = {{"entropy", inf ? json("inf") : json(value)}};
      } else {
        if (rho_path.empty()) throw CliError{2, "--rho is required with --sigma for " + command};
        MatrixPtr rho = load_matrix(rho_path);
        double value = 0.0;
        char* report = nullptr;
        if (command == "deficiency") {
          check(qg_deficiency(sigma.get(), rho.get(), m.get(), params.generator_budget, &value, &report));
        } else {
          check(qg_mutual_information(sigma.get(), rho.get(), m.get(), params.generator_budget, &value, &report));
        }
        result = json::parse(take(report));
      }
      unsigned b = 0;
      check(qg_mu_budget(m.get(), &b));
      result["budget"] = b;
      if (format == "csv") {
        std::string csv = "quantity,value,budget\n" + command + "," +
                          (result.contains("entropy") ? result["entropy"].dump() : result["score"].dump()) + "," +
                          std::to_string(b) + "\n";
        emit(csv, out);
      } else {
        emit(result.dump(2), out);
      }
      return 0;
    }

    qg_report* raw = nullptr;
    check(qg_experiment_run(command.c_str(), &params, &raw));
    ReportPtr report(raw);
    char* text = nullptr;
    check(format == "csv" ? qg_report_csv(report.get(), &text) : qg_report_json(report.get(), &text));
    emit(take(text), out);
    int has_verdict = 0, passed = 0;
    check(qg_report_verdict(report.get(), &has_verdict, &passed));
    if (!out.empty()) {
      std::cerr << "qgacs: " << command << ": " << (has_verdict ? (passed ? "pass" : "fail") : "data") << '\n';
    }
    return (!has_verdict || passed) ? 0 : 1;
  } catch (const CliError& e) {
    std::cerr << "qgacs: " << e.message << '\n';
    return e.exit_code;
  }
}
