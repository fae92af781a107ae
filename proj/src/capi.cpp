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

#include "qgacs/qgacs.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "qgacs/error.hpp"
#include "qgacs/experiments.hpp"
#include "qgacs/info_lab.hpp"
#include "qgacs/io.hpp"
#include "qgacs/universal.hpp"

struct qg_mu {
  std::shared_ptr<const qgacs::UniversalMatrix> mu;
};

struct qg_matrix {
  qgacs::ComplexMatrix m;
  std::optional<qgacs::RationalMatrix> exact;
};

struct qg_report {
  qgacs::ExperimentReport report;
};

namespace {

thread_local std::string last_error;

qg_status to_status(qgacs::ErrorCode c) {
  switch (c) {
    case qgacs::ErrorCode::invalid_argument: return QG_ERR_INVALID_ARGUMENT;
    case qgacs::ErrorCode::dimension_mismatch: return QG_ERR_DIMENSION;
    case qgacs::ErrorCode::not_psd: return QG_ERR_NOT_PSD;
    case qgacs::ErrorCode::codec: return QG_ERR_CODEC;
    case qgacs::ErrorCode::io: return QG_ERR_IO;
    case qgacs::ErrorCode::internal: return QG_ERR_INTERNAL;
  }
  return QG_ERR_INTERNAL;
}

template <class F>
qg_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return QG_OK;
  } catch (const qgacs::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return QG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return QG_ERR_INTERNAL;
  }
}

qg_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return QG_ERR_NULL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void check_square(const qg_matrix* m, const qg_mu* mu, const char* what) {
  if (m->m.rows() != mu->mu->dim()) {
    qgacs::fail(qgacs::ErrorCode::dimension_mismatch,
                std::string(what) + " has dimension " + std::to_string(m->m.rows()) + ", mu has " +
                    std::to_string(mu->mu->dim()));
  }
}

}  // namespace

extern "C" {

const char* qg_last_error(void) { return last_error.c_str(); }

const char* qg_version(void) { return "0.1.0"; }

const char* qg_status_name(qg_status s) {
  switch (s) {
    case QG_OK: return "ok";
    case QG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QG_ERR_DIMENSION: return "dimension mismatch";
    case QG_ERR_NOT_PSD: return "not positive semidefinite";
    case QG_ERR_CODEC: return "codec error";
    case QG_ERR_IO: return "i/o error";
    case QG_ERR_INTERNAL: return "internal error";
    case QG_ERR_NULL: return "null argument";
  }
  return "unknown status";
}

void qg_string_free(char* s) { std::free(s); }

qg_status qg_mu_build(unsigned qubits, unsigned budget, qg_mu** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new qg_mu{qgacs::universal_matrix(qubits, budget)}; });
}

qg_status qg_mu_load(const char* path, qg_mu** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    auto j = nlohmann::json::parse(qgacs::read_text_file(path), nullptr, false);
    if (j.is_discarded()) qgacs::fail(qgacs::ErrorCode::io, std::string("'") + path + "' is not JSON");
    auto mu = std::make_shared<const qgacs::UniversalMatrix>(qgacs::mu_from_json(j));
    *out = new qg_mu{std::move(mu)};
  });
}

qg_status qg_mu_save(const qg_mu* mu, const char* path) {
  if (!mu) return null_arg("mu");
  if (!path) return null_arg("path");
  return guarded([&] { qgacs::write_text_file(path, qgacs::mu_to_json(*mu->mu).dump()); });
}

qg_status qg_mu_qubits(const qg_mu* mu, unsigned* out) {
  if (!mu || !out) return null_arg("mu/out");
  *out = mu->mu->qubits();
  return QG_OK;
}

qg_status qg_mu_budget(const qg_mu* mu, unsigned* out) {
  if (!mu || !out) return null_arg("mu/out");
  *out = mu->mu->budget();
  return QG_OK;
}

qg_status qg_mu_trace(const qg_mu* mu, double* out) {
  if (!mu || !out) return null_arg("mu/out");
  *out = mu->mu->trace();
  return QG_OK;
}

qg_status qg_mu_ledger_size(const qg_mu* mu, size_t* out) {
  if (!mu || !out) return null_arg("mu/out");
  *out = mu->mu->ledger().size();
  return QG_OK;
}

qg_status qg_mu_matrix(const qg_mu* mu, qg_matrix** out) {
  if (!mu || !out) return null_arg("mu/out");
  return guarded([&] { *out = new qg_matrix{mu->mu->matrix(), std::nullopt}; });
}

void qg_mu_free(qg_mu* mu) { delete mu; }

qg_status qg_matrix_create(size_t dim, const double* entries, qg_matrix** out) {
  if (!entries) return null_arg("entries");
  if (!out) return null_arg("out");
  return guarded([&] {
    if (dim == 0) qgacs::fail(qgacs::ErrorCode::invalid_argument, "dimension must be positive");
    qgacs::ComplexMatrix m(dim, dim);
    for (std::size_t k = 0; k < dim * dim; ++k) m.entries()[k] = {entries[2 * k], entries[2 * k + 1]};
    if (!m.all_finite()) qgacs::fail(qgacs::ErrorCode::invalid_argument, "matrix has non-finite entries");
    *out = new qg_matrix{std::move(m), std::nullopt};
  });
}

qg_status qg_matrix_maximally_mixed(unsigned qubits, qg_matrix** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    if (qubits < 1 || qubits > 10) qgacs::fail(qgacs::ErrorCode::invalid_argument, "qubits must be in [1, 10]");
    const std::size_t d = std::size_t{1} << qubits;
    auto exact = qgacs::RationalMatrix::identity(d).scaled(qgacs::Rational(1, static_cast<std::int64_t>(d)));
    *out = new qg_matrix{exact.to_complex(), exact};
  });
}

qg_status qg_matrix_load(const char* path, qg_matrix** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    auto j = nlohmann::json::parse(qgacs::read_text_file(path), nullptr, false);
    if (j.is_discarded()) qgacs::fail(qgacs::ErrorCode::io, std::string("'") + path + "' is not JSON");
    if (qgacs::is_exact_matrix_json(j)) {
      auto exact = qgacs::rational_matrix_from_json(j);
      *out = new qg_matrix{exact.to_complex(), exact};
    } else {
      *out = new qg_matrix{qgacs::matrix_from_json(j), std::nullopt};
    }
  });
}

qg_status qg_matrix_save(const qg_matrix* m, const char* path) {
  if (!m) return null_arg("m");
  if (!path) return null_arg("path");
  return guarded([&] {
    const auto j = m->exact ? qgacs::matrix_to_json(*m->exact) : qgacs::matrix_to_json(m->m);
    qgacs::write_text_file(path, j.dump());
  });
}

qg_status qg_matrix_dim(const qg_matrix* m, size_t* out) {
  if (!m || !out) return null_arg("m/out");
  *out = m->m.rows();
  return QG_OK;
}

qg_status qg_matrix_get(const qg_matrix* m, size_t i, size_t j, double* re, double* im) {
  if (!m || !re || !im) return null_arg("m/re/im");
  if (i >= m->m.rows() || j >= m->m.cols()) {
    last_error = "index out of range";
    return QG_ERR_INVALID_ARGUMENT;
  }
  *re = m->m(i, j).real();
  *im = m->m(i, j).imag();
  return QG_OK;
}

qg_status qg_matrix_is_exact(const qg_matrix* m, int* out) {
  if (!m || !out) return null_arg("m/out");
  *out = m->exact.has_value() ? 1 : 0;
  return QG_OK;
}

void qg_matrix_free(qg_matrix* m) { delete m; }

qg_status qg_entropy(const qg_matrix* sigma, const qg_mu* mu, int* is_infinite, int* value) {
  if (!sigma || !mu || !is_infinite || !value) return null_arg("sigma/mu/is_infinite/value");
  return guarded([&] {
    check_square(sigma, mu, "sigma");
    const qgacs::SemiDensityMatrix s(sigma->m);
    const auto h = qgacs::entropy(s, *mu->mu);
    *is_infinite = h.infinite ? 1 : 0;
    *value = h.infinite ? 0 : h.value;
  });
}

qg_status qg_deficiency(const qg_matrix* sigma, const qg_matrix* rho, const qg_mu* mu, unsigned generator_budget,
                        double* value, char** report_json) {
  if (!sigma || !rho || !mu || !value) return null_arg("sigma/rho/mu/value");
  return guarded([&] {
    check_square(sigma, mu, "sigma");
    check_square(rho, mu, "rho");
    qgacs::SemiDensityMatrix s(sigma->m);
    qgacs::SemiDensityMatrix r(rho->m);
    std::optional<std::size_t> len;
    if (rho->exact) len = qgacs::matrix_complexity(*rho->exact);
    qgacs::FamilyOptions o;
    o.generator_budget = generator_budget;
    const auto family = qgacs::default_test_family(r.matrix(), *mu->mu, len, o);
    const auto score = qgacs::deficiency(s.matrix(), family, report_json != nullptr);
    *value = score.value;
    if (report_json) *report_json = dup_string(qgacs::score_to_json(score).dump());
  });
}

qg_status qg_mutual_information(const qg_matrix* sigma, const qg_matrix* rho, const qg_mu* mu,
                                unsigned generator_budget, double* value, char** report_json) {
  if (!sigma || !rho || !mu || !value) return null_arg("sigma/rho/mu/value");
  return guarded([&] {
    check_square(sigma, mu, "sigma");
    check_square(rho, mu, "rho");
    qgacs::SemiDensityMatrix s(sigma->m);
    qgacs::SemiDensityMatrix r(rho->m);
    qgacs::ProductOptions o;
    o.generator_budget = generator_budget;
    const auto family = qgacs::product_test_family(*mu->mu, o);
    const auto score = qgacs::mutual_information(s.matrix(), r.matrix(), family, report_json != nullptr);
    *value = score.value;
    if (report_json) *report_json = dup_string(qgacs::score_to_json(score).dump());
  });
}

void qg_params_default(qg_params* p) {
  if (!p) return;
  const qgacs::ExperimentParams d;
  p->qubits = d.qubits;
  p->budget = d.budget;
  p->samples = d.samples;
  p->seed = d.seed;
  p->charge_transforms = d.charge_transforms ? 1 : 0;
  p->generator_budget = d.generator_budget;
  p->instances = d.instances;
}

const char* qg_experiment_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : qgacs::experiment_names()) s += n + "\n";
    return s;
  }();
  return names.c_str();
}

qg_status qg_experiment_run(const char* name, const qg_params* params, qg_report** out) {
  if (!name || !params || !out) return null_arg("name/params/out");
  return guarded([&] {
    qgacs::ExperimentParams p;
    p.qubits = params->qubits;
    p.budget = params->budget;
    p.samples = params->samples;
    p.seed = params->seed;
    p.charge_transforms = params->charge_transforms != 0;
    p.generator_budget = params->generator_budget;
    p.instances = params->instances;
    if (p.budget > 40) qgacs::fail(qgacs::ErrorCode::invalid_argument, "budget must be at most 40");
    if (p.generator_budget > p.budget) qgacs::fail(qgacs::ErrorCode::invalid_argument, "generator budget exceeds budget");
    *out = new qg_report{qgacs::run_experiment(name, p)};
  });
}

qg_status qg_report_verdict(const qg_report* r, int* has_verdict, int* passed) {
  if (!r || !has_verdict || !passed) return null_arg("r/has_verdict/passed");
  *has_verdict = r->report.has_verdict ? 1 : 0;
  *passed = r->report.passed ? 1 : 0;
  return QG_OK;
}

qg_status qg_report_json(const qg_report* r, char** out) {
  if (!r || !out) return null_arg("r/out");
  return guarded([&] { *out = dup_string(r->report.to_json().dump(2)); });
}

qg_status qg_report_csv(const qg_report* r, char** out) {
  if (!r || !out) return null_arg("r/out");
  return guarded([&] { *out = dup_string(r->report.to_csv()); });
}

void qg_report_free(qg_report* r) { delete r; }

}  // extern "C"
