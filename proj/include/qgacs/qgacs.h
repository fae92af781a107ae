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

#ifndef QGACS_QGACS_H_
#define QGACS_QGACS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(QGACS_BUILDING_LIBRARY)
#define QG_API __attribute__((visibility("default")))
#else
#define QG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  QG_OK = 0,
  QG_ERR_INVALID_ARGUMENT = 1,
  QG_ERR_DIMENSION = 2,
  QG_ERR_NOT_PSD = 3,
  QG_ERR_CODEC = 4,
  QG_ERR_IO = 5,
  QG_ERR_INTERNAL = 6,
  QG_ERR_NULL = 7
} qg_status;

typedef struct qg_mu qg_mu;
typedef struct qg_matrix qg_matrix;
typedef struct qg_report qg_report;

typedef struct {
  unsigned qubits;
  unsigned budget;
  uint64_t samples; /* 0: experiment default */
  uint64_t seed;
  int charge_transforms;
  unsigned generator_budget;
  unsigned instances;
} qg_params;

/* Message of the last failing call on this thread; never NULL. */
QG_API const char* qg_last_error(void);
QG_API const char* qg_version(void);
QG_API const char* qg_status_name(qg_status s);

/* Strings returned through char** are owned by the caller. */
QG_API void qg_string_free(char* s);

QG_API qg_status qg_mu_build(unsigned qubits, unsigned budget, qg_mu** out);
QG_API qg_status qg_mu_load(const char* path, qg_mu** out);
QG_API qg_status qg_mu_save(const qg_mu* mu, const char* path);
QG_API qg_status qg_mu_qubits(const qg_mu* mu, unsigned* out);
QG_API qg_status qg_mu_budget(const qg_mu* mu, unsigned* out);
QG_API qg_status qg_mu_trace(const qg_mu* mu, double* out);
QG_API qg_status qg_mu_ledger_size(const qg_mu* mu, size_t* out);
/* Copy of the accumulated matrix. */
QG_API qg_status qg_mu_matrix(const qg_mu* mu, qg_matrix** out);
QG_API void qg_mu_free(qg_mu* mu);

/* `entries` holds dim*dim (re, im) pairs in row-major order. */
QG_API qg_status qg_matrix_create(size_t dim, const double* entries, qg_matrix** out);
/* Maximally mixed state on `qubits` qubits, stored exactly. */
QG_API qg_status qg_matrix_maximally_mixed(unsigned qubits, qg_matrix** out);
QG_API qg_status qg_matrix_load(const char* path, qg_matrix** out);
QG_API qg_status qg_matrix_save(const qg_matrix* m, const char* path);
QG_API qg_status qg_matrix_dim(const qg_matrix* m, size_t* out);
QG_API qg_status qg_matrix_get(const qg_matrix* m, size_t i, size_t j, double* re, double* im);
/* Nonzero when the matrix carries exact rational entries. */
QG_API qg_status qg_matrix_is_exact(const qg_matrix* m, int* out);
QG_API void qg_matrix_free(qg_matrix* m);

/* Ceiling of -log2 Tr mu sigma; *is_infinite set when the trace vanishes. */
QG_API qg_status qg_entropy(const qg_matrix* sigma, const qg_mu* mu, int* is_infinite, int* value);
/* Score of sigma against the default family of rho. `report_json` may be
   NULL; otherwise it receives the score report. */
QG_API qg_status qg_deficiency(const qg_matrix* sigma, const qg_matrix* rho, const qg_mu* mu,
                               unsigned generator_budget, double* value, char** report_json);
QG_API qg_status qg_mutual_information(const qg_matrix* sigma, const qg_matrix* rho, const qg_mu* mu,
                                       unsigned generator_budget, double* value, char** report_json);

QG_API void qg_params_default(qg_params* p);
/* Newline-separated experiment names. */
QG_API const char* qg_experiment_names(void);
QG_API qg_status qg_experiment_run(const char* name, const qg_params* params, qg_report** out);
QG_API qg_status qg_report_verdict(const qg_report* r, int* has_verdict, int* passed);
QG_API qg_status qg_report_json(const qg_report* r, char** out);
QG_API qg_status qg_report_csv(const qg_report* r, char** out);
QG_API void qg_report_free(qg_report* r);

#ifdef __cplusplus
}
#endif

#endif  // QGACS_QGACS_H_
