// Copyright 2026 The nlbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLBS_NLBS_H_
#define NLBS_NLBS_H_

/* C interface to the non-linear boson sampling toolkit.
 *
 * Objects are opaque handles released with the matching *_free function
 * (passing NULL is allowed). Functions return an nlbs_status; on failure the
 * message is available from nlbs_last_error() on the calling thread until the
 * next call. Mode indices are 1-based, occupations are int arrays. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(NLBS_BUILDING)
#define NLBS_API __declspec(dllexport)
#else
#define NLBS_API __declspec(dllimport)
#endif
#else
#define NLBS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlbs_status {
  NLBS_OK = 0,
  NLBS_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad size */
  NLBS_ERR_DOMAIN = 2,           /* violated precondition of the model */
  NLBS_ERR_LIMIT = 3,            /* problem exceeds a size guard */
  NLBS_ERR_NOT_FOUND = 4,        /* search or sampling gave up */
  NLBS_ERR_IO = 5,
  NLBS_ERR_INTERNAL = 6
} nlbs_status;

typedef struct nlbs_matrix nlbs_matrix;
typedef struct nlbs_distribution nlbs_distribution;
typedef struct nlbs_experiment nlbs_experiment;
typedef struct nlbs_gadget nlbs_gadget;
typedef struct nlbs_samples nlbs_samples;
typedef struct nlbs_records nlbs_records;

NLBS_API const char* nlbs_version(void);
NLBS_API const char* nlbs_last_error(void);
NLBS_API const char* nlbs_status_name(nlbs_status status);

/* ---- matrices ---- */

/* `re_im` holds rows*cols interleaved (re, im) pairs in row-major order. */
NLBS_API nlbs_status nlbs_matrix_create(size_t rows, size_t cols, const double* re_im,
                                        nlbs_matrix** out);
NLBS_API nlbs_status nlbs_matrix_identity(size_t n, nlbs_matrix** out);
NLBS_API nlbs_status nlbs_matrix_haar(size_t n, uint64_t seed, nlbs_matrix** out);
NLBS_API nlbs_status nlbs_matrix_load(const char* path, nlbs_matrix** out);
NLBS_API nlbs_status nlbs_matrix_save(const nlbs_matrix* m, const char* path);
NLBS_API size_t nlbs_matrix_rows(const nlbs_matrix* m);
NLBS_API size_t nlbs_matrix_cols(const nlbs_matrix* m);
NLBS_API nlbs_status nlbs_matrix_get(const nlbs_matrix* m, size_t row, size_t col, double* re,
                                     double* im);
NLBS_API nlbs_status nlbs_matrix_unitarity_deviation(const nlbs_matrix* m, double* out);
NLBS_API void nlbs_matrix_free(nlbs_matrix* m);

NLBS_API nlbs_status nlbs_permanent(const nlbs_matrix* m, double* re, double* im);

/* ---- distributions ---- */

NLBS_API nlbs_status nlbs_distribution_linear(const nlbs_matrix* u, const int* input,
                                              size_t modes, unsigned workers,
                                              nlbs_distribution** out);
NLBS_API size_t nlbs_distribution_size(const nlbs_distribution* d);
NLBS_API size_t nlbs_distribution_modes(const nlbs_distribution* d);
NLBS_API nlbs_status nlbs_distribution_probability(const nlbs_distribution* d, size_t index,
                                                   double* out);
/* Writes nlbs_distribution_modes(d) occupations into `occupations`. */
NLBS_API nlbs_status nlbs_distribution_state(const nlbs_distribution* d, size_t index,
                                             int* occupations);
NLBS_API nlbs_status nlbs_distribution_write_csv(const nlbs_distribution* d, const char* path);
NLBS_API nlbs_status nlbs_tvd(const nlbs_distribution* p, const nlbs_distribution* q,
                              double* out);
NLBS_API nlbs_status nlbs_fraction_for_threshold(const nlbs_distribution* d, double p,
                                                 double* out);
NLBS_API void nlbs_distribution_free(nlbs_distribution* d);

/* ---- non-linear experiments: W, exp(-i n_x^2 phi), V ---- */

NLBS_API nlbs_status nlbs_experiment_create(const nlbs_matrix* w, const nlbs_matrix* v,
                                            size_t mode_x, double phi, const int* input,
                                            size_t modes, nlbs_experiment** out);
NLBS_API nlbs_status nlbs_experiment_load(const char* path, nlbs_experiment** out);
NLBS_API size_t nlbs_experiment_modes(const nlbs_experiment* e);
NLBS_API int nlbs_experiment_photons(const nlbs_experiment* e);
NLBS_API size_t nlbs_experiment_mode_x(const nlbs_experiment* e);
NLBS_API double nlbs_experiment_phi(const nlbs_experiment* e);
/* Gadget path named by a loaded config, "" when absent. */
NLBS_API const char* nlbs_experiment_gadget_path(const nlbs_experiment* e);
/* Exact output distribution (single-sum path formula). */
NLBS_API nlbs_status nlbs_distribution_nonlinear(const nlbs_experiment* e, unsigned workers,
                                                 nlbs_distribution** out);
/* Same network with the non-linearity replaced by a linear phase shifter. */
NLBS_API nlbs_status nlbs_distribution_linear_phase(const nlbs_experiment* e, unsigned workers,
                                                    nlbs_distribution** out);
NLBS_API nlbs_status nlbs_bunching_at_site(const nlbs_experiment* e, int k, double* out);
NLBS_API nlbs_status nlbs_bunching_global(const nlbs_experiment* e, int k, double* out);
NLBS_API void nlbs_experiment_free(nlbs_experiment* e);

/* ---- gadgets ---- */

typedef struct nlbs_gadget_search_options {
  int k;
  double phi;
  double p_th;
  int starts;
  uint64_t seed;
  int budget;
  int penalty_rounds;
  double tolerance;
  unsigned workers;
} nlbs_gadget_search_options;

typedef struct nlbs_gadget_search_report {
  int found;
  int best_start;
  int feasible_starts;
} nlbs_gadget_search_report;

NLBS_API void nlbs_gadget_search_options_default(nlbs_gadget_search_options* options);
/* Returns the best candidate even when none is feasible; check report.found. */
NLBS_API nlbs_status nlbs_gadget_optimize(const nlbs_gadget_search_options* options,
                                          nlbs_gadget** out, nlbs_gadget_search_report* report);
/* Published k = 2, 3, 4 gadgets for phi = pi/2 in the toolkit convention. */
NLBS_API nlbs_status nlbs_gadget_published(int k, nlbs_gadget** out);
NLBS_API nlbs_status nlbs_gadget_load(const char* path, nlbs_gadget** out);
NLBS_API nlbs_status nlbs_gadget_save(const nlbs_gadget* g, const char* path);
NLBS_API int nlbs_gadget_k(const nlbs_gadget* g);
NLBS_API double nlbs_gadget_phi(const nlbs_gadget* g);
NLBS_API double nlbs_gadget_success_probability(const nlbs_gadget* g);
NLBS_API double nlbs_gadget_objective(const nlbs_gadget* g);
NLBS_API nlbs_status nlbs_gadget_matrix(const nlbs_gadget* g, nlbs_matrix** out);
/* Max |r_l| at `phi`, plus success probability and unitarity deviation. */
NLBS_API nlbs_status nlbs_gadget_verify(const nlbs_gadget* g, double phi, double* max_residual,
                                        double* success_probability, double* unitarity_dev);
NLBS_API double nlbs_success_bound(double phi);
/* Success-probability threshold used by default for a k-ancilla search. */
NLBS_API double nlbs_gadget_default_threshold(int k);
NLBS_API void nlbs_gadget_free(nlbs_gadget* g);

/* ---- simulation with ancilla photons and post-selection ---- */

NLBS_API nlbs_status nlbs_postselected_distribution(const nlbs_experiment* e,
                                                    const nlbs_gadget* g, unsigned workers,
                                                    nlbs_distribution** out,
                                                    double* p_postselect);
/* trial_budget = 0 selects the default budget. */
NLBS_API nlbs_status nlbs_simulate(const nlbs_experiment* e, const nlbs_gadget* g,
                                   size_t n_samples, uint64_t seed, uint64_t trial_budget,
                                   nlbs_samples** out);
NLBS_API size_t nlbs_samples_count(const nlbs_samples* s);
NLBS_API uint64_t nlbs_samples_total_trials(const nlbs_samples* s);
NLBS_API double nlbs_samples_acceptance_rate(const nlbs_samples* s);
/* Empirical distribution of the first `prefix` samples (0 = all). */
NLBS_API nlbs_status nlbs_samples_empirical(const nlbs_samples* s, size_t prefix,
                                            nlbs_distribution** out);
NLBS_API nlbs_status nlbs_samples_write_csv(const nlbs_samples* s, const char* path);
NLBS_API void nlbs_samples_free(nlbs_samples* s);

/* ---- studies ---- */

typedef enum nlbs_reference { NLBS_REFERENCE_GADGET = 0, NLBS_REFERENCE_DIRECT = 1 } nlbs_reference;

typedef struct nlbs_tvd_bunching_options {
  int n;
  const int* modes;
  size_t n_modes;
  const int* ks;
  size_t n_ks;
  double phi;
  int trials;
  uint64_t seed;
  nlbs_reference reference;
  int gadget_starts;
  unsigned workers;
} nlbs_tvd_bunching_options;

NLBS_API nlbs_status nlbs_experiment_tvd_bunching(const nlbs_tvd_bunching_options* options,
                                                  nlbs_records** out);
NLBS_API size_t nlbs_records_count(const nlbs_records* r);
/* Fields of record `index`; any output pointer may be NULL. */
NLBS_API nlbs_status nlbs_records_get(const nlbs_records* r, size_t index, int* m, int* k,
                                      int* trial, double* tvd, double* p_bunch_site,
                                      double* p_bunch_global, double* p_postselect);
NLBS_API nlbs_status nlbs_records_write_csv(const nlbs_records* r, const char* path);
/* Per-(m, k) means, standard deviations and rank correlation. */
NLBS_API nlbs_status nlbs_records_write_summary(const nlbs_records* r, const char* path);
NLBS_API void nlbs_records_free(nlbs_records* r);

NLBS_API nlbs_status nlbs_truncation_study(int n, int m, int n_max, int n_unit, uint64_t seed,
                                           unsigned workers, double* mean, double* stddev);
/* `means` and `stddevs` receive one value per threshold. */
NLBS_API nlbs_status nlbs_cumulative_study(int n, int m, const double* thresholds,
                                           size_t n_thresholds, int n_unit, uint64_t seed,
                                           unsigned workers, double* means, double* stddevs);
/* `trace` (may be NULL) receives `iterations` running minima. */
NLBS_API nlbs_status nlbs_linear_search(const nlbs_experiment* e, int iterations, uint64_t seed,
                                        double* best_tvd, double* trace,
                                        nlbs_matrix** best_unitary);

#ifdef __cplusplus
}
#endif

#endif  // NLBS_NLBS_H_
