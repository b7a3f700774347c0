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

#include "nlbs/nlbs.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "nlbs/analysis.hpp"
#include "nlbs/error.hpp"
#include "nlbs/gadget.hpp"
#include "nlbs/io.hpp"
#include "nlbs/linalg.hpp"
#include "nlbs/linear_bs.hpp"
#include "nlbs/nonlinear_bs.hpp"
#include "nlbs/sim.hpp"

struct nlbs_matrix {
  nlbs::ComplexMatrix value;
};
struct nlbs_distribution {
  nlbs::Distribution value;
};
struct nlbs_experiment {
  nlbs::ExperimentConfig value;
  std::string gadget_path;
};
struct nlbs_gadget {
  nlbs::GadgetSpec value;
};
struct nlbs_samples {
  nlbs::Algorithm1Result value;
};
struct nlbs_records {
  std::vector<nlbs::ExperimentRecord> value;
};

namespace {

thread_local std::string g_last_error;

nlbs_status fail(nlbs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
nlbs_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return NLBS_OK;
  } catch (const nlbs::LimitError& e) {
    return fail(NLBS_ERR_LIMIT, e.what());
  } catch (const nlbs::NotFoundError& e) {
    return fail(NLBS_ERR_NOT_FOUND, e.what());
  } catch (const nlbs::IoError& e) {
    return fail(NLBS_ERR_IO, e.what());
  } catch (const nlbs::DomainError& e) {
    return fail(NLBS_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NLBS_ERR_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(NLBS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NLBS_ERR_INTERNAL, "unknown error");
  }
}

template <class... P>
bool any_null(const P*... p) {
  return ((p == nullptr) || ...);
}

#define NLBS_REQUIRE(...) \
  if (any_null(__VA_ARGS__)) return fail(NLBS_ERR_INVALID_ARGUMENT, "null argument")

nlbs::FockState state_from(const int* occ, std::size_t modes) {
  return nlbs::FockState(std::vector<int>(occ, occ + modes));
}

nlbs::NonlinearExperiment as_experiment(const nlbs_experiment& e) {
  const auto& c = e.value;
  return {c.w, c.v, nlbs::NonlinearGate(nlbs::SingleModePhase{c.mode_x, c.phi}), c.input};
}

nlbs::SimulationSetup setup_of(const nlbs_experiment& e, const nlbs_gadget& g) {
  const auto& c = e.value;
  return nlbs::build_setup(c.w, c.v, c.mode_x, c.input, g.value);
}

}  // namespace

extern "C" {

const char* nlbs_version(void) { return NLBS_VERSION; }

const char* nlbs_last_error(void) { return g_last_error.c_str(); }

const char* nlbs_status_name(nlbs_status status) {
  switch (status) {
    case NLBS_OK: return "ok";
    case NLBS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NLBS_ERR_DOMAIN: return "domain error";
    case NLBS_ERR_LIMIT: return "limit exceeded";
    case NLBS_ERR_NOT_FOUND: return "not found";
    case NLBS_ERR_IO: return "i/o error";
    case NLBS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// ---- matrices ----

nlbs_status nlbs_matrix_create(size_t rows, size_t cols, const double* re_im,
                               nlbs_matrix** out) {
  NLBS_REQUIRE(out);
  if (rows * cols > 0 && re_im == nullptr) return fail(NLBS_ERR_INVALID_ARGUMENT, "null data");
  return guarded([&] {
    std::vector<nlbs::Complex> entries(rows * cols);
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = {re_im[2 * i], re_im[2 * i + 1]};
    *out = new nlbs_matrix{nlbs::ComplexMatrix(rows, cols, entries)};
  });
}

nlbs_status nlbs_matrix_identity(size_t n, nlbs_matrix** out) {
  NLBS_REQUIRE(out);
  return guarded([&] { *out = new nlbs_matrix{nlbs::ComplexMatrix::identity(n)}; });
}

nlbs_status nlbs_matrix_haar(size_t n, uint64_t seed, nlbs_matrix** out) {
  NLBS_REQUIRE(out);
  return guarded([&] {
    nlbs::Rng rng(seed);
    *out = new nlbs_matrix{nlbs::haar_unitary(n, rng)};
  });
}

nlbs_status nlbs_matrix_load(const char* path, nlbs_matrix** out) {
  NLBS_REQUIRE(path, out);
  return guarded([&] { *out = new nlbs_matrix{nlbs::load_matrix(path)}; });
}

nlbs_status nlbs_matrix_save(const nlbs_matrix* m, const char* path) {
  NLBS_REQUIRE(m, path);
  return guarded([&] { nlbs::save_matrix(m->value, path); });
}

size_t nlbs_matrix_rows(const nlbs_matrix* m) { return m ? m->value.rows() : 0; }

size_t nlbs_matrix_cols(const nlbs_matrix* m) { return m ? m->value.cols() : 0; }

nlbs_status nlbs_matrix_get(const nlbs_matrix* m, size_t row, size_t col, double* re,
                            double* im) {
  NLBS_REQUIRE(m, re, im);
  if (row >= m->value.rows() || col >= m->value.cols()) {
    return fail(NLBS_ERR_INVALID_ARGUMENT, "matrix index out of range");
  }
  *re = m->value(row, col).real();
  *im = m->value(row, col).imag();
  return NLBS_OK;
}

nlbs_status nlbs_matrix_unitarity_deviation(const nlbs_matrix* m, double* out) {
  NLBS_REQUIRE(m, out);
  return guarded([&] { *out = nlbs::unitarity_deviation(m->value); });
}

void nlbs_matrix_free(nlbs_matrix* m) { delete m; }

nlbs_status nlbs_permanent(const nlbs_matrix* m, double* re, double* im) {
  NLBS_REQUIRE(m, re, im);
  return guarded([&] {
    const nlbs::Complex p = nlbs::permanent(m->value);
    *re = p.real();
    *im = p.imag();
  });
}

// ---- distributions ----

nlbs_status nlbs_distribution_linear(const nlbs_matrix* u, const int* input, size_t modes,
                                     unsigned workers, nlbs_distribution** out) {
  NLBS_REQUIRE(u, input, out);
  return guarded([&] {
    *out = new nlbs_distribution{
        nlbs::output_distribution(u->value, state_from(input, modes), workers)};
  });
}

size_t nlbs_distribution_size(const nlbs_distribution* d) { return d ? d->value.size() : 0; }

size_t nlbs_distribution_modes(const nlbs_distribution* d) {
  return d ? static_cast<size_t>(d->value.space().modes()) : 0;
}

nlbs_status nlbs_distribution_probability(const nlbs_distribution* d, size_t index,
                                          double* out) {
  NLBS_REQUIRE(d, out);
  if (index >= d->value.size()) return fail(NLBS_ERR_INVALID_ARGUMENT, "index out of range");
  *out = d->value[index];
  return NLBS_OK;
}

nlbs_status nlbs_distribution_state(const nlbs_distribution* d, size_t index,
                                    int* occupations) {
  NLBS_REQUIRE(d, occupations);
  if (index >= d->value.size()) return fail(NLBS_ERR_INVALID_ARGUMENT, "index out of range");
  const auto occ = d->value.space()[index].occupations();
  std::copy(occ.begin(), occ.end(), occupations);
  return NLBS_OK;
}

nlbs_status nlbs_distribution_write_csv(const nlbs_distribution* d, const char* path) {
  NLBS_REQUIRE(d, path);
  return guarded([&] { nlbs::write_text_file(path, nlbs::distribution_csv(d->value)); });
}

nlbs_status nlbs_tvd(const nlbs_distribution* p, const nlbs_distribution* q, double* out) {
  NLBS_REQUIRE(p, q, out);
  return guarded([&] { *out = nlbs::tvd(p->value, q->value); });
}

nlbs_status nlbs_fraction_for_threshold(const nlbs_distribution* d, double p, double* out) {
  NLBS_REQUIRE(d, out);
  return guarded([&] { *out = nlbs::fraction_for_threshold(d->value, p); });
}

void nlbs_distribution_free(nlbs_distribution* d) { delete d; }

// ---- experiments ----

nlbs_status nlbs_experiment_create(const nlbs_matrix* w, const nlbs_matrix* v, size_t mode_x,
                                   double phi, const int* input, size_t modes,
                                   nlbs_experiment** out) {
  NLBS_REQUIRE(w, v, input, out);
  return guarded([&] {
    nlbs::ExperimentConfig cfg{w->value, v->value, mode_x, phi, state_from(input, modes), {}};
    const nlbs::NonlinearExperiment check{cfg.w, cfg.v, nlbs::NonlinearGate(nlbs::SingleModePhase{mode_x, phi}),
                                          cfg.input};
    check.validate();
    *out = new nlbs_experiment{std::move(cfg), {}};
  });
}

nlbs_status nlbs_experiment_load(const char* path, nlbs_experiment** out) {
  NLBS_REQUIRE(path, out);
  return guarded([&] {
    nlbs::ExperimentConfig cfg = nlbs::load_experiment(path);
    as_experiment(nlbs_experiment{cfg, {}}).validate();
    std::string gadget = cfg.gadget_path.string();
    *out = new nlbs_experiment{std::move(cfg), std::move(gadget)};
  });
}

size_t nlbs_experiment_modes(const nlbs_experiment* e) { return e ? e->value.input.modes() : 0; }

int nlbs_experiment_photons(const nlbs_experiment* e) { return e ? e->value.input.photons() : 0; }

size_t nlbs_experiment_mode_x(const nlbs_experiment* e) { return e ? e->value.mode_x : 0; }

double nlbs_experiment_phi(const nlbs_experiment* e) { return e ? e->value.phi : 0.0; }

const char* nlbs_experiment_gadget_path(const nlbs_experiment* e) {
  return e ? e->gadget_path.c_str() : "";
}

nlbs_status nlbs_distribution_nonlinear(const nlbs_experiment* e, unsigned workers,
                                        nlbs_distribution** out) {
  NLBS_REQUIRE(e, out);
  return guarded([&] {
    const auto& c = e->value;
    *out = new nlbs_distribution{
        nlbs::nlp_distribution(c.w, c.mode_x, c.phi, c.v, c.input, workers)};
  });
}

nlbs_status nlbs_distribution_linear_phase(const nlbs_experiment* e, unsigned workers,
                                           nlbs_distribution** out) {
  NLBS_REQUIRE(e, out);
  return guarded([&] {
    const auto& c = e->value;
    *out = new nlbs_distribution{
        nlbs::output_distribution(nlbs::ubar(c.w, c.mode_x, c.phi, c.v), c.input, workers)};
  });
}

nlbs_status nlbs_bunching_at_site(const nlbs_experiment* e, int k, double* out) {
  NLBS_REQUIRE(e, out);
  return guarded(
      [&] { *out = nlbs::bunching_at_site(e->value.w, e->value.input, e->value.mode_x, k); });
}

nlbs_status nlbs_bunching_global(const nlbs_experiment* e, int k, double* out) {
  NLBS_REQUIRE(e, out);
  return guarded([&] { *out = nlbs::bunching_global(e->value.w, e->value.input, k); });
}

void nlbs_experiment_free(nlbs_experiment* e) { delete e; }

// ---- gadgets ----

void nlbs_gadget_search_options_default(nlbs_gadget_search_options* options) {
  if (options == nullptr) return;
  const nlbs::GadgetSearchOptions d;
  *options = {d.k, d.phi, d.p_th, d.starts, d.seed, d.budget, d.penalty_rounds, d.tolerance,
              d.workers};
}

nlbs_status nlbs_gadget_optimize(const nlbs_gadget_search_options* options, nlbs_gadget** out,
                                 nlbs_gadget_search_report* report) {
  NLBS_REQUIRE(options, out);
  return guarded([&] {
    nlbs::GadgetSearchOptions o;
    o.k = options->k;
    o.phi = options->phi;
    o.p_th = options->p_th;
    o.starts = options->starts;
    o.seed = options->seed;
    o.budget = options->budget;
    o.penalty_rounds = options->penalty_rounds;
    o.tolerance = options->tolerance;
    o.workers = options->workers;
    nlbs::GadgetSearchResult res = nlbs::optimize_gadget(o);
    if (report != nullptr) *report = {res.found ? 1 : 0, res.best_start, res.feasible_starts};
    *out = new nlbs_gadget{std::move(res.best)};
  });
}

nlbs_status nlbs_gadget_published(int k, nlbs_gadget** out) {
  NLBS_REQUIRE(out);
  return guarded([&] { *out = new nlbs_gadget{nlbs::paper_gadget(k)}; });
}

nlbs_status nlbs_gadget_load(const char* path, nlbs_gadget** out) {
  NLBS_REQUIRE(path, out);
  return guarded([&] { *out = new nlbs_gadget{nlbs::load_gadget(path)}; });
}

nlbs_status nlbs_gadget_save(const nlbs_gadget* g, const char* path) {
  NLBS_REQUIRE(g, path);
  return guarded([&] { nlbs::save_gadget(g->value, path); });
}

int nlbs_gadget_k(const nlbs_gadget* g) { return g ? g->value.k : 0; }

double nlbs_gadget_phi(const nlbs_gadget* g) { return g ? g->value.phi : 0.0; }

double nlbs_gadget_success_probability(const nlbs_gadget* g) {
  return g ? g->value.success_prob : 0.0;
}

double nlbs_gadget_objective(const nlbs_gadget* g) { return g ? g->value.residual : 0.0; }

nlbs_status nlbs_gadget_matrix(const nlbs_gadget* g, nlbs_matrix** out) {
  NLBS_REQUIRE(g, out);
  return guarded([&] { *out = new nlbs_matrix{g->value.u_eff}; });
}

nlbs_status nlbs_gadget_verify(const nlbs_gadget* g, double phi, double* max_residual,
                               double* success_probability, double* unitarity_dev) {
  NLBS_REQUIRE(g);
  return guarded([&] {
    double worst = 0.0;
    for (const nlbs::Complex r : nlbs::gadget_residuals(g->value.u_eff, phi)) {
      worst = std::max(worst, std::abs(r));
    }
    if (max_residual) *max_residual = worst;
    if (success_probability) *success_probability = nlbs::success_probability(g->value.u_eff);
    if (unitarity_dev) *unitarity_dev = nlbs::unitarity_deviation(g->value.u_eff);
  });
}

double nlbs_success_bound(double phi) { return nlbs::success_bound(phi); }

double nlbs_gadget_default_threshold(int k) {
  try {
    return nlbs::default_threshold(k);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return 0.0;
  }
}

void nlbs_gadget_free(nlbs_gadget* g) { delete g; }

// ---- simulation ----

nlbs_status nlbs_postselected_distribution(const nlbs_experiment* e, const nlbs_gadget* g,
                                           unsigned workers, nlbs_distribution** out,
                                           double* p_postselect) {
  NLBS_REQUIRE(e, g, out);
  return guarded([&] {
    nlbs::Postselected ps = nlbs::postselected_distribution(setup_of(*e, *g), workers);
    if (p_postselect) *p_postselect = ps.p_postselect;
    *out = new nlbs_distribution{std::move(ps.distribution)};
  });
}

nlbs_status nlbs_simulate(const nlbs_experiment* e, const nlbs_gadget* g, size_t n_samples,
                          uint64_t seed, uint64_t trial_budget, nlbs_samples** out) {
  NLBS_REQUIRE(e, g, out);
  return guarded([&] {
    nlbs::Rng rng(seed);
    const std::uint64_t budget = trial_budget ? trial_budget : nlbs::kDefaultTrialBudget;
    *out = new nlbs_samples{nlbs::run_algorithm1(setup_of(*e, *g), n_samples, rng, budget)};
  });
}

size_t nlbs_samples_count(const nlbs_samples* s) { return s ? s->value.ranks.size() : 0; }

uint64_t nlbs_samples_total_trials(const nlbs_samples* s) {
  return s ? s->value.total_trials : 0;
}

double nlbs_samples_acceptance_rate(const nlbs_samples* s) {
  return s ? s->value.acceptance_rate() : 0.0;
}

nlbs_status nlbs_samples_empirical(const nlbs_samples* s, size_t prefix,
                                   nlbs_distribution** out) {
  NLBS_REQUIRE(s, out);
  const auto& ranks = s->value.ranks;
  if (prefix > ranks.size()) return fail(NLBS_ERR_INVALID_ARGUMENT, "prefix exceeds sample count");
  return guarded([&] {
    const std::size_t n = prefix ? prefix : ranks.size();
    *out = new nlbs_distribution{nlbs::empirical_distribution(
        s->value.space, std::span<const std::size_t>(ranks.data(), n))};
  });
}

nlbs_status nlbs_samples_write_csv(const nlbs_samples* s, const char* path) {
  NLBS_REQUIRE(s, path);
  return guarded([&] { nlbs::write_text_file(path, nlbs::samples_csv(s->value)); });
}

void nlbs_samples_free(nlbs_samples* s) { delete s; }

// ---- studies ----

nlbs_status nlbs_experiment_tvd_bunching(const nlbs_tvd_bunching_options* options,
                                         nlbs_records** out) {
  NLBS_REQUIRE(options, out);
  if ((options->n_modes && !options->modes) || (options->n_ks && !options->ks)) {
    return fail(NLBS_ERR_INVALID_ARGUMENT, "null list");
  }
  return guarded([&] {
    nlbs::TvdBunchingOptions o;
    o.n = options->n;
    o.modes.assign(options->modes, options->modes + options->n_modes);
    o.ks.assign(options->ks, options->ks + options->n_ks);
    o.phi = options->phi;
    o.trials = options->trials;
    o.seed = options->seed;
    o.reference = options->reference == NLBS_REFERENCE_DIRECT ? nlbs::ReferenceKind::kDirect
                                                              : nlbs::ReferenceKind::kGadget;
    o.gadget_starts = options->gadget_starts;
    o.workers = options->workers;
    *out = new nlbs_records{nlbs::experiment_tvd_vs_bunching(o).records};
  });
}

size_t nlbs_records_count(const nlbs_records* r) { return r ? r->value.size() : 0; }

nlbs_status nlbs_records_get(const nlbs_records* r, size_t index, int* m, int* k, int* trial,
                             double* tvd, double* p_bunch_site, double* p_bunch_global,
                             double* p_postselect) {
  NLBS_REQUIRE(r);
  if (index >= r->value.size()) return fail(NLBS_ERR_INVALID_ARGUMENT, "index out of range");
  const auto& rec = r->value[index];
  if (m) *m = rec.m;
  if (k) *k = rec.k;
  if (trial) *trial = rec.trial;
  if (tvd) *tvd = rec.tvd;
  if (p_bunch_site) *p_bunch_site = rec.p_bunch_site;
  if (p_bunch_global) *p_bunch_global = rec.p_bunch_global;
  if (p_postselect) *p_postselect = rec.p_postselect;
  return NLBS_OK;
}

nlbs_status nlbs_records_write_csv(const nlbs_records* r, const char* path) {
  NLBS_REQUIRE(r, path);
  return guarded([&] { nlbs::write_text_file(path, nlbs::records_csv(r->value)); });
}

nlbs_status nlbs_records_write_summary(const nlbs_records* r, const char* path) {
  NLBS_REQUIRE(r, path);
  return guarded(
      [&] { nlbs::write_text_file(path, nlbs::summary_json(nlbs::summarize(r->value))); });
}

void nlbs_records_free(nlbs_records* r) { delete r; }

nlbs_status nlbs_truncation_study(int n, int m, int n_max, int n_unit, uint64_t seed,
                                  unsigned workers, double* mean, double* stddev) {
  NLBS_REQUIRE(mean, stddev);
  return guarded([&] {
    const nlbs::MeanStd r = nlbs::haar_truncation_study(n, m, n_max, n_unit, seed, workers);
    *mean = r.mean;
    *stddev = r.stddev;
  });
}

nlbs_status nlbs_cumulative_study(int n, int m, const double* thresholds, size_t n_thresholds,
                                  int n_unit, uint64_t seed, unsigned workers, double* means,
                                  double* stddevs) {
  NLBS_REQUIRE(thresholds, means, stddevs);
  return guarded([&] {
    const auto res = nlbs::cumulative_study(
        n, m, std::span<const double>(thresholds, n_thresholds), n_unit, seed, workers);
    for (std::size_t i = 0; i < res.size(); ++i) {
      means[i] = res[i].mean;
      stddevs[i] = res[i].stddev;
    }
  });
}

nlbs_status nlbs_linear_search(const nlbs_experiment* e, int iterations, uint64_t seed,
                               double* best_tvd, double* trace, nlbs_matrix** best_unitary) {
  NLBS_REQUIRE(e, best_tvd);
  return guarded([&] {
    nlbs::Rng rng(seed);
    nlbs::LinearSearchResult res = nlbs::random_linear_search(as_experiment(*e), iterations, rng);
    *best_tvd = res.best_tvd;
    if (trace) std::copy(res.trace.begin(), res.trace.end(), trace);
    if (best_unitary) *best_unitary = new nlbs_matrix{std::move(res.best_unitary)};
  });
}

}  // extern "C"
