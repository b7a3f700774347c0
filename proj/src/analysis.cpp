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

#include "nlbs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "nlbs/error.hpp"
#include "nlbs/parallel.hpp"
#include "nlbs/sim.hpp"

namespace nlbs {

double tvd(const Distribution& p, const Distribution& q) {
  if (!p.same_space(q)) throw DomainError("tvd: distributions live on different state spaces");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double bunching_at_site(const ComplexMatrix& w, const FockState& s, std::size_t x, int k) {
  if (x < 1 || x > w.rows()) throw DomainError("bunching site out of range");
  if (k < 0) throw DomainError("bunching threshold must be non-negative");
  const Distribution mid = output_distribution(w, s);
  double mass = 0.0;
  for (std::size_t r = 0; r < mid.size(); ++r) {
    if (mid.space()[r][x - 1] > k) mass += mid[r];
  }
  return std::clamp(mass, 0.0, 1.0);
}

double bunching_global(const ComplexMatrix& w, const FockState& s, int k) {
  if (k < 0) throw DomainError("bunching threshold must be non-negative");
  if (k >= s.photons()) return 0.0;
  const Distribution mid = output_distribution(w, s);
  double kept = 0.0;
  for (std::size_t r = 0; r < mid.size(); ++r) {
    const auto occ = mid.space()[r].occupations();
    if (*std::max_element(occ.begin(), occ.end()) <= k) kept += mid[r];
  }
  return std::clamp(1.0 - kept, 0.0, 1.0);
}

SortedCumulative sorted_cumulative(const Distribution& dist) {
  SortedCumulative out;
  out.sorted.assign(dist.probabilities().begin(), dist.probabilities().end());
  std::sort(out.sorted.begin(), out.sorted.end(), std::greater<>());
  out.cumulative.resize(out.sorted.size());
  std::partial_sum(out.sorted.begin(), out.sorted.end(), out.cumulative.begin());
  return out;
}

double fraction_for_threshold(const Distribution& dist, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("threshold must lie in (0, 1]");
  const SortedCumulative sc = sorted_cumulative(dist);
  const double target = p * sc.cumulative.back() - 1e-12;
  const auto it = std::lower_bound(sc.cumulative.begin(), sc.cumulative.end(), target);
  const std::size_t count =
      it == sc.cumulative.end() ? sc.cumulative.size()
                                : static_cast<std::size_t>(it - sc.cumulative.begin()) + 1;
  return static_cast<double>(count) / static_cast<double>(dist.size());
}

AmplitudeMetrics amplitude_metrics(Complex a_nl, Complex a_ref) {
  AmplitudeMetrics out;
  const double ref = std::abs(a_ref);
  if (ref > 0.0) out.relative_modulus = std::abs(std::abs(a_nl) - ref) / ref;
  double d = std::abs(std::remainder(std::arg(a_nl) - std::arg(a_ref), 2.0 * std::numbers::pi));
  out.phase_difference = std::min(d, std::numbers::pi);
  return out;
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) return {};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / n)};
}

namespace {

std::vector<double> ranks_of(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("spearman: sample sizes differ");
  if (a.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const auto ra = ranks_of(a);
  const auto rb = ranks_of(b);
  const MeanStd ma = mean_std(ra);
  const MeanStd mb = mean_std(rb);
  if (ma.stddev == 0.0 || mb.stddev == 0.0) return std::numeric_limits<double>::quiet_NaN();
  double cov = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) cov += (ra[i] - ma.mean) * (rb[i] - mb.mean);
  cov /= static_cast<double>(ra.size());
  return cov / (ma.stddev * mb.stddev);
}

FockState standard_input(int n, int m) {
  if (n < 0 || m < 1 || n > m) throw DomainError("need 0 <= n <= m single photons");
  std::vector<int> occ(static_cast<std::size_t>(m), 0);
  std::fill(occ.begin(), occ.begin() + n, 1);
  return FockState(std::move(occ));
}

MeanStd haar_truncation_study(int n, int m, int n_max, int n_unit, std::uint64_t seed,
                              unsigned workers) {
  if (n_unit < 1) throw DomainError("need at least one unitary");
  const FockState s = standard_input(n, m);
  auto space = enumerate_states_guarded(m, n, kMaxMaterializedStates);
  std::vector<double> masses(static_cast<std::size_t>(n_unit));
  parallel_for(masses.size(), workers, [&](std::size_t i) {
    Rng rng = derive_stream(seed, {i});
    const auto amps = amplitudes_to_space(haar_unitary(static_cast<std::size_t>(m), rng), s,
                                          *space);
    double kept = 0.0;
    for (std::size_t r = 0; r < amps.size(); ++r) {
      const auto occ = (*space)[r].occupations();
      if (*std::max_element(occ.begin(), occ.end()) <= n_max) kept += std::norm(amps[r]);
    }
    masses[i] = kept;
  });
  return mean_std(masses);
}

std::vector<MeanStd> cumulative_study(int n, int m, std::span<const double> thresholds,
                                      int n_unit, std::uint64_t seed, unsigned workers) {
  if (n_unit < 1) throw DomainError("need at least one unitary");
  const FockState s = standard_input(n, m);
  auto space = enumerate_states_guarded(m, n, kMaxMaterializedStates);
  std::vector<std::vector<double>> fractions(thresholds.size(),
                                             std::vector<double>(static_cast<std::size_t>(n_unit)));
  parallel_for(static_cast<std::size_t>(n_unit), workers, [&](std::size_t i) {
    Rng rng = derive_stream(seed, {i});
    const auto amps = amplitudes_to_space(haar_unitary(static_cast<std::size_t>(m), rng), s,
                                          *space);
    std::vector<double> probs(amps.size());
    for (std::size_t r = 0; r < amps.size(); ++r) probs[r] = std::min(1.0, std::norm(amps[r]));
    const Distribution dist(space, std::move(probs));
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      fractions[t][i] = fraction_for_threshold(dist, thresholds[t]);
    }
  });
  std::vector<MeanStd> out;
  for (const auto& f : fractions) out.push_back(mean_std(f));
  return out;
}

LinearSearchResult random_linear_search(const NonlinearExperiment& exp, int iterations,
                                        Rng& rng) {
  if (iterations < 1) throw DomainError("need at least one iteration");
  const Distribution target = nl_distribution(exp);
  const StateSpacePtr& space = target.space_ptr();
  LinearSearchResult out;
  out.trace.reserve(static_cast<std::size_t>(iterations));
  std::vector<double> probs(space->size());
  for (int it = 0; it < iterations; ++it) {
    ComplexMatrix h = haar_unitary(exp.modes(), rng);
    const auto amps = amplitudes_to_space(h, exp.input, *space);
    double sum = 0.0;
    for (std::size_t r = 0; r < amps.size(); ++r) sum += std::abs(std::norm(amps[r]) - target[r]);
    const double d = std::clamp(0.5 * sum, 0.0, 1.0);
    if (it == 0 || d < out.best_tvd) {
      out.best_tvd = d;
      out.best_unitary = std::move(h);
    }
    out.trace.push_back(out.best_tvd);
  }
  return out;
}

std::vector<PerturbationPoint> perturbation_study(int n, int m, std::span<const double> phis,
                                                  int n_unit, std::uint64_t seed,
                                                  unsigned workers) {
  if (n_unit < 1) throw DomainError("need at least one unitary");
  const FockState s = standard_input(n, m);
  const auto mu = static_cast<std::size_t>(m);
  const std::size_t x = default_nonlinear_mode(mu);
  auto space = enumerate_states_guarded(m, n, kMaxMaterializedStates);
  const auto units = static_cast<std::size_t>(n_unit);

  std::vector<PerturbationPoint> out;
  for (double phi : phis) {
    std::vector<double> t_lin(units), t_ubar(units), rel(units), arg(units);
    parallel_for(units, workers, [&](std::size_t i) {
      Rng rng = derive_stream(seed, {i});
      const ComplexMatrix w = haar_unitary(mu, rng);
      const ComplexMatrix v = haar_unitary(mu, rng);
      const auto a_nl = nlp_amplitudes(w, x, phi, v, s);
      const auto a_ub = amplitudes_to_space(ubar(w, x, phi, v), s, *space);
      const auto a_lin = amplitudes_to_space(sequence(w, v), s, *space);
      double d_lin = 0.0, d_ub = 0.0, sum_rel = 0.0, sum_arg = 0.0;
      std::size_t counted = 0;
      for (std::size_t r = 0; r < a_nl.size(); ++r) {
        const double p = std::norm(a_nl[r]);
        d_lin += std::abs(p - std::norm(a_lin[r]));
        d_ub += std::abs(p - std::norm(a_ub[r]));
        if (std::abs(a_ub[r]) < 1e-12) continue;
        const AmplitudeMetrics am = amplitude_metrics(a_nl[r], a_ub[r]);
        sum_rel += *am.relative_modulus;
        sum_arg += am.phase_difference;
        ++counted;
      }
      t_lin[i] = 0.5 * d_lin;
      t_ubar[i] = 0.5 * d_ub;
      rel[i] = counted ? sum_rel / static_cast<double>(counted) : 0.0;
      arg[i] = counted ? sum_arg / static_cast<double>(counted) : 0.0;
    });
    out.push_back({phi, mean_std(t_lin), mean_std(t_ubar), mean_std(rel), mean_std(arg)});
  }
  return out;
}

namespace {

GadgetSpec synthesize_for_experiment(int k, double phi, std::uint64_t seed, int starts,
                                     double tolerance, unsigned workers) {
  GadgetSearchOptions opt;
  opt.k = k;
  opt.phi = phi;
  opt.p_th = default_threshold(k);
  opt.starts = starts;
  opt.seed = derive_seed(seed, {0, static_cast<std::uint64_t>(k)});
  opt.tolerance = tolerance;
  opt.workers = workers;
  GadgetSearchResult res = optimize_gadget(opt);
  if (!res.found) {
    std::ostringstream msg;
    msg << "gadget synthesis failed for k=" << k << ", phi=" << phi << ": best objective "
        << res.best.residual << ", success probability " << res.best.success_prob
        << " (threshold " << opt.p_th << ", " << starts << " starts)";
    throw NotFoundError(msg.str());
  }
  return res.best;
}

}  // namespace

TvdBunchingResult experiment_tvd_vs_bunching(const TvdBunchingOptions& o) {
  if (o.n < 1 || o.n > 4) throw LimitError("experiment supports 1 <= n <= 4");
  if (o.trials < 1) throw DomainError("need at least one trial");
  if (o.modes.empty() || o.ks.empty()) throw DomainError("mode and k lists must be non-empty");
  for (int m : o.modes) {
    if (m < o.n || m > 45) throw LimitError("experiment supports n <= m <= 45");
  }
  for (int k : o.ks) {
    if (k < 1 || k > o.n) throw DomainError("k must lie in 1..n");
  }

  TvdBunchingResult result;
  for (int k : o.ks) {
    if (!result.gadgets.contains(k)) {
      const double tol = k == o.n ? 1e-20 : 1e-8;
      result.gadgets.emplace(
          k, synthesize_for_experiment(k, o.phi, o.seed, o.gadget_starts, tol, o.workers));
    }
  }
  if (o.reference == ReferenceKind::kGadget && !result.gadgets.contains(o.n)) {
    result.gadgets.emplace(
        o.n, synthesize_for_experiment(o.n, o.phi, o.seed, o.gadget_starts, 1e-20, o.workers));
  }

  const std::size_t n_m = o.modes.size();
  const std::size_t n_k = o.ks.size();
  const auto n_t = static_cast<std::size_t>(o.trials);
  result.records.resize(n_m * n_k * n_t);
  parallel_for(n_m * n_t, o.workers, [&](std::size_t item) {
    const std::size_t mi = item / n_t;
    const std::size_t trial = item % n_t;
    const int m = o.modes[mi];
    const auto mu = static_cast<std::size_t>(m);
    const std::uint64_t trial_seed =
        derive_seed(o.seed, {static_cast<std::uint64_t>(m), trial});
    Rng rng(trial_seed);
    const ComplexMatrix w = haar_unitary(mu, rng);
    const ComplexMatrix v = haar_unitary(mu, rng);
    const std::size_t x = default_nonlinear_mode(mu);
    const FockState s = standard_input(o.n, m);

    const Distribution reference =
        o.reference == ReferenceKind::kGadget
            ? postselected_distribution(build_setup(w, v, x, s, result.gadgets.at(o.n)))
                  .distribution
            : nlp_distribution(w, x, o.phi, v, s);
    for (std::size_t ki = 0; ki < n_k; ++ki) {
      const int k = o.ks[ki];
      const Postselected ps = postselected_distribution(build_setup(w, v, x, s, result.gadgets.at(k)));
      ExperimentRecord& rec = result.records[(mi * n_k + ki) * n_t + trial];
      rec.n = o.n;
      rec.m = m;
      rec.k = k;
      rec.phi = o.phi;
      rec.trial = static_cast<int>(trial);
      rec.seed = trial_seed;
      rec.tvd = tvd(ps.distribution, reference);
      rec.p_bunch_site = bunching_at_site(w, s, x, k);
      rec.p_bunch_global = bunching_global(w, s, k);
      rec.p_postselect = ps.p_postselect;
    }
  });
  return result;
}

std::vector<GroupSummary> summarize(std::span<const ExperimentRecord> records) {
  std::vector<GroupSummary> out;
  std::vector<std::vector<const ExperimentRecord*>> groups;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const GroupSummary& g) { return g.m == r.m && g.k == r.k; });
    if (it == out.end()) {
      out.push_back({r.m, r.k, 0, {}, {}, {}, {}, 0.0});
      groups.emplace_back();
      it = out.end() - 1;
    }
    groups[static_cast<std::size_t>(it - out.begin())].push_back(&r);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    std::vector<double> t, site, global, ps;
    for (const auto* r : groups[g]) {
      t.push_back(r->tvd);
      site.push_back(r->p_bunch_site);
      global.push_back(r->p_bunch_global);
      ps.push_back(r->p_postselect);
    }
    out[g].trials = static_cast<int>(t.size());
    out[g].tvd = mean_std(t);
    out[g].p_bunch_site = mean_std(site);
    out[g].p_bunch_global = mean_std(global);
    out[g].p_postselect = mean_std(ps);
    out[g].spearman_tvd_site = spearman(t, site);
  }
  return out;
}

}  // namespace nlbs
