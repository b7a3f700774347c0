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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nlbs/fock.hpp"
#include "nlbs/gadget.hpp"
#include "nlbs/linalg.hpp"
#include "nlbs/linear_bs.hpp"
#include "nlbs/nonlinear_bs.hpp"

namespace nlbs {

// Half the L1 distance; DomainError when the spaces differ.
double tvd(const Distribution& p, const Distribution& q);

// Mass of intermediate states (after W) with more than k photons on mode x.
double bunching_at_site(const ComplexMatrix& w, const FockState& s, std::size_t x, int k);
// Mass of intermediate states with more than k photons on any mode.
double bunching_global(const ComplexMatrix& w, const FockState& s, int k);

struct SortedCumulative {
  std::vector<double> sorted;      // descending
  std::vector<double> cumulative;  // running sums of `sorted`
};
SortedCumulative sorted_cumulative(const Distribution& dist);

// Smallest fraction of outcomes, taken in order of decreasing probability,
// whose mass reaches p.
double fraction_for_threshold(const Distribution& dist, double p);

struct AmplitudeMetrics {
  std::optional<double> relative_modulus;  // empty when a_ref = 0
  double phase_difference = 0.0;           // in [0, pi]
};
AmplitudeMetrics amplitude_metrics(Complex a_nl, Complex a_ref);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};
MeanStd mean_std(std::span<const double> values);

// Spearman rank correlation (average ranks for ties). NaN when either side is
// constant.
double spearman(std::span<const double> a, std::span<const double> b);

// Single photons in the first n of m modes.
FockState standard_input(int n, int m);

// Mass of outputs with at most n_max photons per mode, over Haar unitaries.
MeanStd haar_truncation_study(int n, int m, int n_max, int n_unit, std::uint64_t seed,
                              unsigned workers = 1);

// fraction_for_threshold averaged over Haar unitaries, one entry per threshold.
std::vector<MeanStd> cumulative_study(int n, int m, std::span<const double> thresholds,
                                      int n_unit, std::uint64_t seed, unsigned workers = 1);

struct LinearSearchResult {
  double best_tvd = 1.0;
  ComplexMatrix best_unitary;
  std::vector<double> trace;  // running minimum after each iteration
};
LinearSearchResult random_linear_search(const NonlinearExperiment& exp, int iterations, Rng& rng);

struct PerturbationPoint {
  double phi = 0.0;
  MeanStd tvd_linear;  // against the phase-free composite W then V
  MeanStd tvd_ubar;    // against the linear-phase evolution
  MeanStd relative_modulus;
  MeanStd phase_difference;
};
// Amplitude metrics are taken against the linear-phase evolution over all
// outputs with a nonzero reference amplitude.
std::vector<PerturbationPoint> perturbation_study(int n, int m, std::span<const double> phis,
                                                  int n_unit, std::uint64_t seed,
                                                  unsigned workers = 1);

struct ExperimentRecord {
  int n = 0;
  int m = 0;
  int k = 0;
  double phi = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;  // per-trial seed
  double tvd = 0.0;
  double p_bunch_site = 0.0;
  double p_bunch_global = 0.0;
  double p_postselect = 0.0;
};

enum class ReferenceKind { kGadget, kDirect };

struct TvdBunchingOptions {
  int n = 3;
  std::vector<int> modes{5, 9, 16, 27};
  std::vector<int> ks{1, 2};
  double phi = 1.5707963267948966;
  int trials = 100;
  std::uint64_t seed = 1;
  ReferenceKind reference = ReferenceKind::kGadget;
  int gadget_starts = 20;
  unsigned workers = 1;
};

struct TvdBunchingResult {
  std::vector<ExperimentRecord> records;  // ordered by m, then k, then trial
  std::map<int, GadgetSpec> gadgets;      // per k, including the reference
};

// Gadgets are synthesized once per k. Each (m, trial) draws W and V from its
// own stream, shared by every k.
TvdBunchingResult experiment_tvd_vs_bunching(const TvdBunchingOptions& options);

struct GroupSummary {
  int m = 0;
  int k = 0;
  int trials = 0;
  MeanStd tvd;
  MeanStd p_bunch_site;
  MeanStd p_bunch_global;
  MeanStd p_postselect;
  double spearman_tvd_site = 0.0;
};
// One entry per (m, k) in record order.
std::vector<GroupSummary> summarize(std::span<const ExperimentRecord> records);

}  // namespace nlbs
