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
#include <vector>

#include "nlbs/fock.hpp"
#include "nlbs/gadget.hpp"
#include "nlbs/linalg.hpp"
#include "nlbs/linear_bs.hpp"

namespace nlbs {

// Linear-optical stand-in for W -> exp(-i n_x^2 phi) -> V: the gadget takes
// mode x on its first port and k ancilla modes m+1..m+k, each fed one photon.
struct SimulationSetup {
  ComplexMatrix w;
  ComplexMatrix v;
  std::size_t mode_x = 1;  // 1-based
  FockState input;
  GadgetSpec gadget;
  ComplexMatrix enlarged;    // (m+k) x (m+k)
  FockState enlarged_input;  // input followed by k single photons

  std::size_t modes() const { return w.rows(); }
  int ancillas() const { return gadget.k; }
};

// (m+k)-mode identity with u_eff placed on modes {x, m+1, ..., m+k}.
ComplexMatrix embed_gadget(std::size_t m, std::size_t x, const ComplexMatrix& u_eff);

SimulationSetup build_setup(const ComplexMatrix& w, const ComplexMatrix& v, std::size_t x,
                            const FockState& s, const GadgetSpec& gadget);

struct Postselected {
  Distribution distribution;  // renormalized, over the m-mode n-photon space
  double p_postselect = 0.0;  // mass kept before renormalization
};

// Only the heralded outcomes (one photon per ancilla) are evaluated.
Postselected postselected_distribution(const SimulationSetup& setup, unsigned workers = 1);

// Full output distribution of the enlarged network (guarded).
Distribution enlarged_distribution(const SimulationSetup& setup, unsigned workers = 1);

// Whether an enlarged outcome carries exactly one photon in every ancilla mode.
bool heralded(const FockState& enlarged_outcome, std::size_t system_modes);

struct Algorithm1Result {
  StateSpacePtr space;                        // m-mode n-photon space
  std::vector<std::size_t> ranks;             // accepted samples, ranks in `space`
  std::vector<std::uint64_t> trials_per_sample;
  std::uint64_t total_trials = 0;

  double acceptance_rate() const {
    return total_trials ? static_cast<double>(ranks.size()) / static_cast<double>(total_trials)
                        : 0.0;
  }
};

inline constexpr std::uint64_t kDefaultTrialBudget = 100'000'000;

// Rejection sampling: draw enlarged events, keep heralded ones, until
// n_samples are accepted.
Algorithm1Result run_algorithm1(const SimulationSetup& setup, std::size_t n_samples, Rng& rng,
                                std::uint64_t trial_budget = kDefaultTrialBudget);

}  // namespace nlbs
