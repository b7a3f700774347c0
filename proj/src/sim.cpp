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

#include "nlbs/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "nlbs/error.hpp"
#include "nlbs/parallel.hpp"

namespace nlbs {

ComplexMatrix embed_gadget(std::size_t m, std::size_t x, const ComplexMatrix& u_eff) {
  if (x < 1 || x > m) {
    throw DomainError("gadget mode " + std::to_string(x) + " out of range 1.." +
                      std::to_string(m));
  }
  if (!u_eff.is_square() || u_eff.rows() < 2) throw DomainError("bad gadget matrix");
  const std::size_t k = u_eff.rows() - 1;
  std::vector<std::size_t> ports{x - 1};
  for (std::size_t a = 0; a < k; ++a) ports.push_back(m + a);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(m + k, m + k);
  for (std::size_t a = 0; a <= k; ++a) {
    for (std::size_t b = 0; b <= k; ++b) g(ports[a], ports[b]) = u_eff(a, b);
  }
  return ComplexMatrix(std::move(g));
}

SimulationSetup build_setup(const ComplexMatrix& w, const ComplexMatrix& v, std::size_t x,
                            const FockState& s, const GadgetSpec& gadget) {
  if (!w.is_square() || !v.is_square() || w.rows() != v.rows()) {
    throw DomainError("W and V must be square matrices of the same size");
  }
  const std::size_t m = w.rows();
  if (s.modes() != m) throw DomainError("input state does not match the network size");
  if (gadget.k < 1 || gadget.u_eff.rows() != static_cast<std::size_t>(gadget.k) + 1) {
    throw DomainError("gadget must have k >= 1 and a (k+1)x(k+1) matrix");
  }
  require_unitary(w, kUnitarityTol, "W");
  require_unitary(v, kUnitarityTol, "V");
  require_unitary(gadget.u_eff, gadget.unitarity_tolerance, "gadget matrix");

  const std::size_t k = static_cast<std::size_t>(gadget.k);
  const ComplexMatrix id = ComplexMatrix::identity(k);
  SimulationSetup setup{w, v, x, s, gadget, {}, {}};
  setup.enlarged = sequence(sequence(direct_sum(w, id), embed_gadget(m, x, gadget.u_eff)),
                            direct_sum(v, id));
  require_unitary(setup.enlarged, std::max(1e-10, 2.0 * gadget.unitarity_tolerance),
                  "enlarged network");
  setup.enlarged_input = concat_states(s, FockState(std::vector<int>(k, 1)));
  return setup;
}

bool heralded(const FockState& outcome, std::size_t system_modes) {
  for (std::size_t i = system_modes; i < outcome.modes(); ++i) {
    if (outcome[i] != 1) return false;
  }
  return true;
}

Postselected postselected_distribution(const SimulationSetup& setup, unsigned workers) {
  const std::size_t m = setup.modes();
  const auto k = static_cast<std::size_t>(setup.ancillas());
  auto space = enumerate_states_guarded(static_cast<int>(m), setup.input.photons(),
                                        kMaxMaterializedStates);
  const auto rows = mode_multiset(setup.enlarged_input);
  const double sqrt_in =
      std::sqrt(static_cast<double>(normalization_product(setup.enlarged_input)));

  std::vector<double> probs(space->size());
  parallel_for(space->size(), workers, [&](std::size_t t) {
    const auto system = space->mode_list(t);
    std::vector<int> cols(system.begin(), system.end());
    for (std::size_t a = 0; a < k; ++a) cols.push_back(static_cast<int>(m + a));
    const Complex amp = permanent_of_selection(setup.enlarged.eigen(), rows, cols) /
                        (sqrt_in * space->sqrt_normalization(t));
    probs[t] = std::norm(amp);
  });
  const double kept = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(kept > 0.0)) {
    throw DomainError("degenerate post-selection: heralding probability is zero");
  }
  for (double& p : probs) p /= kept;
  return {Distribution(std::move(space), std::move(probs)), kept};
}

Distribution enlarged_distribution(const SimulationSetup& setup, unsigned workers) {
  auto space = enumerate_states_guarded(static_cast<int>(setup.enlarged.rows()),
                                        setup.enlarged_input.photons(),
                                        kMaxMaterializedStates);
  const auto amps = amplitudes_to_space(setup.enlarged, setup.enlarged_input, *space, workers);
  std::vector<double> probs(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) probs[i] = std::min(1.0, std::norm(amps[i]));
  return Distribution(std::move(space), std::move(probs));
}

Algorithm1Result run_algorithm1(const SimulationSetup& setup, std::size_t n_samples, Rng& rng,
                                std::uint64_t trial_budget) {
  const std::size_t m = setup.modes();
  const Distribution full = enlarged_distribution(setup);
  std::vector<double> cdf(full.size());
  std::partial_sum(full.probabilities().begin(), full.probabilities().end(), cdf.begin());
  const double total = cdf.back();

  // Map heralded enlarged outcomes onto ranks of the m-mode space once.
  Algorithm1Result result;
  result.space = enumerate_states(static_cast<int>(m), setup.input.photons());
  constexpr std::size_t kRejected = static_cast<std::size_t>(-1);
  std::vector<std::size_t> projected(full.size(), kRejected);
  for (std::size_t r = 0; r < full.size(); ++r) {
    const FockState& outcome = full.space()[r];
    if (!heralded(outcome, m)) continue;
    std::vector<int> system(outcome.occupations().begin(), outcome.occupations().begin() + m);
    projected[r] = result.space->rank(FockState(std::move(system)));
  }

  constexpr std::uint64_t kRateCheckAfter = 1'000'000;
  std::uniform_real_distribution<double> uniform(0.0, total);
  result.ranks.reserve(n_samples);
  result.trials_per_sample.reserve(n_samples);
  std::uint64_t since_last = 0;
  while (result.ranks.size() < n_samples) {
    if (result.total_trials >= trial_budget ||
        (result.total_trials >= kRateCheckAfter && result.acceptance_rate() < 1e-6)) {
      std::ostringstream msg;
      msg << "post-selection acceptance too low: " << result.ranks.size() << " of "
          << n_samples << " samples accepted after " << result.total_trials
          << " trials (rate " << result.acceptance_rate() << ")";
      throw NotFoundError(msg.str());
    }
    const double u = uniform(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t r = static_cast<std::size_t>(it - cdf.begin());
    if (it == cdf.end()) {
      r = cdf.size() - 1;
      while (full[r] == 0.0 && r > 0) --r;
    }
    ++result.total_trials;
    ++since_last;
    if (projected[r] == kRejected) continue;
    result.ranks.push_back(projected[r]);
    result.trials_per_sample.push_back(since_last);
    since_last = 0;
  }
  return result;
}

}  // namespace nlbs
