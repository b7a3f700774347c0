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

#include "nlbs/linear_bs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nlbs/error.hpp"
#include "nlbs/parallel.hpp"

namespace nlbs {

Distribution::Distribution(StateSpacePtr space, std::vector<double> probabilities)
    : space_(std::move(space)), probs_(std::move(probabilities)) {
  if (!space_) throw DomainError("distribution without a state space");
  if (probs_.size() != space_->size()) {
    throw DomainError("distribution has " + std::to_string(probs_.size()) +
                      " probabilities for " + std::to_string(space_->size()) + " states");
  }
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0 + 1e-9)) {
      throw DomainError("probability " + std::to_string(p) + " outside [0, 1]");
    }
  }
}

double Distribution::total() const {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

Distribution Distribution::normalized() const {
  const double t = total();
  if (!(t > 0.0)) throw DomainError("cannot normalize a distribution with zero mass");
  std::vector<double> out(probs_.size());
  std::transform(probs_.begin(), probs_.end(), out.begin(), [t](double p) { return p / t; });
  return Distribution(space_, std::move(out));
}

bool Distribution::same_space(const Distribution& other) const {
  return space_->modes() == other.space_->modes() &&
         space_->photons() == other.space_->photons();
}

ComplexMatrix sequence(const ComplexMatrix& first, const ComplexMatrix& second) {
  return matmul(first, second);
}

namespace {

void check_states(const ComplexMatrix& u, const FockState& s, const FockState& t) {
  if (!u.is_square()) throw DomainError("evolution matrix must be square");
  if (s.modes() != u.rows() || t.modes() != u.rows()) {
    throw DomainError("state mode count does not match a " + std::to_string(u.rows()) +
                      "-mode network");
  }
  if (s.photons() != t.photons()) {
    throw DomainError("photon numbers differ: " + s.to_string() + " vs " + t.to_string());
  }
}

}  // namespace

Complex amplitude(const ComplexMatrix& u, const FockState& s, const FockState& t) {
  check_states(u, s, t);
  require_unitary(u, kUnitarityTol, "evolution matrix");
  const auto rows = mode_multiset(s);
  const auto cols = mode_multiset(t);
  const double norm = std::sqrt(static_cast<double>(normalization_product(s)) *
                                static_cast<double>(normalization_product(t)));
  return permanent_of_selection(u.eigen(), rows, cols) / norm;
}

std::vector<Complex> amplitudes_to_space(const ComplexMatrix& u, const FockState& s,
                                         const StateSpace& space, unsigned workers) {
  if (static_cast<int>(s.modes()) != space.modes() || s.photons() != space.photons()) {
    throw DomainError("input state " + s.to_string() + " does not match the output space");
  }
  if (u.rows() != s.modes() || !u.is_square()) {
    throw DomainError("state mode count does not match the network dimension");
  }
  const auto rows = mode_multiset(s);
  const double sqrt_s = std::sqrt(static_cast<double>(normalization_product(s)));
  std::vector<Complex> out(space.size());
  parallel_for(space.size(), workers, [&](std::size_t r) {
    out[r] = permanent_of_selection(u.eigen(), rows, space.mode_list(r)) /
             (sqrt_s * space.sqrt_normalization(r));
  });
  return out;
}

Distribution output_distribution(const ComplexMatrix& u, const FockState& s,
                                 unsigned workers) {
  require_unitary(u, kUnitarityTol, "evolution matrix");
  if (s.modes() != u.rows()) {
    throw DomainError("input state mode count does not match the network dimension");
  }
  auto space = enumerate_states_guarded(static_cast<int>(s.modes()), s.photons(),
                                        kMaxMaterializedStates);
  const auto amps = amplitudes_to_space(u, s, *space, workers);
  std::vector<double> probs(amps.size());
  std::transform(amps.begin(), amps.end(), probs.begin(),
                 [](Complex a) { return std::norm(a); });
  return Distribution(std::move(space), std::move(probs));
}

std::vector<std::size_t> sample_ranks(const Distribution& dist, std::size_t count, Rng& rng) {
  std::vector<double> cdf(dist.size());
  std::partial_sum(dist.probabilities().begin(), dist.probabilities().end(), cdf.begin());
  const double total = cdf.empty() ? 0.0 : cdf.back();
  if (!(total > 0.0)) throw DomainError("cannot sample from a distribution with zero mass");
  std::uniform_real_distribution<double> uniform(0.0, total);
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = uniform(rng);
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    std::size_t r = static_cast<std::size_t>(it - cdf.begin());
    if (it == cdf.end()) {
      // x rounded up to the total: take the last state with non-zero mass
      r = cdf.size() - 1;
      while (dist[r] == 0.0 && r > 0) --r;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<FockState> sample_exact(const ComplexMatrix& u, const FockState& s,
                                    std::size_t count, Rng& rng) {
  const Distribution dist = output_distribution(u, s);
  std::vector<FockState> out;
  out.reserve(count);
  for (std::size_t r : sample_ranks(dist, count, rng)) out.push_back(dist.space()[r]);
  return out;
}

double verify_composition(const ComplexMatrix& w, const ComplexMatrix& v,
                          const FockState& s, const FockState& t) {
  check_states(w, s, t);
  check_states(v, s, t);
  require_unitary(w, kUnitarityTol, "first network");
  require_unitary(v, kUnitarityTol, "second network");
  const ComplexMatrix u = sequence(w, v);
  const auto rows = mode_multiset(s);
  const auto cols = mode_multiset(t);
  const Complex direct = permanent_of_selection(u.eigen(), rows, cols);

  const auto space = enumerate_states_guarded(static_cast<int>(s.modes()), s.photons(),
                                              kMaxMaterializedStates);
  Complex path_sum = 0.0;
  for (std::size_t r = 0; r < space->size(); ++r) {
    const auto mid = space->mode_list(r);
    const double rfact = space->sqrt_normalization(r) * space->sqrt_normalization(r);
    path_sum += permanent_of_selection(w.eigen(), rows, mid) *
                permanent_of_selection(v.eigen(), mid, cols) / rfact;
  }
  return std::abs(direct - path_sum);
}

Distribution empirical_distribution(const StateSpacePtr& space,
                                    std::span<const std::size_t> ranks) {
  std::vector<double> counts(space->size(), 0.0);
  for (std::size_t r : ranks) {
    if (r >= counts.size()) throw DomainError("sample rank out of range");
    counts[r] += 1.0;
  }
  const double n = static_cast<double>(ranks.size());
  if (n > 0) {
    for (double& c : counts) c /= n;
  }
  return Distribution(space, std::move(counts));
}

}  // namespace nlbs
