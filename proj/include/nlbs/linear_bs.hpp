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
#include <span>
#include <vector>

#include "nlbs/fock.hpp"
#include "nlbs/linalg.hpp"
#include "nlbs/random.hpp"

namespace nlbs {

// Probabilities over a state space, one per state in the space's order.
class Distribution {
 public:
  Distribution(StateSpacePtr space, std::vector<double> probabilities);

  const StateSpace& space() const { return *space_; }
  const StateSpacePtr& space_ptr() const { return space_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t rank) const { return probs_[rank]; }
  double probability(const FockState& state) const { return probs_[space_->rank(state)]; }
  std::span<const double> probabilities() const { return probs_; }
  double total() const;

  // Copy rescaled to unit total mass.
  Distribution normalized() const;

  bool same_space(const Distribution& other) const;

 private:
  StateSpacePtr space_;
  std::vector<double> probs_;
};

// Composite of two networks traversed in order: photons pass `first`, then
// `second`. Amplitudes use per(U_{S,T}) with rows from the input, so the
// composite matrix is first * second.
ComplexMatrix sequence(const ComplexMatrix& first, const ComplexMatrix& second);

// Transition amplitude per(U_{S,T}) / sqrt(prod s_i! t_j!).
Complex amplitude(const ComplexMatrix& u, const FockState& s, const FockState& t);

// Amplitudes from s to every state of `space`, no unitarity check.
std::vector<Complex> amplitudes_to_space(const ComplexMatrix& u, const FockState& s,
                                         const StateSpace& space, unsigned workers = 1);

Distribution output_distribution(const ComplexMatrix& u, const FockState& s,
                                 unsigned workers = 1);

// Inversion sampling from a materialized distribution; returns state ranks.
std::vector<std::size_t> sample_ranks(const Distribution& dist, std::size_t count, Rng& rng);

std::vector<FockState> sample_exact(const ComplexMatrix& u, const FockState& s,
                                    std::size_t count, Rng& rng);

// |per((sequence(W,V))_{S,T}) - sum_R per(W_{S,R}) per(V_{R,T}) / prod r_i!|
double verify_composition(const ComplexMatrix& w, const ComplexMatrix& v,
                          const FockState& s, const FockState& t);

// Empirical distribution of a sample over `space`.
Distribution empirical_distribution(const StateSpacePtr& space,
                                    std::span<const std::size_t> ranks);

}  // namespace nlbs
