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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlbs {

// Occupation numbers of n photons spread over m modes.
class FockState {
 public:
  FockState() = default;
  explicit FockState(std::vector<int> occupations);

  // Parses the comma-separated text form, e.g. "1,1,0,0".
  static FockState parse(std::string_view text);

  std::size_t modes() const { return occ_.size(); }
  int photons() const { return photons_; }
  int operator[](std::size_t mode) const { return occ_[mode]; }
  std::span<const int> occupations() const { return occ_; }

  std::string to_string() const;

  friend bool operator==(const FockState&, const FockState&) = default;

 private:
  std::vector<int> occ_;
  int photons_ = 0;
};

// Product of the factorials of all occupations.
std::uint64_t normalization_product(const FockState& state);

FockState concat_states(const FockState& a, const FockState& b);

// Mode index list with each mode repeated by its occupation, e.g. (2,0,1) ->
// {0,0,2}. Used to build permanent submatrices.
std::vector<int> mode_multiset(const FockState& state);

std::uint64_t binomial(int n, int k);

// All states of n photons in m modes, in descending lexicographic order.
class StateSpace {
 public:
  StateSpace(int modes, int photons);

  int modes() const { return modes_; }
  int photons() const { return photons_; }
  std::size_t size() const { return states_.size(); }
  const FockState& operator[](std::size_t rank) const { return states_[rank]; }
  const FockState& unrank(std::size_t rank) const;
  std::size_t rank(const FockState& state) const;

  // Mode multiset of the state at `rank` (see mode_multiset).
  std::span<const int> mode_list(std::size_t rank) const {
    return {mode_lists_.data() + rank * static_cast<std::size_t>(photons_),
            static_cast<std::size_t>(photons_)};
  }
  // sqrt(normalization_product) of the state at `rank`.
  double sqrt_normalization(std::size_t rank) const { return sqrt_norms_[rank]; }

  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

  // Number of states without building them.
  static std::uint64_t count(int modes, int photons);

 private:
  int modes_;
  int photons_;
  std::vector<FockState> states_;
  std::vector<int> mode_lists_;
  std::vector<double> sqrt_norms_;
};

using StateSpacePtr = std::shared_ptr<const StateSpace>;

StateSpacePtr enumerate_states(int modes, int photons);

// enumerate_states behind a size guard.
StateSpacePtr enumerate_states_guarded(int modes, int photons,
                                       std::uint64_t max_states);

inline constexpr std::uint64_t kMaxMaterializedStates = 1'000'000;

}  // namespace nlbs
