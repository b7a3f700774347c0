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

#include "nlbs/fock.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlbs/error.hpp"

namespace nlbs {

FockState::FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
  for (int o : occ_) {
    if (o < 0) throw DomainError("negative occupation number in Fock state");
    photons_ += o;
  }
}

FockState FockState::parse(std::string_view text) {
  std::vector<int> occ;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view field = text.substr(pos, comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (field.empty()) {
      if (text.empty()) break;
      throw DomainError("empty field in Fock state '" + std::string(text) + "'");
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw DomainError("bad occupation '" + std::string(field) + "' in Fock state");
    }
    occ.push_back(value);
    pos = comma + 1;
  }
  return FockState(std::move(occ));
}

std::string FockState::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < occ_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(occ_[i]);
  }
  return out;
}

std::uint64_t normalization_product(const FockState& state) {
  std::uint64_t product = 1;
  for (int o : state.occupations()) {
    for (int f = 2; f <= o; ++f) {
      if (product > std::numeric_limits<std::uint64_t>::max() / f) {
        throw LimitError("factorial product overflows 64 bits");
      }
      product *= static_cast<std::uint64_t>(f);
    }
  }
  return product;
}

FockState concat_states(const FockState& a, const FockState& b) {
  std::vector<int> occ(a.occupations().begin(), a.occupations().end());
  occ.insert(occ.end(), b.occupations().begin(), b.occupations().end());
  return FockState(std::move(occ));
}

std::vector<int> mode_multiset(const FockState& state) {
  std::vector<int> out;
  out.reserve(state.photons());
  for (std::size_t i = 0; i < state.modes(); ++i) {
    for (int c = 0; c < state[i]; ++c) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // exact at every step: r * (n - k + i) is divisible by i
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::uint64_t StateSpace::count(int modes, int photons) {
  if (modes <= 0 || photons < 0) return 0;
  return binomial(photons + modes - 1, photons);
}

namespace {

void fill_descending(int mode, int remaining, std::vector<int>& current,
                     std::vector<FockState>& out) {
  const int m = static_cast<int>(current.size());
  if (mode == m - 1) {
    current[mode] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[mode] = v;
    fill_descending(mode + 1, remaining - v, current, out);
  }
}

}  // namespace

StateSpace::StateSpace(int modes, int photons) : modes_(modes), photons_(photons) {
  if (modes < 1) throw DomainError("state space needs at least one mode");
  if (photons < 0) throw DomainError("negative photon number");
  states_.reserve(count(modes, photons));
  std::vector<int> current(modes, 0);
  fill_descending(0, photons, current, states_);
  mode_lists_.reserve(states_.size() * static_cast<std::size_t>(photons));
  sqrt_norms_.reserve(states_.size());
  for (const auto& s : states_) {
    const auto ml = mode_multiset(s);
    mode_lists_.insert(mode_lists_.end(), ml.begin(), ml.end());
    sqrt_norms_.push_back(std::sqrt(static_cast<double>(normalization_product(s))));
  }
}

const FockState& StateSpace::unrank(std::size_t rank) const {
  if (rank >= states_.size()) throw DomainError("rank out of range");
  return states_[rank];
}

std::size_t StateSpace::rank(const FockState& state) const {
  if (static_cast<int>(state.modes()) != modes_ || state.photons() != photons_) {
    throw DomainError("state " + state.to_string() + " is not in the space of " +
                      std::to_string(photons_) + " photons in " +
                      std::to_string(modes_) + " modes");
  }
  // States are ordered by descending first occupation, then recursively.
  std::uint64_t r = 0;
  int remaining = photons_;
  for (int i = 0; i + 1 < modes_; ++i) {
    for (int v = remaining; v > state[i]; --v) r += count(modes_ - i - 1, remaining - v);
    remaining -= state[i];
  }
  return static_cast<std::size_t>(r);
}

StateSpacePtr enumerate_states(int modes, int photons) {
  return std::make_shared<const StateSpace>(modes, photons);
}

StateSpacePtr enumerate_states_guarded(int modes, int photons, std::uint64_t max_states) {
  if (modes < 1) throw DomainError("state space needs at least one mode");
  const std::uint64_t n = StateSpace::count(modes, photons);
  if (n > max_states) {
    throw LimitError("state space of " + std::to_string(photons) + " photons in " +
                     std::to_string(modes) + " modes has " + std::to_string(n) +
                     " states, above the limit of " + std::to_string(max_states));
  }
  return enumerate_states(modes, photons);
}

}  // namespace nlbs
