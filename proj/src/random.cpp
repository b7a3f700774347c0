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

#include "nlbs/random.hpp"

#include <vector>

namespace nlbs {

std::uint64_t derive_seed(std::uint64_t master_seed,
                          std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.push_back(static_cast<std::uint32_t>(master_seed));
  words.push_back(static_cast<std::uint32_t>(master_seed >> 32));
  for (std::uint64_t p : path) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

Rng derive_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path) {
  return Rng(derive_seed(master_seed, path));
}

}  // namespace nlbs
