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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace nlbs {

using Rng = std::mt19937_64;

// Independent stream for a (master seed, index path) pair. Workers and trials
// each get their own stream so results do not depend on scheduling.
Rng derive_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path);

// Stable 64-bit seed value derived the same way, for recording in outputs.
std::uint64_t derive_seed(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path);

}  // namespace nlbs
