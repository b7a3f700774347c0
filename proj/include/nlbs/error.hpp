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

#include <stdexcept>
#include <string>

namespace nlbs {

// Precondition violated by a caller-supplied value (bad shape, photon count
// mismatch, out-of-range mode, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A request that would exceed one of the materialization guards.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search or sampling procedure that ran out of budget.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlbs
