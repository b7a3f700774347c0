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
#include <functional>
#include <variant>
#include <vector>

#include "nlbs/fock.hpp"
#include "nlbs/linalg.hpp"
#include "nlbs/linear_bs.hpp"

namespace nlbs {

// exp(-i n_x^2 phi) on a single mode; `mode` is 1-based.
struct SingleModePhase {
  std::size_t mode = 1;
  double phi = 0.0;
};

// Photon-number-preserving gate that is diagonal in the Fock basis. The
// factor for each state must have unit modulus.
struct DiagonalGate {
  std::function<Complex(const FockState&)> factor;
};

// Arbitrary photon-number-preserving gate given as a matrix over the n-photon
// space (rows: input state rank, columns: output state rank). Only used for
// tiny spaces.
struct DenseGate {
  ComplexMatrix matrix;
};

class NonlinearGate {
 public:
  using Kind = std::variant<SingleModePhase, DiagonalGate, DenseGate>;

  NonlinearGate(Kind kind) : kind_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

  const Kind& kind() const { return kind_; }
  bool is_diagonal() const { return !std::holds_alternative<DenseGate>(kind_); }

  // Diagonal factor N(R); DomainError for dense gates.
  Complex factor(const FockState& r) const;

 private:
  Kind kind_;
};

// W, then the gate, then V, applied to `input`.
struct NonlinearExperiment {
  ComplexMatrix w;
  ComplexMatrix v;
  NonlinearGate gate;
  FockState input;

  std::size_t modes() const { return w.rows(); }
  void validate() const;
};

// Central mode ceil(m/2), 1-based.
inline std::size_t default_nonlinear_mode(std::size_t m) { return (m + 1) / 2; }

inline constexpr std::size_t kMaxDenseGateStates = 2000;

// Feynman path sum over the intermediate states.
Complex nl_amplitude_general(const NonlinearExperiment& exp, const FockState& t);

// Same sum evaluated for every output state at once, caching the W side.
std::vector<Complex> nl_amplitudes_general(const NonlinearExperiment& exp,
                                           unsigned workers = 1);

// Single-sum amplitude of a single-mode non-linear phase (x is 1-based).
Complex nlp_amplitude(const ComplexMatrix& w, std::size_t x, double phi,
                      const ComplexMatrix& v, const FockState& s, const FockState& t);

// Every output state at once; same formula as nlp_amplitude.
std::vector<Complex> nlp_amplitudes(const ComplexMatrix& w, std::size_t x, double phi,
                                    const ComplexMatrix& v, const FockState& s,
                                    unsigned workers = 1);

// Linear-phase term per(Ubar_{S,T}) plus the correction from paths with more
// than one photon on mode x.
Complex nlp_amplitude_split(const ComplexMatrix& w, std::size_t x, double phi,
                            const ComplexMatrix& v, const FockState& s, const FockState& t);

// W, then a linear phase shifter of angle phi on mode x, then V.
ComplexMatrix ubar(const ComplexMatrix& w, std::size_t x, double phi, const ComplexMatrix& v);

Distribution nl_distribution(const NonlinearExperiment& exp, unsigned workers = 1);

// Distribution of the single-mode phase experiment via the single-sum formula.
Distribution nlp_distribution(const ComplexMatrix& w, std::size_t x, double phi,
                              const ComplexMatrix& v, const FockState& s,
                              unsigned workers = 1);

}  // namespace nlbs
