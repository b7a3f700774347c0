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

#include "nlbs/nonlinear_bs.hpp"

#include <cmath>
#include <string>

#include "nlbs/error.hpp"
#include "nlbs/parallel.hpp"

namespace nlbs {

namespace {

Complex phase(double angle) { return std::polar(1.0, angle); }

void check_mode(std::size_t x, std::size_t m) {
  if (x < 1 || x > m) {
    throw DomainError("non-linear mode " + std::to_string(x) + " out of range 1.." +
                      std::to_string(m));
  }
}

void check_setup(const ComplexMatrix& w, const ComplexMatrix& v, const FockState& s) {
  if (!w.is_square() || !v.is_square() || w.rows() != v.rows()) {
    throw DomainError("W and V must be square matrices of the same size");
  }
  if (s.modes() != w.rows()) {
    throw DomainError("input state " + s.to_string() + " does not have " +
                      std::to_string(w.rows()) + " modes");
  }
  require_unitary(w, kUnitarityTol, "W");
  require_unitary(v, kUnitarityTol, "V");
}

void check_output(const FockState& s, const FockState& t) {
  if (t.modes() != s.modes() || t.photons() != s.photons()) {
    throw DomainError("output state " + t.to_string() + " does not match input " +
                      s.to_string());
  }
}

StateSpacePtr space_for(const FockState& s) {
  return enumerate_states_guarded(static_cast<int>(s.modes()), s.photons(),
                                  kMaxMaterializedStates);
}

}  // namespace

Complex NonlinearGate::factor(const FockState& r) const {
  if (const auto* p = std::get_if<SingleModePhase>(&kind_)) {
    check_mode(p->mode, r.modes());
    const double rx = r[p->mode - 1];
    return phase(-rx * rx * p->phi);
  }
  if (const auto* d = std::get_if<DiagonalGate>(&kind_)) {
    const Complex f = d->factor(r);
    if (std::abs(std::abs(f) - 1.0) > 1e-9) {
      throw DomainError("diagonal gate factor for " + r.to_string() +
                        " does not have unit modulus");
    }
    return f;
  }
  throw DomainError("dense gates have no diagonal factor");
}

void NonlinearExperiment::validate() const {
  check_setup(w, v, input);
  if (const auto* p = std::get_if<SingleModePhase>(&gate.kind())) {
    check_mode(p->mode, modes());
  }
  if (const auto* d = std::get_if<DenseGate>(&gate.kind())) {
    const auto count = StateSpace::count(static_cast<int>(modes()), input.photons());
    if (count > kMaxDenseGateStates) {
      throw LimitError("dense non-linear gates are limited to " +
                       std::to_string(kMaxDenseGateStates) + " states");
    }
    if (d->matrix.rows() != count || d->matrix.cols() != count) {
      throw DomainError("dense gate must be a " + std::to_string(count) + "x" +
                        std::to_string(count) + " matrix over the photon space");
    }
    require_unitary(d->matrix, kUnitarityTol, "dense non-linear gate");
  }
  if (const auto* d = std::get_if<DiagonalGate>(&gate.kind())) {
    if (!d->factor) throw DomainError("diagonal gate without a factor function");
  }
}

std::vector<Complex> nl_amplitudes_general(const NonlinearExperiment& exp, unsigned workers) {
  exp.validate();
  const auto space = space_for(exp.input);
  const std::size_t size = space->size();

  // Amplitudes into the intermediate states, then through the gate.
  const auto after_w = amplitudes_to_space(exp.w, exp.input, *space, workers);
  std::vector<Complex> after_gate(size);
  if (exp.gate.is_diagonal()) {
    for (std::size_t r = 0; r < size; ++r) after_gate[r] = after_w[r] * exp.gate.factor((*space)[r]);
  } else {
    const auto& n = std::get<DenseGate>(exp.gate.kind()).matrix;
    for (std::size_t q = 0; q < size; ++q) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < size; ++r) acc += after_w[r] * n(r, q);
      after_gate[q] = acc;
    }
  }

  std::vector<Complex> out(size);
  parallel_for(size, workers, [&](std::size_t t) {
    const auto cols = space->mode_list(t);
    const double sqrt_t = space->sqrt_normalization(t);
    Complex acc = 0.0;
    for (std::size_t q = 0; q < size; ++q) {
      if (after_gate[q] == 0.0) continue;
      acc += after_gate[q] * permanent_of_selection(exp.v.eigen(), space->mode_list(q), cols) /
             (space->sqrt_normalization(q) * sqrt_t);
    }
    out[t] = acc;
  });
  return out;
}

Complex nl_amplitude_general(const NonlinearExperiment& exp, const FockState& t) {
  exp.validate();
  check_output(exp.input, t);
  const auto space = space_for(exp.input);
  const auto after_w = amplitudes_to_space(exp.w, exp.input, *space);
  const auto cols = mode_multiset(t);
  const double sqrt_t = std::sqrt(static_cast<double>(normalization_product(t)));
  const std::size_t size = space->size();

  auto through_v = [&](std::size_t q) {
    return permanent_of_selection(exp.v.eigen(), space->mode_list(q), cols) /
           (space->sqrt_normalization(q) * sqrt_t);
  };

  Complex acc = 0.0;
  if (exp.gate.is_diagonal()) {
    for (std::size_t r = 0; r < size; ++r) {
      acc += after_w[r] * exp.gate.factor((*space)[r]) * through_v(r);
    }
  } else {
    const auto& n = std::get<DenseGate>(exp.gate.kind()).matrix;
    for (std::size_t q = 0; q < size; ++q) {
      Complex into_q = 0.0;
      for (std::size_t r = 0; r < size; ++r) into_q += after_w[r] * n(r, q);
      acc += into_q * through_v(q);
    }
  }
  return acc;
}

Complex nlp_amplitude(const ComplexMatrix& w, std::size_t x, double phi,
                      const ComplexMatrix& v, const FockState& s, const FockState& t) {
  check_setup(w, v, s);
  check_mode(x, w.rows());
  check_output(s, t);
  const auto space = space_for(s);
  const auto rows = mode_multiset(s);
  const auto cols = mode_multiset(t);
  const double st = std::sqrt(static_cast<double>(normalization_product(s)) *
                              static_cast<double>(normalization_product(t)));
  Complex acc = 0.0;
  for (std::size_t r = 0; r < space->size(); ++r) {
    const double rx = (*space)[r][x - 1];
    const auto mid = space->mode_list(r);
    const double rfact = space->sqrt_normalization(r) * space->sqrt_normalization(r);
    acc += phase(-rx * rx * phi) * permanent_of_selection(w.eigen(), rows, mid) *
           permanent_of_selection(v.eigen(), mid, cols) / (st * rfact);
  }
  return acc;
}

std::vector<Complex> nlp_amplitudes(const ComplexMatrix& w, std::size_t x, double phi,
                                    const ComplexMatrix& v, const FockState& s,
                                    unsigned workers) {
  check_setup(w, v, s);
  check_mode(x, w.rows());
  const auto space = space_for(s);
  const std::size_t size = space->size();
  const auto rows = mode_multiset(s);
  const double sqrt_s = std::sqrt(static_cast<double>(normalization_product(s)));

  std::vector<Complex> weighted(size);
  for (std::size_t r = 0; r < size; ++r) {
    const double rx = (*space)[r][x - 1];
    const double rfact = space->sqrt_normalization(r) * space->sqrt_normalization(r);
    weighted[r] = phase(-rx * rx * phi) *
                  permanent_of_selection(w.eigen(), rows, space->mode_list(r)) / (sqrt_s * rfact);
  }
  std::vector<Complex> out(size);
  parallel_for(size, workers, [&](std::size_t t) {
    const auto cols = space->mode_list(t);
    Complex acc = 0.0;
    for (std::size_t r = 0; r < size; ++r) {
      if (weighted[r] == 0.0) continue;
      acc += weighted[r] * permanent_of_selection(v.eigen(), space->mode_list(r), cols);
    }
    out[t] = acc / space->sqrt_normalization(t);
  });
  return out;
}

ComplexMatrix ubar(const ComplexMatrix& w, std::size_t x, double phi, const ComplexMatrix& v) {
  if (!w.is_square() || !v.is_square() || w.rows() != v.rows()) {
    throw DomainError("W and V must be square matrices of the same size");
  }
  return sequence(sequence(w, phase_shifter(w.rows(), x, phi)), v);
}

Complex nlp_amplitude_split(const ComplexMatrix& w, std::size_t x, double phi,
                            const ComplexMatrix& v, const FockState& s, const FockState& t) {
  check_setup(w, v, s);
  check_mode(x, w.rows());
  check_output(s, t);
  const auto rows = mode_multiset(s);
  const auto cols = mode_multiset(t);
  const double st = std::sqrt(static_cast<double>(normalization_product(s)) *
                              static_cast<double>(normalization_product(t)));
  const ComplexMatrix linear = ubar(w, x, phi, v);
  Complex acc = permanent_of_selection(linear.eigen(), rows, cols) / st;

  const auto space = space_for(s);
  for (std::size_t r = 0; r < space->size(); ++r) {
    const double rx = (*space)[r][x - 1];
    if (rx <= 1) continue;
    const auto mid = space->mode_list(r);
    const double rfact = space->sqrt_normalization(r) * space->sqrt_normalization(r);
    acc += (phase(-rx * rx * phi) - phase(-rx * phi)) *
           permanent_of_selection(w.eigen(), rows, mid) *
           permanent_of_selection(v.eigen(), mid, cols) / (st * rfact);
  }
  return acc;
}

namespace {

Distribution to_distribution(const FockState& s, const std::vector<Complex>& amps) {
  std::vector<double> probs(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) probs[i] = std::norm(amps[i]);
  return Distribution(space_for(s), std::move(probs));
}

}  // namespace

Distribution nl_distribution(const NonlinearExperiment& exp, unsigned workers) {
  return to_distribution(exp.input, nl_amplitudes_general(exp, workers));
}

Distribution nlp_distribution(const ComplexMatrix& w, std::size_t x, double phi,
                              const ComplexMatrix& v, const FockState& s, unsigned workers) {
  return to_distribution(s, nlp_amplitudes(w, x, phi, v, s, workers));
}

}  // namespace nlbs
