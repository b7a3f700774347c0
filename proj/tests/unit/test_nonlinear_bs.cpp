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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlbs/analysis.hpp"
#include "nlbs/error.hpp"
#include "nlbs/nonlinear_bs.hpp"
#include "oracle.hpp"

using nlbs::Complex;
using nlbs::ComplexMatrix;
using nlbs::FockState;
using std::numbers::pi;

namespace {

struct Instance {
  ComplexMatrix w, v;
  std::size_t x;
  double phi;
  FockState s;
};

Instance random_instance(nlbs::Rng& rng, int max_m, int max_n) {
  std::uniform_int_distribution<int> pm(2, max_m);
  const int m = pm(rng);
  std::uniform_int_distribution<int> pn(1, std::min(max_n, m));
  const int n = pn(rng);
  std::uniform_int_distribution<std::size_t> px(1, static_cast<std::size_t>(m));
  std::uniform_real_distribution<double> pphi(0.0, 2 * pi);
  const std::size_t x = px(rng);
  const double phi = pphi(rng);
  return {nlbs::haar_unitary(m, rng), nlbs::haar_unitary(m, rng), x, phi,
          oracle::random_state(m, n, rng)};
}

}  // namespace

TEST_CASE("HOM with a non-linear phase of pi/4") {
  const ComplexMatrix bs = oracle::beam_splitter();
  const FockState s({1, 1});
  const auto nl = nlbs::nlp_distribution(bs, 1, pi / 4, bs, s);
  CHECK(nl.probability(FockState({2, 0})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(nl.probability(FockState({1, 1})) == doctest::Approx(0.0));
  CHECK(nl.probability(FockState({0, 2})) == doctest::Approx(0.5).epsilon(1e-12));
  const auto lin = nlbs::output_distribution(nlbs::ubar(bs, 1, pi / 4, bs), s);
  CHECK(lin.probability(FockState({2, 0})) == doctest::Approx(0.25));
  CHECK(lin.probability(FockState({1, 1})) == doctest::Approx(0.5));
  CHECK(lin.probability(FockState({0, 2})) == doctest::Approx(0.25));
  CHECK(nlbs::tvd(nl, lin) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("single-sum amplitudes match the staged operator expansion") {
  nlbs::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance in = random_instance(rng, 5, 3);
    const auto state = oracle::nonlinear_state(in.w, in.x, in.phi, in.v, in.s);
    const auto space = nlbs::enumerate_states(static_cast<int>(in.s.modes()), in.s.photons());
    const auto amps = nlbs::nlp_amplitudes(in.w, in.x, in.phi, in.v, in.s);
    for (std::size_t r = 0; r < space->size(); ++r) {
      CHECK(std::abs(amps[r] - oracle::project(state, (*space)[r])) < 1e-12);
    }
  }
}

TEST_CASE("general path sum, single sum and split form agree") {
  nlbs::Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance in = random_instance(rng, 6, 3);
    const nlbs::NonlinearExperiment phase{in.w, in.v,
                                          nlbs::NonlinearGate(nlbs::SingleModePhase{in.x, in.phi}),
                                          in.s};
    const std::size_t x = in.x;
    const double phi = in.phi;
    const nlbs::NonlinearExperiment diag{
        in.w, in.v, nlbs::NonlinearGate(nlbs::DiagonalGate{[x, phi](const FockState& r) {
          const double n = r[x - 1];
          return std::exp(Complex(0.0, -n * n * phi));
        }}),
        in.s};
    const auto space = nlbs::enumerate_states(static_cast<int>(in.s.modes()), in.s.photons());
    const auto general = nlbs::nl_amplitudes_general(diag, 2);
    const auto single = nlbs::nlp_amplitudes(in.w, in.x, in.phi, in.v, in.s);
    for (std::size_t r = 0; r < space->size(); ++r) {
      const FockState& t = (*space)[r];
      const Complex split = nlbs::nlp_amplitude_split(in.w, in.x, in.phi, in.v, in.s, t);
      const Complex literal = nlbs::nlp_amplitude(in.w, in.x, in.phi, in.v, in.s, t);
      const Complex one = nlbs::nl_amplitude_general(phase, t);
      CHECK(std::abs(general[r] - single[r]) <= 1e-12);
      CHECK(std::abs(split - single[r]) <= 1e-12);
      CHECK(std::abs(literal - single[r]) <= 1e-12);
      CHECK(std::abs(one - single[r]) <= 1e-12);
    }
  }
}

TEST_CASE("degenerate phases reduce to linear evolutions") {
  nlbs::Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance in = random_instance(rng, 6, 3);
    const auto zero = nlbs::nlp_distribution(in.w, in.x, 0.0, in.v, in.s);
    const auto composite = nlbs::output_distribution(nlbs::sequence(in.w, in.v), in.s);
    CHECK(nlbs::tvd(zero, composite) <= 1e-12);
    // n^2 and n have equal parity, so exp(-i n^2 pi) = exp(-i n pi).
    const auto at_pi = nlbs::nlp_distribution(in.w, in.x, pi, in.v, in.s);
    const auto ubar = nlbs::output_distribution(nlbs::ubar(in.w, in.x, pi, in.v), in.s);
    CHECK(nlbs::tvd(at_pi, ubar) <= 1e-12);
  }
}

TEST_CASE("phases are 2 pi periodic and distributions normalized") {
  nlbs::Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance in = random_instance(rng, 5, 3);
    const auto a = nlbs::nlp_amplitudes(in.w, in.x, in.phi, in.v, in.s);
    const auto b = nlbs::nlp_amplitudes(in.w, in.x, in.phi + 2 * pi, in.v, in.s);
    for (std::size_t r = 0; r < a.size(); ++r) CHECK(std::abs(a[r] - b[r]) < 1e-11);
    CHECK(nlbs::nlp_distribution(in.w, in.x, in.phi, in.v, in.s).total() ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("ubar is W, a linear phase shifter, then V") {
  nlbs::Rng rng(35);
  const ComplexMatrix w = nlbs::haar_unitary(4, rng);
  const ComplexMatrix v = nlbs::haar_unitary(4, rng);
  const ComplexMatrix id = ComplexMatrix::identity(4);
  const ComplexMatrix u0 = nlbs::ubar(w, 2, 0.0, v);
  CHECK((u0.eigen() - nlbs::sequence(w, v).eigen()).cwiseAbs().maxCoeff() < 1e-14);
  const ComplexMatrix f = nlbs::ubar(id, 2, 0.4, id);
  CHECK((f.eigen() - nlbs::phase_shifter(4, 2, 0.4).eigen()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(nlbs::unitarity_deviation(nlbs::ubar(w, 3, 1.1, v)) < 1e-12);
  CHECK_THROWS_AS(nlbs::ubar(w, 5, 0.1, v), nlbs::DomainError);
}

TEST_CASE("dense gate with a diagonal matrix matches the diagonal gate") {
  nlbs::Rng rng(36);
  const ComplexMatrix w = nlbs::haar_unitary(3, rng);
  const ComplexMatrix v = nlbs::haar_unitary(3, rng);
  const FockState s({1, 1, 0});
  const auto space = nlbs::enumerate_states(3, 2);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(space->size(), space->size());
  for (std::size_t r = 0; r < space->size(); ++r) {
    const double n = (*space)[r][1];
    g(r, r) = std::exp(Complex(0.0, -n * n * 0.9));
  }
  const nlbs::NonlinearExperiment dense{w, v, nlbs::NonlinearGate(nlbs::DenseGate{ComplexMatrix(g)}), s};
  const auto a = nlbs::nl_amplitudes_general(dense);
  const auto b = nlbs::nlp_amplitudes(w, 2, 0.9, v, s);
  for (std::size_t r = 0; r < a.size(); ++r) CHECK(std::abs(a[r] - b[r]) < 1e-12);
  CHECK_THROWS_AS(nlbs::NonlinearGate(nlbs::DenseGate{ComplexMatrix(g)}).factor(s),
                  nlbs::DomainError);
}

TEST_CASE("experiment validation") {
  const ComplexMatrix bs = oracle::beam_splitter();
  const nlbs::NonlinearExperiment bad_mode{bs, bs, nlbs::NonlinearGate(nlbs::SingleModePhase{3, 0.1}),
                                           FockState({1, 1})};
  CHECK_THROWS_AS(bad_mode.validate(), nlbs::DomainError);
  const nlbs::NonlinearExperiment bad_size{bs, ComplexMatrix::identity(3),
                                           nlbs::NonlinearGate(nlbs::SingleModePhase{1, 0.1}),
                                           FockState({1, 1})};
  CHECK_THROWS_AS(bad_size.validate(), nlbs::DomainError);
  CHECK(nlbs::default_nonlinear_mode(9) == 5);
  CHECK(nlbs::default_nonlinear_mode(4) == 2);
}
