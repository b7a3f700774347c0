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

#include "nlbs/error.hpp"
#include "nlbs/gadget.hpp"
#include "oracle.hpp"

using nlbs::Complex;
using nlbs::ComplexMatrix;
using nlbs::FockState;
using std::numbers::pi;

namespace {

// <l,1..1| u |l,1..1> by operator expansion.
Complex branch_oracle(const ComplexMatrix& u, int l) {
  std::vector<int> occ(u.rows(), 1);
  occ[0] = l;
  const FockState s(occ);
  return oracle::linear_amplitude(u, s, s);
}

double max_residual(const ComplexMatrix& u, double phi) {
  double worst = 0.0;
  for (const Complex r : nlbs::gadget_residuals(u, phi)) worst = std::max(worst, std::abs(r));
  return worst;
}

}  // namespace

TEST_CASE("success bound") {
  CHECK(nlbs::success_bound(pi / 2) == 0.25);
  CHECK(nlbs::success_bound(0.0) == doctest::Approx(1.0));
  for (double phi = 0.05; phi < pi / 2; phi += 0.1) {
    CHECK(nlbs::success_bound(phi) <= 1.0);
    CHECK(nlbs::success_bound(phi) >= 0.25);
  }
}

TEST_CASE("branch amplitudes agree with the operator expansion") {
  nlbs::Rng rng(41);
  for (int k = 1; k <= 3; ++k) {
    const ComplexMatrix u = nlbs::haar_unitary(k + 1, rng);
    for (int l = 0; l <= k; ++l) {
      CHECK(std::abs(nlbs::gadget_branch_amplitude(u, l) - branch_oracle(u, l)) < 1e-12);
    }
    CHECK(nlbs::success_probability(u) == doctest::Approx(std::norm(branch_oracle(u, 0))));
  }
}

TEST_CASE("expanded gadget matrix repeats the first row and column") {
  nlbs::Rng rng(42);
  const ComplexMatrix u = nlbs::haar_unitary(3, rng);
  const ComplexMatrix e2 = nlbs::expanded_gadget_matrix(u, 2);
  REQUIRE(e2.rows() == 4);
  CHECK(e2(0, 0) == u(0, 0));
  CHECK(e2(1, 1) == u(0, 0));
  CHECK(e2(1, 3) == u(0, 2));
  CHECK(e2(3, 2) == u(2, 1));
  const ComplexMatrix e0 = nlbs::expanded_gadget_matrix(u, 0);
  REQUIRE(e0.rows() == 2);
  CHECK(e0(0, 0) == u(1, 1));
}

TEST_CASE("residuals vanish for an ideal gadget and the objective sums them") {
  const ComplexMatrix u = nlbs::reck_to_unitary(nlbs::ReckParams::zeros(3));
  const auto r = nlbs::gadget_residuals(u, 0.0);
  REQUIRE(r.size() == 2);
  for (const Complex z : r) CHECK(std::abs(z) < 1e-15);
  nlbs::Rng rng(43);
  const ComplexMatrix h = nlbs::haar_unitary(3, rng);
  double sum = 0.0;
  for (const Complex z : nlbs::gadget_residuals(h, 0.8)) sum += std::norm(z);
  CHECK(nlbs::gadget_objective(h, 0.8) == doctest::Approx(sum));
}

TEST_CASE("published gadgets") {
  CHECK(nlbs::paper_gadget(2).success_prob == doctest::Approx(0.209).epsilon(0.005 / 0.209));
  CHECK(std::abs(nlbs::paper_gadget(3).success_prob - 0.04) <= 0.005);
  CHECK(std::abs(nlbs::paper_gadget(4).success_prob - 0.008) <= 0.003);
  CHECK(max_residual(nlbs::paper_gadget(2).u_eff, pi / 2) <= 5e-3);
  CHECK(max_residual(nlbs::paper_gadget(4).u_eff, pi / 2) <= 5e-3);
  // Printed table entry (1,1) of the k = 2 gadget.
  CHECK(std::abs(nlbs::published_gadget_matrix(2)(0, 0) - Complex(0.0, -0.4574)) < 1e-12);
  const ComplexMatrix printed = nlbs::published_gadget_matrix(2);
  CHECK((nlbs::paper_gadget(2).u_eff.eigen() - printed.conjugate().eigen()).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK(nlbs::unitarity_deviation(printed) < nlbs::kPublishedUnitarityTol);
  CHECK_THROWS_AS(nlbs::published_gadget_matrix(5), nlbs::DomainError);
}

TEST_CASE("the printed table realizes the conjugate phase") {
  const ComplexMatrix printed = nlbs::published_gadget_matrix(2);
  const Complex g0 = nlbs::gadget_branch_amplitude(printed, 0);
  for (int l = 1; l <= 2; ++l) {
    const Complex want = g0 * std::exp(Complex(0.0, l * l * pi / 2));
    CHECK(std::abs(nlbs::gadget_branch_amplitude(printed, l) - want) < 5e-3);
  }
}

TEST_CASE("apply_gadget scales each photon-number branch") {
  const nlbs::GadgetSpec g = nlbs::paper_gadget(2);
  const std::vector<Complex> c{0.6, Complex(0.0, 0.8), 0.0};
  const auto out = nlbs::apply_gadget(g.u_eff, c);
  const Complex g0 = nlbs::gadget_branch_amplitude(g.u_eff, 0);
  CHECK(std::abs(out[0] - 0.6 * g0) < 1e-15);
  CHECK(std::abs(out[1] - Complex(0.0, 0.8) * g0 * std::exp(Complex(0.0, -pi / 2))) < 1e-3);
  CHECK(out[2] == Complex(0.0));
  CHECK_THROWS_AS(nlbs::apply_gadget(g.u_eff, std::vector<Complex>{1.0}), nlbs::DomainError);
}

TEST_CASE("make_gadget validates shape and unitarity") {
  CHECK_THROWS_AS(nlbs::make_gadget(2, 0.1, ComplexMatrix::identity(2)), nlbs::DomainError);
  const Complex e[] = {1.0, 0.5, 0.0, 1.0};
  CHECK_THROWS_AS(nlbs::make_gadget(1, 0.1, ComplexMatrix(2, 2, e)), nlbs::DomainError);
  const nlbs::GadgetSpec g = nlbs::make_gadget(1, 0.0, ComplexMatrix::identity(2));
  CHECK(g.success_prob == doctest::Approx(1.0));
  CHECK(g.residual == doctest::Approx(0.0));
}

TEST_CASE("k = 1 gadget is a linear phase on the input port") {
  nlbs::GadgetSearchOptions o;
  o.k = 1;
  o.phi = 0.7;
  o.p_th = nlbs::default_threshold(1);
  const auto res = nlbs::optimize_gadget(o);
  REQUIRE(res.found);
  CHECK(res.best.residual < 1e-28);
  CHECK(res.best.success_prob == doctest::Approx(1.0));
  CHECK(std::abs(res.best.u_eff(0, 0) - std::exp(Complex(0.0, -0.7))) < 1e-15);
}

TEST_CASE("synthesized k = 2 gadget at pi/2") {
  nlbs::GadgetSearchOptions o;
  o.k = 2;
  o.phi = pi / 2;
  o.p_th = 0.15;
  o.starts = 8;
  o.seed = 3;
  const auto res = nlbs::optimize_gadget(o);
  REQUIRE(res.found);
  CHECK(res.feasible_starts >= 1);
  CHECK(res.best.residual <= 1e-8);
  CHECK(res.best.success_prob >= 0.15);
  CHECK(res.best.success_prob <= nlbs::success_bound(pi / 2) + 1e-9);
  CHECK(nlbs::unitarity_deviation(res.best.u_eff) < 1e-10);
  CHECK(max_residual(res.best.u_eff, pi / 2) < 1e-4);

  // Same seed, any worker count: identical result.
  o.workers = 3;
  const auto again = nlbs::optimize_gadget(o);
  CHECK(again.best_start == res.best_start);
  CHECK((again.best.u_eff.eigen() - res.best.u_eff.eigen()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("an unreachable threshold reports no feasible gadget") {
  nlbs::GadgetSearchOptions o;
  o.k = 2;
  o.phi = pi / 2;
  o.p_th = 0.5;  // above the bound of 0.25
  o.starts = 2;
  o.budget = 500;
  o.penalty_rounds = 1;
  const auto res = nlbs::optimize_gadget(o);
  CHECK_FALSE(res.found);
  CHECK(res.feasible_starts == 0);
}

TEST_CASE("search option validation") {
  nlbs::GadgetSearchOptions o;
  o.k = 0;
  CHECK_THROWS_AS(nlbs::optimize_gadget(o), nlbs::DomainError);
  o.k = 2;
  o.starts = 0;
  CHECK_THROWS_AS(nlbs::optimize_gadget(o), nlbs::DomainError);
  CHECK_THROWS_AS(nlbs::default_threshold(7), nlbs::DomainError);
}
