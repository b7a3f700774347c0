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
#include <optional>
#include <span>
#include <vector>

#include "nlbs/linalg.hpp"

namespace nlbs {

// Post-selected (k+1)-mode linear gadget: input on port 1, one ancilla photon
// on each of ports 2..k+1, success heralded by one photon on each ancilla
// output.
struct GadgetSpec {
  int k = 0;
  double phi = 0.0;
  ComplexMatrix u_eff;
  double success_prob = 0.0;
  double residual = 0.0;  // objective value at u_eff
  // Unitarity tolerance the matrix was accepted under.
  double unitarity_tolerance = 1e-10;
};

// u_eff with the first row and column repeated l times (removed when l = 0).
ComplexMatrix expanded_gadget_matrix(const ComplexMatrix& u_eff, int l);

// |per(u_eff with first row and column removed)|^2.
double success_probability(const ComplexMatrix& u_eff);

// Post-selected amplitude of the l-photon component:
// <l,1..1| u_eff |l,1..1> = per(expanded_gadget_matrix(u_eff, l)) / l!.
Complex gadget_branch_amplitude(const ComplexMatrix& u_eff, int l);

// r_l = per(u^{l,1..1}) / l! - per(u^{0,1..1}) exp(-i l^2 phi), l = 1..k.
std::vector<Complex> gadget_residuals(const ComplexMatrix& u_eff, double phi);

// Sum of |r_l|^2.
double gadget_objective(const ComplexMatrix& u_eff, double phi);
double gadget_objective(const ReckParams& params, double phi, int k);

// Upper bound on the success probability of a two-photon non-linear phase.
double success_bound(double phi);

// Fills success probability and objective from the matrix.
GadgetSpec make_gadget(int k, double phi, ComplexMatrix u_eff,
                       double unitarity_tolerance = 1e-10);

// Published k = 2, 3, 4 matrices for phi = pi/2, verbatim.
ComplexMatrix published_gadget_matrix(int k);

// The published gadget in this toolkit's amplitude convention (complex
// conjugate of the printed table; see README). phi = pi/2.
GadgetSpec paper_gadget(int k);

// c_l -> c_l * per(u^{l,1..1}) / l!, the unnormalized heralded output.
std::vector<Complex> apply_gadget(const ComplexMatrix& u_eff, std::span<const Complex> coeffs);

// Default success-probability threshold used by the synthesis per k.
double default_threshold(int k);

struct GadgetSearchOptions {
  int k = 2;
  double phi = 1.5707963267948966;
  double p_th = 0.15;
  int starts = 20;
  std::uint64_t seed = 1;
  // Objective evaluations per simplex run.
  int budget = 4000;
  int penalty_rounds = 4;
  double tolerance = 1e-8;
  unsigned workers = 1;
};

struct GadgetSearchResult {
  bool found = false;
  GadgetSpec best;
  int best_start = -1;
  int feasible_starts = 0;
};

GadgetSearchResult optimize_gadget(const GadgetSearchOptions& options);

// Unpacks optimizer coordinates into Reck parameters. Angles stay in range:
// theta = (pi/4)(1 - cos x), phases wrapped to [0, 2 pi).
ReckParams reck_from_coordinates(std::size_t modes, std::span<const double> x);

}  // namespace nlbs
