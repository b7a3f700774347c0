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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nlbs/fock.hpp"
#include "nlbs/random.hpp"

namespace nlbs {

using Complex = std::complex<double>;

// Dense complex matrix with finite entries. Thin value wrapper over Eigen; the
// checked constructor is the only way in.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(Eigen::MatrixXcd values);
  // Row-major entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::span<const Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  bool is_square() const { return m_.rows() == m_.cols(); }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const Eigen::MatrixXcd& eigen() const { return m_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;

 private:
  Eigen::MatrixXcd m_;
};

// max |M^dagger M - I|; +inf for non-square input.
double unitarity_deviation(const ComplexMatrix& m);

// Throws DomainError naming the measured deviation when above tol.
void require_unitary(const ComplexMatrix& m, double tol, const char* what);

inline constexpr double kUnitarityTol = 1e-8;
// Gate for constants published with four decimals.
inline constexpr double kPublishedUnitarityTol = 2e-3;

// Permutation-sum permanent. Oracle only: refuses matrices larger than 9x9.
Complex permanent_naive(const ComplexMatrix& m);

// Ryser permanent with Gray-code subset updates; per(empty) = 1.
Complex permanent(const ComplexMatrix& m);

// Permanent of the matrix with entries u(rows[i], cols[j]), without
// materializing it. Index lists may repeat entries.
Complex permanent_of_selection(const Eigen::MatrixXcd& u, std::span<const int> rows,
                               std::span<const int> cols);

// n x n matrix with row i of U repeated s_i times and column j repeated t_j
// times.
ComplexMatrix matrix_from_states(const ComplexMatrix& u, const FockState& s,
                                 const FockState& t);

ComplexMatrix haar_unitary(std::size_t m, Rng& rng);

// Triangular mesh of two-mode rotations followed by output phases.
struct ReckParams {
  std::size_t modes = 0;
  std::vector<double> thetas;         // m(m-1)/2 mixing angles
  std::vector<double> phis;           // m(m-1)/2 internal phases
  std::vector<double> output_phases;  // m

  static std::size_t mesh_size(std::size_t m) { return m * (m - 1) / 2; }
  static std::size_t parameter_count(std::size_t m) { return m * m; }

  // Identity parameters (every angle and phase zero).
  static ReckParams zeros(std::size_t m);
  void validate() const;
};

ComplexMatrix reck_to_unitary(const ReckParams& params);

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

// Identity except entry (x, x) = exp(-i phi); x is 1-based.
ComplexMatrix phase_shifter(std::size_t m, std::size_t x, double phi);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace nlbs
