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

#include "nlbs/linalg.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "nlbs/error.hpp"

namespace nlbs {

namespace {

void check_finite(const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("matrix entries must be finite");
    }
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd values) : m_(std::move(values)) {
  check_finite(m_);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::span<const Complex> entries) {
  if (entries.size() != rows * cols) {
    throw DomainError("matrix needs " + std::to_string(rows * cols) + " entries, got " +
                      std::to_string(entries.size()));
  }
  m_.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m_(r, c) = entries[r * cols + c];
  }
  check_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(n, n));
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(m_.adjoint()); }
ComplexMatrix ComplexMatrix::conjugate() const { return ComplexMatrix(m_.conjugate()); }

double unitarity_deviation(const ComplexMatrix& m) {
  if (!m.is_square()) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXcd g = m.eigen().adjoint() * m.eigen();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  if (g.size() == 0) return 0.0;
  return (g - id).cwiseAbs().maxCoeff();
}

void require_unitary(const ComplexMatrix& m, double tol, const char* what) {
  const double dev = unitarity_deviation(m);
  if (!(dev <= tol)) {
    throw DomainError(std::string(what) + " is not unitary: max |U^dagger U - I| = " +
                      std::to_string(dev) + " exceeds " + std::to_string(tol));
  }
}

Complex permanent_naive(const ComplexMatrix& m) {
  if (!m.is_square()) throw DomainError("permanent of a non-square matrix");
  const std::size_t n = m.rows();
  if (n > 9) throw LimitError("naive permanent refused above 9x9");
  std::array<int, 9> perm{};
  std::iota(perm.begin(), perm.begin() + n, 0);
  Complex total = 0.0;
  do {
    Complex term = 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.begin() + n));
  return total;
}

Complex permanent_of_selection(const Eigen::MatrixXcd& u, std::span<const int> rows,
                               std::span<const int> cols) {
  const std::size_t n = rows.size();
  if (cols.size() != n) throw DomainError("permanent of a non-square selection");
  if (n == 0) return 1.0;
  if (n > 30) throw LimitError("permanent size above 30 refused");

  constexpr std::size_t kStack = 16;
  std::array<Complex, kStack> stack_sums{};
  std::vector<Complex> heap_sums;
  Complex* sums = stack_sums.data();
  if (n > kStack) {
    heap_sums.assign(n, Complex(0.0));
    sums = heap_sums.data();
  }

  // Ryser: per(A) = sum over column subsets S of (-1)^(n-|S|) prod_i sum_{j in S} a_ij,
  // visiting subsets in Gray-code order so each step toggles one column.
  Complex total = 0.0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t g = 1; g < limit; ++g) {
    const int bit = std::countr_zero(g);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    gray ^= mask;
    const int col = cols[bit];
    if (gray & mask) {
      for (std::size_t i = 0; i < n; ++i) sums[i] += u(rows[i], col);
    } else {
      for (std::size_t i = 0; i < n; ++i) sums[i] -= u(rows[i], col);
    }
    Complex prod = sums[0];
    for (std::size_t i = 1; i < n; ++i) prod *= sums[i];
    if ((n - std::popcount(gray)) % 2 == 0) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  return total;
}

Complex permanent(const ComplexMatrix& m) {
  if (!m.is_square()) throw DomainError("permanent of a non-square matrix");
  std::vector<int> idx(m.rows());
  std::iota(idx.begin(), idx.end(), 0);
  return permanent_of_selection(m.eigen(), idx, idx);
}

ComplexMatrix matrix_from_states(const ComplexMatrix& u, const FockState& s,
                                 const FockState& t) {
  if (s.photons() != t.photons()) {
    throw DomainError("photon numbers differ: " + s.to_string() + " vs " + t.to_string());
  }
  if (s.modes() != u.rows() || t.modes() != u.cols()) {
    throw DomainError("state mode count does not match the matrix dimension");
  }
  const auto rows = mode_multiset(s);
  const auto cols = mode_multiset(t);
  Eigen::MatrixXcd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = u(rows[i], cols[j]);
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix haar_unitary(std::size_t m, Rng& rng) {
  if (m == 0) throw DomainError("Haar unitary needs at least one mode");
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(2.0));
  Eigen::MatrixXcd z(m, m);
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  // Fix the phase freedom of QR so the result is exactly Haar distributed.
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const Complex d = r(c, c);
    const double a = std::abs(d);
    q.col(c) *= (a > 0.0) ? d / a : Complex(1.0);
  }
  return ComplexMatrix(std::move(q));
}

ReckParams ReckParams::zeros(std::size_t m) {
  ReckParams p;
  p.modes = m;
  p.thetas.assign(mesh_size(m), 0.0);
  p.phis.assign(mesh_size(m), 0.0);
  p.output_phases.assign(m, 0.0);
  return p;
}

void ReckParams::validate() const {
  if (modes == 0) throw DomainError("Reck parametrization needs at least one mode");
  if (thetas.size() != mesh_size(modes) || phis.size() != mesh_size(modes) ||
      output_phases.size() != modes) {
    throw DomainError("Reck parameter counts do not match " + std::to_string(modes) +
                      " modes");
  }
}

ComplexMatrix reck_to_unitary(const ReckParams& params) {
  params.validate();
  const auto m = static_cast<Eigen::Index>(params.modes);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
  std::size_t element = 0;
  // Diagonals of the triangle: d = 0 touches modes (0,1)...(m-2,m-1), each later
  // diagonal one pair shorter.
  for (Eigen::Index d = 0; d + 1 < m; ++d) {
    for (Eigen::Index j = 0; j + 1 < m - d; ++j, ++element) {
      const double c = std::cos(params.thetas[element]);
      const double s = std::sin(params.thetas[element]);
      const Complex e = std::polar(1.0, params.phis[element]);
      // Left-multiply by the rotation acting on rows j, j+1.
      const Eigen::RowVectorXcd a = u.row(j);
      const Eigen::RowVectorXcd b = u.row(j + 1);
      u.row(j) = e * c * a - s * b;
      u.row(j + 1) = e * s * a + c * b;
    }
  }
  for (Eigen::Index i = 0; i < m; ++i) u.row(i) *= std::polar(1.0, params.output_phases[i]);
  return ComplexMatrix(std::move(u));
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a.eigen();
  out.bottomRightCorner(b.rows(), b.cols()) = b.eigen();
  return ComplexMatrix(std::move(out));
}

ComplexMatrix phase_shifter(std::size_t m, std::size_t x, double phi) {
  if (x < 1 || x > m) {
    throw DomainError("mode " + std::to_string(x) + " out of range 1.." + std::to_string(m));
  }
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(m, m);
  f(x - 1, x - 1) = std::polar(1.0, -phi);
  return ComplexMatrix(std::move(f));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DomainError("matmul dimension mismatch: " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                      "x" + std::to_string(b.cols()));
  }
  return ComplexMatrix(a.eigen() * b.eigen());
}

}  // namespace nlbs
