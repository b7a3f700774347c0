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

#include "local_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace nlbs::detail {

LocalResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                        std::vector<double> x0, double step, int max_evals, double ftol) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  std::vector<double> values(n + 1);
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    values[i] = f(simplex[i]);
    ++evals;
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point = [&](double t, std::vector<double>& out, std::size_t worst) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
  };

  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (values[worst] - values[best] <= ftol * std::abs(values[best]) + 1e-30) break;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / dn;
    }

    point(-alpha, trial, worst);
    const double fr = f(trial);
    ++evals;
    if (fr < values[best]) {
      point(-alpha * beta, trial2, worst);
      const double fe = f(trial2);
      ++evals;
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      point(outside ? -alpha * gamma : gamma, trial2, worst);
      const double fc = f(trial2);
      ++evals;
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = trial2;
        values[worst] = fc;
      } else {
        // shrink towards the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j) {
            simplex[i][j] = simplex[best][j] + delta * (simplex[i][j] - simplex[best][j]);
          }
          values[i] = f(simplex[i]);
          ++evals;
        }
      }
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(it - values.begin());
  return {simplex[idx], values[idx], evals};
}

LocalResult levenberg_marquardt(
    const std::function<std::vector<double>(const std::vector<double>&)>& residuals,
    std::vector<double> x0, int max_iterations, double fd_step, double target) {
  const std::size_t n = x0.size();
  auto cost_of = [](const std::vector<double>& r) {
    return 0.5 * std::inner_product(r.begin(), r.end(), r.begin(), 0.0);
  };
  std::vector<double> r = residuals(x0);
  int evals = 1;
  double cost = cost_of(r);
  double mu = 1e-3;
  std::vector<double> probe(n);

  for (int iter = 0; iter < max_iterations && cost > target; ++iter) {
    const std::size_t mres = r.size();
    Eigen::MatrixXd jac(mres, n);
    for (std::size_t j = 0; j < n; ++j) {
      probe = x0;
      probe[j] = x0[j] + fd_step;
      const auto rp = residuals(probe);
      probe[j] = x0[j] - fd_step;
      const auto rm = residuals(probe);
      evals += 2;
      for (std::size_t i = 0; i < mres; ++i) jac(i, j) = (rp[i] - rm[i]) / (2.0 * fd_step);
    }
    const Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(mres));
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * rv;

    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd lhs = jtj;
      for (Eigen::Index d = 0; d < lhs.rows(); ++d) lhs(d, d) += mu * (1.0 + jtj(d, d));
      const Eigen::VectorXd delta = lhs.ldlt().solve(-grad);
      for (std::size_t j = 0; j < n; ++j) probe[j] = x0[j] + delta(j);
      auto rn = residuals(probe);
      ++evals;
      const double cn = cost_of(rn);
      if (std::isfinite(cn) && cn < cost) {
        x0 = probe;
        r = std::move(rn);
        cost = cn;
        mu = std::max(mu / 10.0, 1e-15);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  return {x0, cost, evals};
}

}  // namespace nlbs::detail
