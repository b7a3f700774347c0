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

// Local minimizers used by the gadget synthesis.

#include <functional>
#include <vector>

namespace nlbs::detail {

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

// Nelder-Mead simplex with dimension-adaptive coefficients.
LocalResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                        std::vector<double> x0, double step, int max_evals,
                        double ftol = 1e-14);

// Levenberg-Marquardt on 0.5 * |r(x)|^2 with a central-difference Jacobian.
LocalResult levenberg_marquardt(
    const std::function<std::vector<double>(const std::vector<double>&)>& residuals,
    std::vector<double> x0, int max_iterations, double fd_step = 1e-6,
    double target = 1e-30);

}  // namespace nlbs::detail
