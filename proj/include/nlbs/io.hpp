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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "nlbs/analysis.hpp"
#include "nlbs/gadget.hpp"
#include "nlbs/linalg.hpp"
#include "nlbs/linear_bs.hpp"
#include "nlbs/sim.hpp"

namespace nlbs {

// %.17g; reads back to the same double.
std::string format_double(double value);

// {"rows": r, "cols": c, "data": [[re, im], ...]} with row-major data.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(std::string_view text);
ComplexMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const ComplexMatrix& m, const std::filesystem::path& path);

// {"k", "phi", "u_eff", "success_prob", "residual", "unitarity_tolerance"}.
// Success probability and residual are recomputed on load.
std::string gadget_to_json(const GadgetSpec& g);
GadgetSpec gadget_from_json(std::string_view text);
GadgetSpec load_gadget(const std::filesystem::path& path);
void save_gadget(const GadgetSpec& g, const std::filesystem::path& path);

struct ExperimentConfig {
  ComplexMatrix w;
  ComplexMatrix v;
  std::size_t mode_x = 1;  // 1-based
  double phi = 0.0;
  FockState input;
  std::filesystem::path gadget_path;  // empty when absent
};

// Fields: w_matrix, v_matrix (matrix object or "haar" with w_seed/v_seed),
// mode_x (default ceil(m/2)), phi (default pi/2), input_state (string or
// array), gadget (path, relative to base_dir).
ExperimentConfig experiment_from_json(std::string_view text,
                                      const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// state,probability
std::string distribution_csv(const Distribution& dist);
// index,state,accepted_trial_count
std::string samples_csv(const Algorithm1Result& samples);
// n,m,k,phi,trial,seed,tvd,p_bunch_site,p_bunch_global,p_postselect
std::string records_csv(std::span<const ExperimentRecord> records);
std::string summary_json(std::span<const GroupSummary> groups);

}  // namespace nlbs
