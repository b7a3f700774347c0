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

#include "nlbs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "nlbs/error.hpp"
#include "nlbs/nonlinear_bs.hpp"

namespace nlbs {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw DomainError("cannot format number");
  return std::string(buf, res.ptr);
}

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

json matrix_json(const ComplexMatrix& m) {
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_of(const json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const json& data = j.at("data");
    if (!data.is_array() || data.size() != rows * cols) {
      throw DomainError("matrix data must hold rows*cols entries");
    }
    std::vector<Complex> entries;
    entries.reserve(data.size());
    for (const json& e : data) {
      if (!e.is_array() || e.size() != 2) throw DomainError("matrix entries must be [re, im]");
      entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return ComplexMatrix(rows, cols, entries);
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad matrix JSON: ") + e.what());
  }
}

FockState state_of(const json& j) {
  if (j.is_string()) return FockState::parse(j.get<std::string>());
  if (j.is_array()) return FockState(j.get<std::vector<int>>());
  throw DomainError("input_state must be a string or an array");
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_json(m).dump(2) + "\n"; }

ComplexMatrix matrix_from_json(std::string_view text) {
  return matrix_of(parse_json(text, "matrix"));
}

ComplexMatrix load_matrix(const std::filesystem::path& path) {
  return matrix_from_json(read_text_file(path));
}

void save_matrix(const ComplexMatrix& m, const std::filesystem::path& path) {
  write_text_file(path, matrix_to_json(m));
}

std::string gadget_to_json(const GadgetSpec& g) {
  const json j = {{"k", g.k},
                  {"phi", g.phi},
                  {"u_eff", matrix_json(g.u_eff)},
                  {"success_prob", g.success_prob},
                  {"residual", g.residual},
                  {"unitarity_tolerance", g.unitarity_tolerance}};
  return j.dump(2) + "\n";
}

GadgetSpec gadget_from_json(std::string_view text) {
  const json j = parse_json(text, "gadget");
  try {
    const double tol = j.value("unitarity_tolerance", kUnitarityTol);
    return make_gadget(j.at("k").get<int>(), j.at("phi").get<double>(), matrix_of(j.at("u_eff")),
                       tol);
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad gadget JSON: ") + e.what());
  }
}

GadgetSpec load_gadget(const std::filesystem::path& path) {
  return gadget_from_json(read_text_file(path));
}

void save_gadget(const GadgetSpec& g, const std::filesystem::path& path) {
  write_text_file(path, gadget_to_json(g));
}

ExperimentConfig experiment_from_json(std::string_view text,
                                      const std::filesystem::path& base_dir) {
  const json j = parse_json(text, "experiment");
  try {
    ExperimentConfig cfg;
    cfg.input = state_of(j.at("input_state"));
    const std::size_t m = cfg.input.modes();
    if (m == 0) throw DomainError("input_state must have at least one mode");
    auto unitary = [&](const char* key, const char* seed_key) {
      const json& spec = j.at(key);
      if (spec.is_string()) {
        if (spec.get<std::string>() != "haar") {
          throw DomainError(std::string(key) + " must be a matrix object or \"haar\"");
        }
        Rng rng(j.at(seed_key).get<std::uint64_t>());
        return haar_unitary(m, rng);
      }
      ComplexMatrix u = matrix_of(spec);
      if (u.rows() != m || u.cols() != m) {
        throw DomainError(std::string(key) + " does not match the input state size");
      }
      return u;
    };
    cfg.w = unitary("w_matrix", "w_seed");
    cfg.v = unitary("v_matrix", "v_seed");
    cfg.mode_x = j.value("mode_x", default_nonlinear_mode(m));
    if (cfg.mode_x < 1 || cfg.mode_x > m) throw DomainError("mode_x out of range");
    cfg.phi = j.value("phi", std::numbers::pi / 2);
    if (!std::isfinite(cfg.phi)) throw DomainError("phi must be finite");
    if (j.contains("gadget")) cfg.gadget_path = base_dir / j.at("gadget").get<std::string>();
    return cfg;
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad experiment JSON: ") + e.what());
  }
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  return experiment_from_json(read_text_file(path), path.parent_path());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string distribution_csv(const Distribution& dist) {
  std::string out = "state,probability\n";
  for (std::size_t r = 0; r < dist.size(); ++r) {
    out += '"' + dist.space()[r].to_string() + "\"," + format_double(dist[r]) + '\n';
  }
  return out;
}

std::string samples_csv(const Algorithm1Result& samples) {
  std::string out = "index,state,accepted_trial_count\n";
  for (std::size_t i = 0; i < samples.ranks.size(); ++i) {
    out += std::to_string(i) + ",\"" + (*samples.space)[samples.ranks[i]].to_string() + "\"," +
           std::to_string(samples.trials_per_sample[i]) + '\n';
  }
  return out;
}

std::string records_csv(std::span<const ExperimentRecord> records) {
  std::string out = "n,m,k,phi,trial,seed,tvd,p_bunch_site,p_bunch_global,p_postselect\n";
  for (const auto& r : records) {
    out += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + std::to_string(r.k) + ',' +
           format_double(r.phi) + ',' + std::to_string(r.trial) + ',' + std::to_string(r.seed) +
           ',' + format_double(r.tvd) + ',' + format_double(r.p_bunch_site) + ',' +
           format_double(r.p_bunch_global) + ',' + format_double(r.p_postselect) + '\n';
  }
  return out;
}

std::string summary_json(std::span<const GroupSummary> groups) {
  json arr = json::array();
  auto ms = [](const MeanStd& v) { return json{{"mean", v.mean}, {"std", v.stddev}}; };
  for (const auto& g : groups) {
    json spearman = std::isfinite(g.spearman_tvd_site) ? json(g.spearman_tvd_site) : json(nullptr);
    arr.push_back({{"m", g.m},
                   {"k", g.k},
                   {"trials", g.trials},
                   {"tvd", ms(g.tvd)},
                   {"p_bunch_site", ms(g.p_bunch_site)},
                   {"p_bunch_global", ms(g.p_bunch_global)},
                   {"p_postselect", ms(g.p_postselect)},
                   {"spearman_tvd_site", std::move(spearman)}});
  }
  return json{{"groups", std::move(arr)}, {"bunching_global_reading", "intermediate"}}.dump(2) +
         "\n";
}

}  // namespace nlbs
