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

// Command-line front end. Talks to the toolkit only through the C API.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlbs/nlbs.h"

namespace {

using nlohmann::json;

// Domain failures propagate as this and map to exit code 1.
struct Failure {
  std::string message;
};

void check(nlbs_status status, const char* what) {
  if (status == NLBS_OK) return;
  throw Failure{std::string(what) + ": " + nlbs_status_name(status) + ": " + nlbs_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Matrix = std::unique_ptr<nlbs_matrix, Deleter<nlbs_matrix, nlbs_matrix_free>>;
using Dist = std::unique_ptr<nlbs_distribution, Deleter<nlbs_distribution, nlbs_distribution_free>>;
using Experiment = std::unique_ptr<nlbs_experiment, Deleter<nlbs_experiment, nlbs_experiment_free>>;
using Gadget = std::unique_ptr<nlbs_gadget, Deleter<nlbs_gadget, nlbs_gadget_free>>;
using Samples = std::unique_ptr<nlbs_samples, Deleter<nlbs_samples, nlbs_samples_free>>;
using Records = std::unique_ptr<nlbs_records, Deleter<nlbs_records, nlbs_records_free>>;

Matrix load_matrix(const std::string& path) {
  nlbs_matrix* m = nullptr;
  check(nlbs_matrix_load(path.c_str(), &m), "loading matrix");
  return Matrix(m);
}

Experiment load_experiment(const std::string& path) {
  nlbs_experiment* e = nullptr;
  check(nlbs_experiment_load(path.c_str(), &e), "loading experiment");
  return Experiment(e);
}

Gadget load_gadget(const std::string& path) {
  nlbs_gadget* g = nullptr;
  check(nlbs_gadget_load(path.c_str(), &g), "loading gadget");
  return Gadget(g);
}

std::vector<int> parse_state(const std::string& text) {
  std::vector<int> occ;
  if (text.empty()) return occ;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string field = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    int v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
      throw CLI::ValidationError("--input", "bad occupation '" + field + "'");
    }
    occ.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return occ;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Input file copied into metadata; JSON inputs stay structured.
json embedded(const std::string& path) {
  const std::string text = read_file(path);
  json parsed = json::parse(text, nullptr, false);
  return parsed.is_discarded() ? json(text) : parsed;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Failure{"cannot write " + path};
}

std::string sibling(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

// Every option of the invoked subcommand, with defaults, as strings.
json options_json(const CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      cfg[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

// <out>.meta.json next to every artifact.
void write_meta(const std::string& out, const std::string& command, const CLI::App* sub,
                json extra = json::object()) {
  json meta = {{"tool", "nlbs"},
               {"version", nlbs_version()},
               {"command", command},
               {"config", options_json(sub)}};
  for (auto& [k, v] : extra.items()) meta[k] = v;
  write_file(out + ".meta.json", meta.dump(2) + "\n");
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct Common {
  std::string out;
  unsigned workers = 1;
  std::uint64_t seed = 1;
};

void add_workers(CLI::App* sub, Common& c) {
  sub->add_option("--workers", c.workers, "Worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-linear boson sampling toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nlbs_version()));

  std::function<void()> run;
  Common c;

  // permanent
  std::string matrix_path;
  auto* perm = app.add_subcommand("permanent", "Permanent of a matrix");
  perm->add_option("--matrix", matrix_path, "Matrix JSON")->required()->check(CLI::ExistingFile);
  perm->add_option("--out", c.out, "Result JSON");
  perm->callback([&] {
    run = [&] {
      Matrix m = load_matrix(matrix_path);
      double re = 0.0, im = 0.0;
      check(nlbs_permanent(m.get(), &re, &im), "permanent");
      std::cout << "permanent " << fmt(re) << (im < 0 ? " - " : " + ") << fmt(std::abs(im))
                << "i\n";
      if (!c.out.empty()) {
        write_file(c.out, json{{"re", re}, {"im", im}}.dump(2) + "\n");
        write_meta(c.out, "permanent", perm, {{"matrix_file", embedded(matrix_path)}});
      }
    };
  });

  // distribution
  std::string input_text;
  auto* dist = app.add_subcommand("distribution", "Linear boson sampling output distribution");
  dist->add_option("--unitary", matrix_path, "Unitary JSON")->required()
      ->check(CLI::ExistingFile);
  dist->add_option("--input", input_text, "Input occupations, e.g. 1,1,0")->required();
  dist->add_option("--out", c.out, "Distribution CSV")->required();
  add_workers(dist, c);
  dist->callback([&] {
    run = [&] {
      Matrix u = load_matrix(matrix_path);
      const auto occ = parse_state(input_text);
      nlbs_distribution* d = nullptr;
      check(nlbs_distribution_linear(u.get(), occ.data(), occ.size(), c.workers, &d),
            "distribution");
      Dist owned(d);
      check(nlbs_distribution_write_csv(d, c.out.c_str()), "writing distribution");
      write_meta(c.out, "distribution", dist, {{"unitary_file", embedded(matrix_path)}});
      std::cout << nlbs_distribution_size(d) << " outcomes written to " << c.out << "\n";
    };
  });

  // nonlinear-distribution
  std::string config_path, gadget_path, method = "exact";
  auto* nld = app.add_subcommand("nonlinear-distribution",
                                 "Output distribution with a single-mode non-linear phase");
  nld->add_option("--config", config_path, "Experiment JSON")->required()
      ->check(CLI::ExistingFile);
  nld->add_option("--method", method,
                  "exact | linear-phase | gadget (post-selected ancilla simulation)")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "linear-phase", "gadget"}));
  nld->add_option("--gadget", gadget_path, "Gadget JSON for --method gadget");
  nld->add_option("--out", c.out, "Distribution CSV")->required();
  add_workers(nld, c);
  nld->callback([&] {
    run = [&] {
      Experiment e = load_experiment(config_path);
      nlbs_distribution* d = nullptr;
      json extra = {{"config_file", embedded(config_path)}};
      if (method == "exact") {
        check(nlbs_distribution_nonlinear(e.get(), c.workers, &d), "non-linear distribution");
      } else if (method == "linear-phase") {
        check(nlbs_distribution_linear_phase(e.get(), c.workers, &d), "linear-phase distribution");
      } else {
        const std::string path =
            gadget_path.empty() ? nlbs_experiment_gadget_path(e.get()) : gadget_path;
        if (path.empty()) throw Failure{"--method gadget needs --gadget or a config gadget"};
        Gadget g = load_gadget(path);
        double p_ps = 0.0;
        check(nlbs_postselected_distribution(e.get(), g.get(), c.workers, &d, &p_ps),
              "post-selected distribution");
        extra["p_postselect"] = p_ps;
        extra["gadget_file"] = embedded(path);
        std::cout << "p_postselect " << fmt(p_ps) << "\n";
      }
      Dist owned(d);
      check(nlbs_distribution_write_csv(d, c.out.c_str()), "writing distribution");
      write_meta(c.out, "nonlinear-distribution", nld, extra);
      std::cout << nlbs_distribution_size(d) << " outcomes written to " << c.out << "\n";
    };
  });

  // gadget optimize / verify
  auto* gad = app.add_subcommand("gadget", "Measurement-induced non-linear phase gadgets");
  gad->require_subcommand(1);
  nlbs_gadget_search_options gopt;
  nlbs_gadget_search_options_default(&gopt);
  double p_th = -1.0;
  auto* gopt_cmd = gad->add_subcommand("optimize", "Synthesize a gadget");
  gopt_cmd->add_option("--k", gopt.k, "Ancilla photons")->capture_default_str()
      ->check(CLI::Range(1, 4));
  gopt_cmd->add_option("--phi", gopt.phi, "Phase angle (radians)")->capture_default_str();
  gopt_cmd->add_option("--p-th", p_th, "Success-probability threshold (default depends on k)");
  gopt_cmd->add_option("--starts", gopt.starts, "Random starts")->capture_default_str()
      ->check(CLI::PositiveNumber);
  gopt_cmd->add_option("--seed", gopt.seed, "Master seed")->capture_default_str();
  gopt_cmd->add_option("--budget", gopt.budget, "Simplex evaluations per run")
      ->capture_default_str()->check(CLI::PositiveNumber);
  gopt_cmd->add_option("--tol", gopt.tolerance, "Objective tolerance")->capture_default_str();
  gopt_cmd->add_option("--out", c.out, "Gadget JSON")->required();
  gopt_cmd->add_option("--workers", gopt.workers, "Worker threads")->capture_default_str()
      ->check(CLI::PositiveNumber);
  gopt_cmd->callback([&] {
    run = [&] {
      if (p_th < 0) p_th = nlbs_gadget_default_threshold(gopt.k);
      gopt.p_th = p_th;
      nlbs_gadget* g = nullptr;
      nlbs_gadget_search_report report{};
      check(nlbs_gadget_optimize(&gopt, &g, &report), "gadget optimize");
      Gadget owned(g);
      std::cout << "k " << gopt.k << " phi " << fmt(gopt.phi) << " feasible starts "
                << report.feasible_starts << "/" << gopt.starts << "\n"
                << "success probability " << fmt(nlbs_gadget_success_probability(g))
                << " objective " << fmt(nlbs_gadget_objective(g)) << "\n";
      if (!report.found) {
        throw Failure{"no feasible gadget: best success probability " +
                      fmt(nlbs_gadget_success_probability(g)) + ", objective " +
                      fmt(nlbs_gadget_objective(g)) + ", threshold " + fmt(p_th)};
      }
      check(nlbs_gadget_save(g, c.out.c_str()), "writing gadget");
      write_meta(c.out, "gadget optimize", gopt_cmd,
                 {{"seed", gopt.seed},
                  {"p_th", p_th},
                  {"best_start", report.best_start},
                  {"feasible_starts", report.feasible_starts}});
    };
  });

  double verify_phi = std::numeric_limits<double>::quiet_NaN();
  double verify_tol = 5e-3;
  auto* gver = gad->add_subcommand("verify", "Check a gadget against the target phase");
  gver->add_option("--gadget", gadget_path, "Gadget JSON")->required()->check(CLI::ExistingFile);
  gver->add_option("--phi", verify_phi, "Target phase (default: the gadget's)");
  gver->add_option("--tol", verify_tol, "Maximum residual modulus")->capture_default_str();
  gver->add_option("--out", c.out, "Report JSON");
  gver->callback([&] {
    run = [&] {
      Gadget g = load_gadget(gadget_path);
      const double phi = std::isnan(verify_phi) ? nlbs_gadget_phi(g.get()) : verify_phi;
      double worst = 0.0, pr = 0.0, dev = 0.0;
      check(nlbs_gadget_verify(g.get(), phi, &worst, &pr, &dev), "gadget verify");
      const bool ok = worst <= verify_tol;
      std::cout << "k " << nlbs_gadget_k(g.get()) << " phi " << fmt(phi) << "\n"
                << "success probability " << fmt(pr) << "\n"
                << "max residual " << fmt(worst) << " (tol " << fmt(verify_tol) << ")\n"
                << "unitarity deviation " << fmt(dev) << "\n"
                << (ok ? "PASS" : "FAIL") << "\n";
      if (!c.out.empty()) {
        write_file(c.out, json{{"k", nlbs_gadget_k(g.get())},
                               {"phi", phi},
                               {"success_prob", pr},
                               {"max_residual", worst},
                               {"unitarity_deviation", dev},
                               {"success_bound", nlbs_success_bound(phi)},
                               {"pass", ok}}
                                  .dump(2) + "\n");
        write_meta(c.out, "gadget verify", gver, {{"gadget_file", embedded(gadget_path)}});
      }
      if (!ok) throw Failure{"gadget residual above tolerance"};
    };
  });

  // simulate
  std::size_t n_samples = 10000;
  std::uint64_t budget = 0;
  std::string summary_path;
  auto* sim = app.add_subcommand("simulate",
                                 "Sample the ancilla-assisted linear simulation with rejection");
  sim->add_option("--config", config_path, "Experiment JSON")->required()
      ->check(CLI::ExistingFile);
  sim->add_option("--gadget", gadget_path, "Gadget JSON (default: the config's)");
  sim->add_option("--samples", n_samples, "Accepted samples")->capture_default_str();
  sim->add_option("--seed", c.seed, "Seed")->capture_default_str();
  sim->add_option("--budget", budget, "Trial budget (0: default)")->capture_default_str();
  sim->add_option("--out", c.out, "Samples CSV")->required();
  sim->add_option("--summary", summary_path, "Summary JSON (default: <out>.summary.json)");
  sim->callback([&] {
    run = [&] {
      Experiment e = load_experiment(config_path);
      const std::string path =
          gadget_path.empty() ? nlbs_experiment_gadget_path(e.get()) : gadget_path;
      if (path.empty()) throw Failure{"simulate needs --gadget or a config gadget"};
      Gadget g = load_gadget(path);
      nlbs_samples* s = nullptr;
      check(nlbs_simulate(e.get(), g.get(), n_samples, c.seed, budget, &s), "simulate");
      Samples owned(s);
      check(nlbs_samples_write_csv(s, c.out.c_str()), "writing samples");

      nlbs_distribution *ps = nullptr, *exact = nullptr, *emp = nullptr;
      double p_ps = 0.0, tvd_exact = 0.0, tvd_ps = 0.0;
      check(nlbs_postselected_distribution(e.get(), g.get(), 1, &ps, &p_ps), "post-selection");
      Dist o1(ps);
      check(nlbs_distribution_nonlinear(e.get(), 1, &exact), "non-linear distribution");
      Dist o2(exact);
      check(nlbs_samples_empirical(s, 0, &emp), "empirical distribution");
      Dist o3(emp);
      check(nlbs_tvd(emp, exact, &tvd_exact), "tvd");
      check(nlbs_tvd(ps, exact, &tvd_ps), "tvd");
      const json summary = {{"p_postselect", p_ps},
                            {"tvd_vs_exact", tvd_exact},
                            {"tvd_postselected_vs_exact", tvd_ps},
                            {"n_samples", nlbs_samples_count(s)},
                            {"total_trials", nlbs_samples_total_trials(s)},
                            {"acceptance_rate", nlbs_samples_acceptance_rate(s)}};
      const std::string sp = summary_path.empty() ? sibling(c.out, ".summary.json") : summary_path;
      write_file(sp, summary.dump(2) + "\n");
      write_meta(c.out, "simulate", sim,
                 {{"seed", c.seed},
                  {"config_file", embedded(config_path)},
                  {"gadget_file", embedded(path)}});
      std::cout << summary.dump(2) << "\n";
    };
  });

  // experiment tvd-bunching
  auto* exp = app.add_subcommand("experiment", "Parametric studies");
  exp->require_subcommand(1);
  int n = 3;
  std::vector<int> modes{5, 9, 16, 27};
  std::vector<int> ks{1, 2};
  double phi = std::numbers::pi / 2;
  int trials = 100;
  std::string reference = "gadget";
  int gadget_starts = 20;
  auto* tvdb = exp->add_subcommand("tvd-bunching", "TVD against bunching probability");
  tvdb->add_option("--n", n, "Photons")->capture_default_str()->check(CLI::Range(1, 4));
  tvdb->add_option("--modes", modes, "Mode counts")->delimiter(',')->capture_default_str();
  tvdb->add_option("--k", ks, "Ancilla counts")->delimiter(',')->capture_default_str();
  tvdb->add_option("--phi", phi, "Phase angle (radians)")->capture_default_str();
  tvdb->add_option("--trials", trials, "Trials per (m, k)")->capture_default_str()
      ->check(CLI::PositiveNumber);
  tvdb->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  tvdb->add_option("--reference", reference, "gadget (k = n simulation) | direct")
      ->capture_default_str()->check(CLI::IsMember({"gadget", "direct"}));
  tvdb->add_option("--gadget-starts", gadget_starts, "Random starts per gadget search")
      ->capture_default_str()->check(CLI::PositiveNumber);
  tvdb->add_option("--out", c.out, "Results CSV")->required();
  tvdb->add_option("--summary", summary_path, "Summary JSON (default: <out>.summary.json)");
  add_workers(tvdb, c);
  tvdb->callback([&] {
    run = [&] {
      nlbs_tvd_bunching_options o{n,     modes.data(), modes.size(), ks.data(),
                                  ks.size(), phi,      trials,       c.seed,
                                  reference == "direct" ? NLBS_REFERENCE_DIRECT
                                                        : NLBS_REFERENCE_GADGET,
                                  gadget_starts, c.workers};
      nlbs_records* r = nullptr;
      check(nlbs_experiment_tvd_bunching(&o, &r), "experiment");
      Records owned(r);
      check(nlbs_records_write_csv(r, c.out.c_str()), "writing results");
      const std::string sp = summary_path.empty() ? sibling(c.out, ".summary.json") : summary_path;
      check(nlbs_records_write_summary(r, sp.c_str()), "writing summary");
      write_meta(c.out, "experiment tvd-bunching", tvdb,
                 {{"seed", c.seed}, {"bunching_global_reading", "intermediate"}});
      std::cout << nlbs_records_count(r) << " records written to " << c.out << "\n";
    };
  });

  // analyze
  auto* ana = app.add_subcommand("analyze", "Distribution studies over Haar unitaries");
  ana->require_subcommand(1);
  int m = 9, units = 1000, n_max = 2, iterations = 100000;
  std::vector<int> m_list{9};
  std::vector<double> thresholds{0.9, 0.95, 0.99};

  auto* cum = ana->add_subcommand("cumulative", "Fraction of outcomes carrying a given mass");
  cum->add_option("--n", n, "Photons")->capture_default_str();
  cum->add_option("--m", m, "Modes")->capture_default_str();
  cum->add_option("--thresholds", thresholds, "Mass thresholds")->delimiter(',')
      ->capture_default_str();
  cum->add_option("--units", units, "Haar unitaries")->capture_default_str()
      ->check(CLI::PositiveNumber);
  cum->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  cum->add_option("--out", c.out, "CSV")->required();
  add_workers(cum, c);
  cum->callback([&] {
    run = [&] {
      std::vector<double> mean(thresholds.size()), sd(thresholds.size());
      check(nlbs_cumulative_study(n, m, thresholds.data(), thresholds.size(), units, c.seed,
                                  c.workers, mean.data(), sd.data()),
            "cumulative study");
      std::string csv = "threshold,fraction_mean,fraction_std\n";
      for (std::size_t i = 0; i < thresholds.size(); ++i) {
        csv += fmt(thresholds[i]) + ',' + fmt(mean[i]) + ',' + fmt(sd[i]) + '\n';
      }
      write_file(c.out, csv);
      write_meta(c.out, "analyze cumulative", cum, {{"seed", c.seed}});
      std::cout << csv;
    };
  });

  auto* trunc = ana->add_subcommand("truncation", "Mass kept with at most n_max photons per mode");
  trunc->add_option("--n", n, "Photons")->capture_default_str();
  trunc->add_option("--m", m_list, "Mode counts")->delimiter(',')->capture_default_str();
  trunc->add_option("--n-max", n_max, "Photons allowed per mode")->capture_default_str();
  trunc->add_option("--units", units, "Haar unitaries")->capture_default_str()
      ->check(CLI::PositiveNumber);
  trunc->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  trunc->add_option("--out", c.out, "CSV")->required();
  add_workers(trunc, c);
  trunc->callback([&] {
    run = [&] {
      std::string csv = "n,m,n_max,units,mass_mean,mass_std\n";
      for (int mm : m_list) {
        double mean = 0.0, sd = 0.0;
        check(nlbs_truncation_study(n, mm, n_max, units, c.seed, c.workers, &mean, &sd),
              "truncation study");
        csv += std::to_string(n) + ',' + std::to_string(mm) + ',' + std::to_string(n_max) + ',' +
               std::to_string(units) + ',' + fmt(mean) + ',' + fmt(sd) + '\n';
      }
      write_file(c.out, csv);
      write_meta(c.out, "analyze truncation", trunc, {{"seed", c.seed}});
      std::cout << csv;
    };
  });

  auto* lin = ana->add_subcommand("linear-search",
                                  "Best Haar-random linear stand-in for a non-linear experiment");
  lin->add_option("--config", config_path, "Experiment JSON")->required()
      ->check(CLI::ExistingFile);
  lin->add_option("--iterations", iterations, "Haar draws")->capture_default_str()
      ->check(CLI::PositiveNumber);
  lin->add_option("--seed", c.seed, "Seed")->capture_default_str();
  lin->add_option("--out", c.out, "Trace CSV")->required();
  lin->callback([&] {
    run = [&] {
      Experiment e = load_experiment(config_path);
      std::vector<double> trace(static_cast<std::size_t>(iterations));
      double best = 0.0;
      check(nlbs_linear_search(e.get(), iterations, c.seed, &best, trace.data(), nullptr),
            "linear search");
      nlbs_distribution *nl = nullptr, *ub = nullptr;
      check(nlbs_distribution_nonlinear(e.get(), 1, &nl), "non-linear distribution");
      Dist o1(nl);
      check(nlbs_distribution_linear_phase(e.get(), 1, &ub), "linear-phase distribution");
      Dist o2(ub);
      double tvd_ubar = 0.0;
      check(nlbs_tvd(nl, ub, &tvd_ubar), "tvd");
      std::string csv = "iteration,best_tvd\n";
      for (std::size_t i = 0; i < trace.size(); ++i) {
        csv += std::to_string(i + 1) + ',' + fmt(trace[i]) + '\n';
      }
      write_file(c.out, csv);
      write_meta(c.out, "analyze linear-search", lin,
                 {{"seed", c.seed},
                  {"config_file", embedded(config_path)},
                  {"best_tvd", best},
                  {"tvd_linear_phase", tvd_ubar}});
      std::cout << "best_tvd " << fmt(best) << "\ntvd_linear_phase " << fmt(tvd_ubar) << "\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (run) run();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return 1;
  }
  return 0;
}
