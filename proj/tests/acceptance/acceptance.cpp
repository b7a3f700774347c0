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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nlbs/analysis.hpp"
#include "nlbs/gadget.hpp"
#include "nlbs/io.hpp"
#include "nlbs/linear_bs.hpp"
#include "nlbs/nonlinear_bs.hpp"
#include "nlbs/sim.hpp"

using nlbs::Complex;
using nlbs::ComplexMatrix;
using nlbs::FockState;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, title,
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string num(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Complex permutation_sum(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  Complex sum = 0.0;
  do {
    Complex prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) prod *= a(i, p[i]);
    sum += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

double max_residual(const ComplexMatrix& u, double phi) {
  double worst = 0.0;
  for (const Complex r : nlbs::gadget_residuals(u, phi)) worst = std::max(worst, std::abs(r));
  return worst;
}

nlbs::GadgetSearchResult search(int k, double phi, double p_th, int starts, double tol = 1e-8) {
  nlbs::GadgetSearchOptions o;
  o.k = k;
  o.phi = phi;
  o.p_th = p_th;
  o.starts = starts;
  o.seed = 1;
  o.tolerance = tol;
  return nlbs::optimize_gadget(o);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NLBS_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// CSV body: everything after the header line.
std::string csv_body(const std::string& path) {
  const std::string text = nlbs::read_text_file(path);
  const auto nl = text.find('\n');
  return nl == std::string::npos ? std::string() : text.substr(nl + 1);
}

}  // namespace

int main() {
  std::printf("nlbs acceptance suite, version %s\n", NLBS_VERSION);
  const std::filesystem::path data(NLBS_DATA_DIR);

  report(1, "permanent oracle equivalence", [] {
    const auto t0 = std::chrono::steady_clock::now();
    nlbs::Rng rng(2024);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(i % 7);
      std::vector<Complex> e(n * n);
      for (auto& z : e) z = {g(rng), g(rng)};
      const ComplexMatrix a(n, n, e);
      worst = std::max(worst, std::abs(nlbs::permanent(a) - permutation_sum(a)));
    }
    const double secs = elapsed_since(t0);
    return Outcome{worst <= 1e-9 && secs < 5.0,
                   "200 matrices n=1..7, max |Ryser - naive| = " + num(worst) + " (<= 1e-9), " +
                       num(secs, 3) + " s (< 5 s)"};
  });

  report(2, "published gadget constants", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const double want[] = {0.209, 0.04, 0.008};
    const double tol[] = {0.005, 0.005, 0.003};
    bool ok = true;
    std::string detail = "Pr_succ";
    for (int k = 2; k <= 4; ++k) {
      const auto g = nlbs::load_gadget(data / ("published_k" + std::to_string(k) + ".json"));
      const double pr = nlbs::success_probability(g.u_eff);
      ok = ok && std::abs(pr - want[k - 2]) <= tol[k - 2];
      detail += " k=" + std::to_string(k) + ":" + num(pr) + " (" + num(want[k - 2]) + "+-" +
                num(tol[k - 2]) + ")";
    }
    const auto g2 = nlbs::load_gadget(data / "published_k2.json");
    const double r = max_residual(g2.u_eff, pi / 2);
    ok = ok && r <= 5e-3;
    const double secs = elapsed_since(t0);
    ok = ok && secs < 1.0;
    return Outcome{ok, detail + "; max|r_l| k=2 = " + num(r) + " (<= 5e-3)"};
  });

  // Criteria 3 and 4 share the synthesized gadgets.
  const auto t_synth = std::chrono::steady_clock::now();
  const auto main_search = search(2, pi / 2, 0.15, 100);
  std::vector<nlbs::GadgetSearchResult> grid;
  for (int j = 1; j <= 8; ++j) grid.push_back(search(2, j * pi / 16, 0.1, 30));
  const double synth_secs = elapsed_since(t_synth);

  report(3, "success-probability bound", [&] {
    bool ok = nlbs::success_bound(pi / 2) == 0.25;
    double worst_gap = main_search.best.success_prob - nlbs::success_bound(pi / 2);
    for (int j = 1; j <= 8; ++j) {
      const auto& r = grid[static_cast<std::size_t>(j - 1)];
      worst_gap = std::max(worst_gap, r.best.success_prob - nlbs::success_bound(j * pi / 16));
    }
    ok = ok && worst_gap <= 1e-9;
    return Outcome{ok, "bound(pi/2) = " + num(nlbs::success_bound(pi / 2), 17) +
                           "; max (Pr_succ - bound) over 9 synthesized k=2 gadgets = " +
                           num(worst_gap) + " (<= 1e-9)"};
  });

  report(4, "gadget synthesis", [&] {
    bool ok = main_search.found && main_search.best.residual <= 1e-8 &&
              main_search.best.success_prob >= 0.15;
    std::string detail = "pi/2, 100 starts: found=" + std::to_string(main_search.found) +
                         " D=" + num(main_search.best.residual) +
                         " Pr=" + num(main_search.best.success_prob) + "; grid j*pi/16 Pr:";
    for (const auto& r : grid) {
      ok = ok && r.found && r.best.residual <= 1e-8 && r.best.success_prob >= 0.1;
      detail += " " + num(r.best.success_prob, 3);
    }
    return Outcome{ok, detail + " (>= 0.1); synthesis " + num(synth_secs, 3) + " s"};
  });

  report(5, "exact simulation with k = n", [] {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case {
      int n, m;
      double phi;
    };
    const Case cases[] = {{2, 2, pi / 4}, {2, 2, pi / 2}, {3, 5, pi / 2}};
    nlbs::Rng rng(5);
    double worst_tvd = 0.0, worst_res = 0.0;
    bool ok = true;
    for (const Case& c : cases) {
      const auto g = search(c.n, c.phi, std::min(0.1, nlbs::default_threshold(c.n)), 20, 1e-20);
      ok = ok && g.found;
      worst_res = std::max(worst_res, max_residual(g.best.u_eff, c.phi));
      for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix w = nlbs::haar_unitary(c.m, rng);
        const ComplexMatrix v = nlbs::haar_unitary(c.m, rng);
        const FockState s = nlbs::standard_input(c.n, c.m);
        const std::size_t x = nlbs::default_nonlinear_mode(c.m);
        const auto ps = nlbs::postselected_distribution(nlbs::build_setup(w, v, x, s, g.best));
        worst_tvd = std::max(worst_tvd,
                             nlbs::tvd(ps.distribution, nlbs::nlp_distribution(w, x, c.phi, v, s)));
      }
    }
    const double secs = elapsed_since(t0);
    ok = ok && worst_res <= 1e-10 && worst_tvd <= 1e-6 && secs < 60.0;
    return Outcome{ok, "(2,2,pi/4) (2,2,pi/2) (3,5,pi/2) x5 draws: max|r_l| = " + num(worst_res) +
                           " (<= 1e-10), max TVD = " + num(worst_tvd) + " (<= 1e-6)"};
  });

  report(6, "analytic degeneracies", [] {
    nlbs::Rng rng(6);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix w = nlbs::haar_unitary(9, rng);
      const ComplexMatrix v = nlbs::haar_unitary(9, rng);
      const FockState s = nlbs::standard_input(3, 9);
      for (double phi : {0.0, pi}) {
        const auto nl = nlbs::nlp_distribution(w, 5, phi, v, s);
        const auto lin = nlbs::output_distribution(nlbs::ubar(w, 5, phi, v), s);
        worst = std::max(worst, nlbs::tvd(nl, lin));
      }
    }
    const double h = 1.0 / std::sqrt(2.0);
    const Complex e[] = {h, h, h, -h};
    const ComplexMatrix bs(2, 2, e);
    const FockState s({1, 1});
    const auto nl = nlbs::nlp_distribution(bs, 1, pi / 4, bs, s);
    const auto lin = nlbs::output_distribution(nlbs::ubar(bs, 1, pi / 4, bs), s);
    const double hom_err = std::max({std::abs(nl[0] - 0.5), std::abs(nl[1]), std::abs(nl[2] - 0.5)});
    const double hom_tvd = nlbs::tvd(nl, lin);
    const bool ok = worst <= 1e-10 && hom_err <= 1e-10 && std::abs(hom_tvd - 0.5) <= 1e-10;
    return Outcome{ok, "phi in {0, pi}, 10 draws n=3 m=9: max TVD(nl, Ubar) = " + num(worst) +
                           " (<= 1e-10); HOM pi/4 = (" + num(nl[0], 6) + ", " + num(nl[1], 3) +
                           ", " + num(nl[2], 6) + "), TVD vs linear phase = " + num(hom_tvd, 12)};
  });

  report(7, "equation cross-validation", [] {
    nlbs::Rng rng(7);
    double d_gen = 0.0, d_split = 0.0, d_lit = 0.0, comp = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int m = 2 + trial % 5;
      const int n = 1 + trial % std::min(3, m);
      const ComplexMatrix w = nlbs::haar_unitary(m, rng);
      const ComplexMatrix v = nlbs::haar_unitary(m, rng);
      std::uniform_real_distribution<double> u(0.0, 2 * pi);
      const double phi = u(rng);
      const std::size_t x = 1 + static_cast<std::size_t>(trial) % static_cast<std::size_t>(m);
      const FockState s = nlbs::standard_input(n, m);
      const nlbs::NonlinearExperiment diag{
          w, v, nlbs::NonlinearGate(nlbs::DiagonalGate{[x, phi](const FockState& r) {
            const double k = r[x - 1];
            return std::exp(Complex(0.0, -k * k * phi));
          }}),
          s};
      const auto general = nlbs::nl_amplitudes_general(diag);
      const auto single = nlbs::nlp_amplitudes(w, x, phi, v, s);
      const auto space = nlbs::enumerate_states(m, n);
      for (std::size_t r = 0; r < space->size(); ++r) {
        const FockState& t = (*space)[r];
        d_gen = std::max(d_gen, std::abs(general[r] - single[r]));
        d_split = std::max(d_split, std::abs(nlbs::nlp_amplitude_split(w, x, phi, v, s, t) - single[r]));
        d_lit = std::max(d_lit, std::abs(nlbs::nlp_amplitude(w, x, phi, v, s, t) - single[r]));
        comp = std::max(comp, nlbs::verify_composition(w, v, s, t));
      }
    }
    const bool ok = d_gen <= 1e-12 && d_split <= 1e-12 && d_lit <= 1e-12 && comp <= 1e-9;
    return Outcome{ok, "50 instances: |general - single sum| = " + num(d_gen) +
                           ", |split - single sum| = " + num(d_split) +
                           ", |literal - vector| = " + num(d_lit) +
                           " (<= 1e-12); composition residual = " + num(comp) + " (<= 1e-9)"};
  });

  report(8, "cumulative fractions", [] {
    const double thresholds[] = {0.9, 0.95, 0.99};
    const double want[] = {0.5, 0.6, 0.8};
    const auto res = nlbs::cumulative_study(3, 9, thresholds, 200, 8);
    bool ok = true;
    std::string detail = "n=3 m=9, 200 unitaries:";
    for (int i = 0; i < 3; ++i) {
      ok = ok && std::abs(res[i].mean - want[i]) <= 0.1;
      detail += " " + num(thresholds[i], 3) + "->" + num(res[i].mean, 3) + "+-" +
                num(res[i].stddev, 2) + " (" + num(want[i], 2) + "+-0.1)";
    }
    return Outcome{ok, detail};
  });

  report(9, "TVD and bunching at reduced scale", [] {
    nlbs::TvdBunchingOptions o;
    o.n = 3;
    o.modes = {5, 9, 16, 27};
    o.ks = {1, 2};
    o.phi = pi / 2;
    o.trials = 50;
    o.seed = 1;
    const auto res = nlbs::experiment_tvd_vs_bunching(o);
    const auto groups = nlbs::summarize(res.records);
    auto mean_tvd = [&](int m, int k) {
      for (const auto& g : groups) {
        if (g.m == m && g.k == k) return g.tvd.mean;
      }
      return std::nan("");
    };
    bool ok = true;
    std::string detail;
    for (int k : o.ks) {
      detail += "k=" + std::to_string(k) + " mean TVD:";
      for (std::size_t i = 0; i < o.modes.size(); ++i) {
        const double t = mean_tvd(o.modes[i], k);
        detail += " " + num(t, 3);
        if (i > 0) ok = ok && t < mean_tvd(o.modes[i - 1], k);
      }
      detail += "; ";
    }
    for (int m : o.modes) ok = ok && mean_tvd(m, 1) > mean_tvd(m, 2);
    double rho = NAN;
    for (const auto& g : groups) {
      if (g.m == 9 && g.k == 2) rho = g.spearman_tvd_site;
    }
    ok = ok && rho >= 0.5;
    return Outcome{ok, detail + "Spearman(tvd, p_bunch_site) at m=9 k=2 = " + num(rho, 3) +
                           " (>= 0.5)"};
  });

  report(10, "sampling convergence", [] {
    const auto g = search(2, pi / 2, 0.15, 20);
    nlbs::Rng rng(10);
    const ComplexMatrix w = nlbs::haar_unitary(5, rng);
    const ComplexMatrix v = nlbs::haar_unitary(5, rng);
    const FockState s = nlbs::standard_input(3, 5);
    const auto setup = nlbs::build_setup(w, v, 3, s, g.best);
    const auto exact = nlbs::nlp_distribution(w, 3, pi / 2, v, s);
    const double floor = nlbs::tvd(nlbs::postselected_distribution(setup).distribution, exact);
    const std::size_t sizes[] = {100, 300, 1000, 3000, 10000};
    const int reps = 10;
    std::vector<double> means;
    for (std::size_t n : sizes) {
      double sum = 0.0;
      for (int r = 0; r < reps; ++r) {
        nlbs::Rng stream = nlbs::derive_stream(10, {n, static_cast<std::uint64_t>(r)});
        const auto res = nlbs::run_algorithm1(setup, n, stream);
        sum += nlbs::tvd(nlbs::empirical_distribution(res.space, res.ranks), exact);
      }
      means.push_back(sum / reps);
    }
    bool ok = true;
    std::string detail = "floor " + num(floor, 3) + "; mean empirical TVD (" +
                         std::to_string(reps) + " runs) at N=";
    for (std::size_t i = 0; i < means.size(); ++i) {
      detail += (i ? ", " : "") + std::to_string(sizes[i]) + ":" + num(means[i], 3);
      if (i > 0) ok = ok && means[i] < means[i - 1];
    }
    ok = ok && means.back() <= 2.0 * floor;
    return Outcome{ok, detail + " (decreasing, last <= 2 x floor)"};
  });

  report(11, "truncation study", [] {
    const auto r = nlbs::haar_truncation_study(3, 9, 2, 1000, 11);
    return Outcome{std::abs(r.mean - 0.95) <= 0.05,
                   "n=3 m=9 n_max=2, 1000 unitaries: mean kept mass = " + num(r.mean, 4) + "+-" +
                       num(r.stddev, 2) + " (0.95+-0.05)"};
  });

  report(12, "determinism", [&] {
    const std::string exp_args =
        "experiment tvd-bunching --n 3 --modes 5,9 --k 1,2 --trials 10 --seed 7 --workers 1 --out ";
    const std::string sim_args = "simulate --config " + (data / "example_n3_m5.json").string() +
                                 " --samples 2000 --seed 7 --out ";
    bool ok = run_cli(exp_args + "acc_exp_a.csv") == 0 && run_cli(exp_args + "acc_exp_b.csv") == 0 &&
              run_cli(sim_args + "acc_sim_a.csv") == 0 && run_cli(sim_args + "acc_sim_b.csv") == 0;
    if (!ok) return Outcome{false, "CLI run failed"};
    const std::string ea = csv_body("acc_exp_a.csv"), eb = csv_body("acc_exp_b.csv");
    const std::string sa = csv_body("acc_sim_a.csv"), sb = csv_body("acc_sim_b.csv");
    ok = !ea.empty() && ea == eb && !sa.empty() && sa == sb;
    return Outcome{ok, "experiment CSV bodies identical: " + std::string(ea == eb ? "yes" : "no") +
                           " (" + std::to_string(ea.size()) + " bytes); simulate CSV bodies identical: " +
                           (sa == sb ? "yes" : "no") + " (" + std::to_string(sa.size()) + " bytes)"};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
