// Copyright 2026 The qheat Authors
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


// One line per acceptance criterion, PASS or FAIL, with the measured
// quantity next to its tolerance. Exit status is nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qheat/analysis.hpp"
#include "qheat/scenarios.hpp"

using namespace qheat;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<double> spectrum(const ComplexMatrix& m) { return herm_eig(m).eigenvalues; }

// Central differences with h and h/2 combined by one Richardson step.
double fd_derivative(const std::function<double(double)>& f, int n, double h) {
  auto central = [&](double s) {
    switch (n) {
      case 1: return (f(s) - f(-s)) / (2.0 * s);
      case 2: return (f(s) - 2.0 * f(0.0) + f(-s)) / (s * s);
      default: return (f(2.0 * s) - 2.0 * f(s) + 2.0 * f(-s) - f(-2.0 * s)) / (2.0 * s * s * s);
    }
  };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

Outcome ac1_ledger_identity() {
  Stopwatch clock;
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> ut(0.0, 2000.0);
  double worst = 0.0;
  int coherent = 0;
  for (int i = 0; i < 100; ++i) {
    const Scenario s = random_scenario(rng);
    if (!s.initial.coherence.empty()) ++coherent;
    const DensityMatrix rho0 = s.initial_state();
    const HeatLedger L = compute_ledger(rho0, evolve(rho0, s.h_total(), s.spec, ut(rng)), s.spec,
                                        s.parts());
    worst = std::max(worst, L.identity_residual());
  }
  const double secs = clock.seconds();
  return {worst < 1e-8 && secs < 30.0,
          "worst |lhs-rhs|/max(|lhs|,1e-6) " + fmt("%.2e", worst) +
              " (tol 1e-8) over 100 random scenarios, " + std::to_string(coherent) +
              " with coherence; " + fmt("%.2f", secs) + " s (limit 30 s)"};
}

Outcome ac2_derivative_oracle() {
  double worst_rel = 0.0;
  int checked = 0, failed = 0;
  for (const auto& name : scenario_names()) {
    const Scenario s = scenario(name, 0);
    const DensityMatrix rho0 = s.initial_state();
    const PauliSum h = s.h_total();
    const PauliSum hb = free_hamiltonian_b(s.spec);
    auto q = [&](double t) {
      const std::vector<double> times{t};
      return heat_series(rho0, h, hb, s.spec, times).q[0];
    };
    for (int n = 1; n <= 3; ++n) {
      const double exact = q_derivative(rho0, h, hb, s.spec, n).value;
      const double fd = fd_derivative(q, n, 1e-3);
      const double err = std::abs(fd - exact);
      ++checked;
      if (err > std::max(1e-6 * std::abs(exact), 1e-10)) ++failed;
      if (std::abs(exact) > 1e-10) worst_rel = std::max(worst_rel, err / std::abs(exact));
    }
  }
  return {failed == 0, std::to_string(checked - failed) + "/" + std::to_string(checked) +
                           " (scenario, order) pairs within 1e-6 rel or 1e-10 abs; worst "
                           "relative error on nonzero values " +
                           fmt("%.2e", worst_rel)};
}

Outcome ac3_convexity_closed_form() {
  const Scenario s = scenario("fig1b");
  const Complex c = s.h_inter.terms().front().coeff();
  const CalibrationResult cal = calibrate_convention(s.spec, c);
  const double closed = convexity_closed_form(s.spec, c, cal.adopted);
  const double numeric =
      q_derivative(s.initial_state(), s.h_total(), free_hamiltonian_b(s.spec), s.spec, 2).value;
  const double rel = std::abs(closed - numeric) / std::abs(numeric);
  return {rel < 1e-9 && numeric > 0.0,
          "closed form (" + std::string(to_string(cal.adopted)) + ") " + fmt("%.12e", closed) +
              " vs nested commutator " + fmt("%.12e", numeric) + ", rel err " + fmt("%.1e", rel) +
              " (tol 1e-9); sign " + (numeric > 0.0 ? "positive" : "not positive")};
}

Outcome ac4_phase_boundary() {
  Stopwatch clock;
  bool ok = true;
  std::string detail;
  for (double a : {0.01, 0.5, 1.0}) {
    ScanOptions o;
    o.a = a;
    o.oracle = true;  // convexity from nested commutators, not the closed form
    const ScanResult r = phase_scan(o);
    const double cell = o.ratio1.step();
    double worst = 0.0;
    for (const auto& b : r.boundary) {
      worst = std::max(worst, std::abs(b.beta_a1_over_beta_b -
                                       phase_boundary(a, b.beta_a2_over_beta_b)));
    }
    const bool pass = !r.boundary.empty() && worst < cell;
    ok &= pass;
    detail += "a=" + fmt("%g", a) + ": " + std::to_string(r.boundary.size()) +
              " boundary pts, max offset " + fmt("%.1e", worst / cell) + " cells; ";
  }
  const double secs = clock.seconds();
  ok &= secs < 60.0;
  return {ok, detail + "201x201, " + fmt("%.2f", secs) + " s (limit 60 s)"};
}

Outcome ac5_perturbation() {
  // J = 0 reproduces the unperturbed closed form exactly.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(0.01, 2.0), ur(0.0, 5.0);
  bool exact = true;
  for (int i = 0; i < 1000; ++i) {
    const SystemSpec s = tripartite_spec(ua(rng), 1.0, 0.15997, ur(rng), ur(rng));
    exact &= perturbed_convexity(s, 0.005, 0.0) == convexity_closed_form(s, 0.005);
  }
  // The perturbed closed form against nested commutators at fig1b parameters.
  const Scenario f = scenario("fig1b");
  double worst = 0.0;
  for (double jc : {0.2, 0.5, 1.0}) {
    const double j = jc * 0.005;
    const double numeric = q_derivative(product_state(f.spec), tripartite_hamiltonian(f.spec, 0.005, j),
                                        free_hamiltonian_b(f.spec), f.spec, 2)
                               .value;
    worst = std::max(worst, std::abs(perturbed_convexity(f.spec, 0.005, j) - numeric) /
                                std::abs(numeric));
  }
  std::vector<std::size_t> cells;
  for (double jc : {0.0, 0.2, 0.5, 1.0}) {
    ScanOptions o;
    o.j_over_c = jc;
    cells.push_back(phase_scan(o).aht_cells);
  }
  const bool monotone = std::is_sorted(cells.rbegin(), cells.rend());
  const bool nonempty = cells[1] > 0;
  std::string counts;
  for (std::size_t k = 0; k < cells.size(); ++k) counts += (k ? "/" : "") + std::to_string(cells[k]);
  return {exact && monotone && nonempty && worst < 1e-9,
          std::string("J=0 identical to unperturbed form: ") + (exact ? "yes" : "no") +
              "; AHT cells at J/c=0/0.2/0.5/1: " + counts + (monotone ? " (non-increasing)" : " (NOT monotone)") +
              "; perturbed form vs nested commutator rel err " + fmt("%.1e", worst)};
}

Outcome ac6_no_coherence() {
  double worst_rate = 0.0, worst_conv = INFINITY;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Scenario s = theorem1_random(seed);
    const DensityMatrix rho = s.initial_state();
    const auto hb = free_hamiltonian_b(s.spec);
    const double d1 = q_derivative(rho, s.h_total(), hb, s.spec, 1).value;
    const double d2 = q_derivative(rho, s.h_total(), hb, s.spec, 2).value;
    worst_rate = std::max(worst_rate, std::abs(d1));
    worst_conv = std::min(worst_conv, (s.spec.beta_b() - s.spec.beta_a()) * d2);
  }
  // Global coherence eps (s+ s+ ... + h.c.) under flip-flop couplings.
  bool global_ok = true;
  std::string global;
  auto layout = [&](const SystemSpec& s, const std::vector<FlipFlopCoupling>& ff) {
    std::vector<PauliFactor> all;
    for (const auto& q : s.qubits()) all.push_back({q.label, PauliOp::Plus});
    const DensityMatrix rho =
        local_equilibrium_state(s, PauliSum{PauliTerm(0.02, all)}.with_hc());
    const PauliSum h = free_hamiltonian(s) + two_body_interaction(s, ff);
    const double d1 = q_derivative(rho, h, free_hamiltonian_b(s), s, 1).value;
    const double d2 = q_derivative(rho, h, free_hamiltonian_b(s), s, 2).value;
    const bool ok = std::abs(d1) < 1e-10 && (s.beta_b() - s.beta_a()) * d2 >= -1e-10;
    global_ok &= ok;
    global += std::to_string(s.num_a()) + "+" + std::to_string(s.num_b()) + " dQ/dt " +
              fmt("%.1e", d1) + ", (bB-bA) d2Q " + fmt("%.2e", (s.beta_b() - s.beta_a()) * d2) +
              "; ";
  };
  layout(SystemSpec({{"A1", 1.0, 1.5}, {"A2", 1.0, 2.0}}, {{"B1", 1.0}}, 0.6),
         {{"A1", "B1", 0.01}, {"A2", "B1", 0.02}});
  layout(SystemSpec({{"A1", 1.0, 1.5}, {"A2", 1.0, 2.0}}, {{"B1", 1.0}, {"B2", 1.0}}, 0.6),
         {{"A1", "B1", 0.01}, {"A2", "B2", 0.02}, {"A1", "B2", 0.005}});
  return {worst_rate < 1e-10 && worst_conv >= -1e-10 && global_ok,
          "200 seeds: max |dQ/dt| " + fmt("%.1e", worst_rate) + " (tol 1e-10), min (bB-bA) d2Q " +
              fmt("%.2e", worst_conv) + " (tol -1e-10); global coherence " + global};
}

Outcome ac7_mechanisms() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"fig1b", "fig1c", "fig1d"}) {
    const Scenario s = scenario(name);
    const auto times = uniform_times(s.run.t_max, s.run.t_steps);
    const TimeSeries ts = ledger_series(s.initial_state(), s.h_total(), s.parts(), s.spec, times);
    const auto it = std::min_element(ts.lhs.begin(), ts.lhs.end());
    const std::size_t i = static_cast<std::size_t>(it - ts.lhs.begin());
    std::map<Mechanism, int> votes;
    for (std::size_t k = 0; k < ts.lhs.size(); ++k)
      if (ts.lhs[k] < 0.0) ++votes[ts.mechanisms[k]];
    Mechanism majority = Mechanism::None;
    int best = 0;
    for (const auto& [m, v] : votes)
      if (v > best) best = v, majority = m;
    const Mechanism expected = *s.expected_mechanism;
    const bool pass = *it < 0.0 && ts.mechanisms[i] == expected && majority == expected;
    ok &= pass;
    detail += std::string(name) + ": min lhs " + fmt("%.3e", *it) + " at t=" + fmt("%g", times[i]) +
              ", " + std::string(to_string(ts.mechanisms[i])) + " (" + std::to_string(best) + "/" +
              std::to_string(votes.empty() ? 0 : [&] {
                int n = 0;
                for (const auto& [m, v] : votes) n += v;
                return n;
              }()) +
              " AHT samples)" + (pass ? "" : " MISMATCH") + "; ";
  }
  return {ok, detail};
}

Outcome ac8_conservation() {
  double worst_energy = 0.0, worst_entropy = 0.0, worst_spectrum = 0.0;
  int runs = 0;
  auto check = [&](const Scenario& s, std::size_t stride) {
    ++runs;
    const DensityMatrix rho0 = s.initial_state();
    const Evolver ev(to_matrix(s.h_total(), s.spec));
    const auto e0 = spectrum(rho0.matrix());
    const double s0 = von_neumann_entropy(rho0);
    const bool htc = s.htc().holds;
    const LedgerBuilder ledger(rho0, s.spec, s.parts());
    const auto times = uniform_times(s.run.t_max, s.run.t_steps);
    for (std::size_t k = 0; k < times.size(); k += stride) {
      const DensityMatrix rho(ev.evolve(rho0.matrix(), times[k]),
                              {rho0.dims().begin(), rho0.dims().end()});
      const auto e = spectrum(rho.matrix());
      for (std::size_t j = 0; j < e.size(); ++j)
        worst_spectrum = std::max(worst_spectrum, std::abs(e[j] - e0[j]));
      worst_entropy = std::max(worst_entropy, std::abs(von_neumann_entropy(rho) - s0));
      if (htc) worst_energy = std::max(worst_energy, std::abs(ledger(rho).energy_balance()));
    }
  };
  for (const auto& name : scenario_names()) check(scenario(name, 0), 1);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) check(random_scenario(rng), 50);
  return {worst_energy < 1e-10 && worst_entropy < 1e-9 && worst_spectrum < 1e-9,
          "max |dE_A + dE_B| " + fmt("%.1e", worst_energy) + " (tol 1e-10), max |dS| " +
              fmt("%.1e", worst_entropy) + ", max spectrum drift " + fmt("%.1e", worst_spectrum) +
              " (tol 1e-9) over " + std::to_string(runs) + " runs"};
}

Outcome ac9_clausius() {
  std::mt19937_64 rng(9);
  RandomScenarioOptions o;
  o.homogeneous_a = true;
  o.intra = false;
  o.coherence = false;
  o.correlations = false;
  o.two_body_only = true;
  double worst = 0.0;
  std::size_t samples = 0;
  for (int i = 0; i < 50; ++i) {
    const Scenario s = random_scenario(rng, o);
    const auto times = uniform_times(s.run.t_max, s.run.t_steps);
    const TimeSeries ts =
        heat_series(s.initial_state(), s.h_total(), free_hamiltonian_b(s.spec), s.spec, times);
    worst = std::min(worst, *std::min_element(ts.lhs.begin(), ts.lhs.end()));
    samples += ts.lhs.size();
  }
  return {worst >= -1e-10, "min lhs " + fmt("%.2e", worst) + " (tol -1e-10) over 50 scenarios, " +
                               std::to_string(samples) + " samples"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 ledger identity", ac1_ledger_identity},
      {"AC2 derivative oracle", ac2_derivative_oracle},
      {"AC3 convexity closed form", ac3_convexity_closed_form},
      {"AC4 phase boundary", ac4_phase_boundary},
      {"AC5 perturbation robustness", ac5_perturbation},
      {"AC6 no anomalous flow without coherence", ac6_no_coherence},
      {"AC7 mechanism classification", ac7_mechanisms},
      {"AC8 conservation and unitarity", ac8_conservation},
      {"AC9 Clausius recovery", ac9_clausius},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome r{false, ""};
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failures;
    std::printf("%s %s | %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
