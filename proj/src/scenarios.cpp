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

#include "qheat/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace qheat {

namespace {

constexpr double kFigureFrequencyGhz = 4.0;
constexpr double kFigureCoupling = 0.005;

struct SiQubit {
  std::string label;
  double omega;  // units of omega_0
  double kelvin;
};

// Betas in units of 1/omega_0 from kelvin temperatures.
SystemSpec si_spec(double f_ghz, const std::vector<SiQubit>& a,
                   const std::vector<std::pair<std::string, double>>& b, double b_kelvin) {
  std::vector<ASubsystem> as;
  for (const auto& q : a) {
    as.push_back({q.label, q.omega, beta_omega_si(q.kelvin, f_ghz * 1e9)});
  }
  std::vector<BQubit> bs;
  for (const auto& [label, omega] : b) bs.push_back({label, omega});
  return SystemSpec(std::move(as), std::move(bs), beta_omega_si(b_kelvin, f_ghz * 1e9));
}

Scenario figure_scenario(std::string name, SystemSpec spec, std::vector<double> a_kelvin,
                         double b_kelvin) {
  Scenario s{std::move(name), std::move(spec)};
  s.si = SiSource{kFigureFrequencyGhz, std::move(a_kelvin), b_kelvin};
  return s;
}

Scenario fig1b() {
  SystemSpec spec = si_spec(kFigureFrequencyGhz, {{"A1", 2.0, 1.0}, {"A2", 1.0, 0.5}},
                            {{"B", 1.0}}, 1.2);
  Scenario s = figure_scenario("fig1b", std::move(spec), {1.0, 0.5}, 1.2);
  s.h_inter = three_body_exchange("A1", "A2", "B", kFigureCoupling);
  s.expected_mechanism = Mechanism::TemperatureInhomogeneity;
  s.notes.push_back(
      "three-body coupling c = 0.005 omega_0 (magnitude not fixed by the source; it "
      "sets the time scale only)");
  return s;
}

Scenario fig1c() {
  SystemSpec spec = si_spec(kFigureFrequencyGhz, {{"A1", 1.0, 1.0}, {"A2", 1.0, 1.0}},
                            {{"B", 1.0}}, 1.2);
  Scenario s = figure_scenario("fig1c", std::move(spec), {1.0, 1.0}, 1.2);
  MixedInteraction mi = build_s19_interaction(1.0, +1, kFigureCoupling, 0.0, s.spec);
  s.h_inter = std::move(mi.h_i);
  s.h_intra = std::move(mi.h_ai);
  s.expected_mechanism = Mechanism::Interaction;
  s.notes.push_back("mixed two- and three-body family with r1 = 1, r2 = 1/2");
  return s;
}

Scenario fig1d() {
  SystemSpec spec = si_spec(kFigureFrequencyGhz, {{"A1", 1.0, 1.0}, {"A2", 1.0, 1.0}},
                            {{"B", 1.0}}, 1.2);
  Scenario s = figure_scenario("fig1d", std::move(spec), {1.0, 1.0}, 1.2);
  s.h_inter = two_body_interaction(
      s.spec, {{"A1", "B", kFigureCoupling}, {"A2", "B", kFigureCoupling}});
  s.initial.coherence = PauliSum{PauliTerm(0.24, {{"A1", PauliOp::Plus},
                                                  {"A2", PauliOp::Minus}})}
                            .with_hc();
  s.expected_mechanism = Mechanism::CorrelationIntra;
  s.notes.push_back("coherence chi_A = 0.24 (s+_A1 s-_A2 + h.c.) tensored with rho_B");
  return s;
}

Scenario fig2(std::string name, double j_over_c) {
  Scenario s = fig1b();
  s.name = std::move(name);
  s.notes.clear();
  s.notes.push_back("three-body exchange model with a = 1 at the fig1b temperatures");
  if (j_over_c != 0.0) {
    s.h_perturb = uniform_two_body_perturbation(s.spec, j_over_c * kFigureCoupling);
    s.declared_htc_violation = true;
    s.expected_mechanism.reset();
    s.notes.push_back("uniform two-body perturbation J = 0.2 c breaks the heat transfer "
                      "condition by design");
  }
  return s;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

Complex random_coupling(std::mt19937_64& rng) {
  return std::polar(uniform(rng, 0.05, 0.5), uniform(rng, 0.0, 2.0 * M_PI));
}

// Random weight >= 2 string with at least one A factor. Diagonal strings use
// sigma^z only; off-diagonal strings carry at least one x or y.
PauliTerm random_string(std::mt19937_64& rng, const SystemSpec& spec, bool diagonal) {
  const std::size_t n = spec.num_qubits();
  for (;;) {
    std::vector<PauliFactor> f;
    bool has_a = false;
    bool has_xy = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (!coin(rng, 0.6)) continue;
      PauliOp op = PauliOp::Z;
      if (!diagonal) {
        const std::size_t k = pick(rng, 0, 2);
        op = k == 0 ? PauliOp::X : (k == 1 ? PauliOp::Y : PauliOp::Z);
      }
      has_a |= spec.qubit(q).side == Side::A;
      has_xy |= op != PauliOp::Z;
      f.push_back({spec.qubit(q).label, op});
    }
    if (f.size() >= 2 && has_a && (diagonal || has_xy)) {
      return PauliTerm(uniform(rng, -1.0, 1.0), std::move(f));
    }
  }
}

double operator_norm(const ComplexMatrix& h) {
  const auto ev = herm_eig(h).eigenvalues;
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

std::vector<double> random_betas(std::mt19937_64& rng, const RandomScenarioOptions& o,
                                 std::size_t n_a, double& beta_b) {
  std::vector<double> betas(n_a);
  const double shared = uniform(rng, 0.2, 2.5);
  for (auto& b : betas) b = o.homogeneous_a ? shared : uniform(rng, 0.2, 2.5);
  const double coldest_a = *std::min_element(betas.begin(), betas.end());
  beta_b = o.a_colder ? coldest_a * uniform(rng, 0.3, 0.9) : uniform(rng, 0.2, 2.5);
  return betas;
}

std::string a_label(std::size_t k) { return "A" + std::to_string(k + 1); }
std::string b_label(std::size_t k) { return "B" + std::to_string(k + 1); }

// Flip-flops on every equal-frequency A-B pair, each kept with probability
// 0.7; at least one survives.
PauliSum random_flip_flops(std::mt19937_64& rng, const SystemSpec& spec) {
  std::vector<FlipFlopCoupling> all;
  for (std::size_t a : spec.a_indices()) {
    for (std::size_t b : spec.b_indices()) {
      if (spec.qubit(a).omega == spec.qubit(b).omega) {
        all.push_back({spec.qubit(a).label, spec.qubit(b).label, random_coupling(rng)});
      }
    }
  }
  std::vector<FlipFlopCoupling> kept;
  for (const auto& c : all) {
    if (coin(rng, 0.7)) kept.push_back(c);
  }
  if (kept.empty() && !all.empty()) kept.push_back(all[pick(rng, 0, all.size() - 1)]);
  return kept.empty() ? PauliSum{} : two_body_interaction(spec, kept);
}

}  // namespace

PauliSum Scenario::h_total() const {
  return h_free() + h_inter + h_intra + h_perturb;
}

DensityMatrix Scenario::initial_state() const {
  return local_equilibrium_state(spec, initial.coherence, initial.correlations);
}

HtcReport Scenario::htc() const {
  return verify_heat_transfer_condition(h_inter + h_perturb,
                                        free_hamiltonian_a(spec) + h_intra,
                                        free_hamiltonian_b(spec), spec);
}

std::vector<std::string> scenario_names() {
  return {"fig1b", "fig1c", "fig1d", "fig2a", "fig2b", "theorem1-random"};
}

Scenario scenario(std::string_view name, std::uint64_t seed) {
  if (name == "fig1b") return fig1b();
  if (name == "fig1c") return fig1c();
  if (name == "fig1d") return fig1d();
  if (name == "fig2a") return fig2("fig2a", 0.0);
  if (name == "fig2b") return fig2("fig2b", 0.2);
  if (name == "theorem1-random") return theorem1_random(seed);
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

Scenario random_scenario(std::mt19937_64& rng, const RandomScenarioOptions& o) {
  if (o.min_qubits < 2 || o.max_qubits < o.min_qubits || o.max_qubits > 10) {
    throw std::invalid_argument("random_scenario: bad qubit range");
  }
  const std::size_t n = pick(rng, o.min_qubits, o.max_qubits);
  const std::size_t n_a = pick(rng, 1, n - 1);
  const std::size_t n_b = n - n_a;
  double beta_b = 0.0;
  const std::vector<double> beta_a = random_betas(rng, o, n_a, beta_b);

  enum class Family { TwoBody, ThreeBody, Mixed };
  Family family = Family::TwoBody;
  if (!o.two_body_only && n_a >= 2) {
    const bool mixed_ok = o.intra && n_a == 2 && n_b == 1;
    const double u = uniform(rng, 0.0, 1.0);
    if (mixed_ok && u < 0.35) {
      family = Family::Mixed;
    } else if (u < 0.7) {
      family = Family::ThreeBody;
    }
  }

  // Frequencies chosen so the family has resonant terms.
  std::vector<double> w_a(n_a), w_b(n_b);
  double r1 = 1.0;
  if (family == Family::TwoBody) {
    const double levels[] = {1.0, 1.7};
    for (auto& w : w_a) w = levels[pick(rng, 0, 1)];
    for (auto& w : w_b) w = levels[pick(rng, 0, 1)];
    w_b[0] = w_a[0];
  } else if (family == Family::ThreeBody) {
    const double a = uniform(rng, 0.3, 2.0);
    const double levels[] = {1.0, a, 1.0 + a};
    w_a[0] = 1.0 + a;
    w_a[1] = a;
    w_b[0] = 1.0;
    for (std::size_t k = 2; k < n_a; ++k) w_a[k] = levels[pick(rng, 0, 2)];
    for (std::size_t k = 1; k < n_b; ++k) w_b[k] = levels[pick(rng, 0, 2)];
  } else {
    r1 = uniform(rng, 0.2, 2.0);
    w_a = {r1, 1.0};
    w_b = {1.0};
  }

  std::vector<ASubsystem> as;
  for (std::size_t k = 0; k < n_a; ++k) as.push_back({a_label(k), w_a[k], beta_a[k]});
  std::vector<BQubit> bs;
  for (std::size_t k = 0; k < n_b; ++k) bs.push_back({b_label(k), w_b[k]});
  Scenario s{"random", SystemSpec(std::move(as), std::move(bs), beta_b)};

  if (family == Family::TwoBody) {
    s.h_inter = random_flip_flops(rng, s.spec);
  } else if (family == Family::ThreeBody) {
    s.h_inter = three_body_exchange("A1", "A2", "B1", random_coupling(rng)) +
                random_flip_flops(rng, s.spec);
    if (n > 3) {
      // sigma^z dressing keeps resonance: z_X (s+_A1 s-_A2 s-_B1 + h.c.)
      const std::string extra = n_a > 2 ? a_label(2) : b_label(1);
      const Complex c = random_coupling(rng);
      s.h_inter += PauliSum{PauliTerm(c, {{"A1", PauliOp::Plus},
                                          {"A2", PauliOp::Minus},
                                          {"B1", PauliOp::Minus},
                                          {extra, PauliOp::Z}})}
                       .with_hc();
    }
  } else {
    MixedInteraction mi = build_s19_interaction(r1, coin(rng) ? 1 : -1,
                                                uniform(rng, -0.3, 0.3),
                                                uniform(rng, -0.3, 0.3), s.spec);
    s.h_inter = std::move(mi.h_i);
    s.h_intra = std::move(mi.h_ai);
  }

  PauliSum corr, coh;
  if (o.correlations && coin(rng, o.deviation_probability)) {
    for (std::size_t k = pick(rng, 1, 3); k > 0; --k) corr += random_string(rng, s.spec, true);
  }
  if (o.coherence && coin(rng, o.deviation_probability)) {
    for (std::size_t k = pick(rng, 1, 3); k > 0; --k) coh += random_string(rng, s.spec, false);
  }
  if (!corr.empty() || !coh.empty()) {
    // Keep the perturbed state well inside the positive cone.
    const auto p = product_state(s.spec).eigenvalues();
    const double norm = operator_norm(embed_deviation(s.spec, corr + coh));
    const double scale = norm > 0.0 ? 0.5 * p.front() / norm * uniform(rng, 0.2, 1.0) : 0.0;
    s.initial.correlations = corr.scaled(scale);
    s.initial.coherence = coh.scaled(scale);
  }
  return s;
}

Scenario theorem1_random(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomScenarioOptions o;
  o.coherence = false;
  o.intra = false;
  o.two_body_only = true;
  o.a_colder = true;
  o.deviation_probability = 1.0;
  Scenario s = random_scenario(rng, o);
  s.name = "theorem1-random";
  s.notes.push_back("seed " + std::to_string(seed) +
                    ": diagonal classically correlated state, two-body flip-flops");
  return s;
}

}  // namespace qheat
