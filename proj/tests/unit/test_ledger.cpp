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


#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qheat/dynamics.hpp"
#include "qheat/scenarios.hpp"

using namespace qheat;

namespace {

const double kLn2 = std::log(2.0);

ComplexMatrix diag(std::vector<double> d) { return ComplexMatrix::diagonal(d); }

ComplexMatrix bell() {
  ComplexMatrix b(4);
  b(0, 0) = b(0, 3) = b(3, 0) = b(3, 3) = 0.5;
  return b;
}

// Ledger at the sample with the most negative lhs over the scenario window.
HeatLedger most_anomalous(const Scenario& s) {
  const DensityMatrix rho0 = s.initial_state();
  const auto times = uniform_times(s.run.t_max, s.run.t_steps);
  const TimeSeries ts = heat_series(rho0, s.h_total(), free_hamiltonian_b(s.spec), s.spec, times);
  const auto it = std::min_element(ts.lhs.begin(), ts.lhs.end());
  const double t = times[static_cast<std::size_t>(it - ts.lhs.begin())];
  return compute_ledger(rho0, evolve(rho0, s.h_total(), s.spec, t), s.spec, s.parts());
}

void check_invariants(const HeatLedger& L) {
  CHECK(L.identity_residual() < 1e-8);
  CHECK(std::abs(L.delta_mutual_ab - L.delta_mutual_intra - L.delta_mutual_cross) < 1e-10);
  for (double r : L.rel_entropy_a) CHECK(r >= -1e-10);
  CHECK(L.rel_entropy_b >= -1e-10);
  CHECK(std::abs(L.delta_entropy_joint) < 1e-9);
}

}  // namespace

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(diag({1.0, 0.0})) == 0.0);
  CHECK(von_neumann_entropy(bell()) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(diag({0.5, 0.5})) == doctest::Approx(kLn2).epsilon(1e-15));
  const double p0 = oracle::gibbs_p0(0.38394);
  CHECK(von_neumann_entropy(gibbs_qubit(0.38394)) ==
        doctest::Approx(oracle::binary_entropy(p0)).epsilon(1e-14));
  CHECK(von_neumann_entropy(gibbs_qubit(0.38394)) == doctest::Approx(0.67513).epsilon(2e-4));
}

TEST_CASE("relative entropy") {
  std::mt19937_64 rng(31);
  const auto r = oracle::random_density(rng, 4);
  CHECK(std::abs(relative_entropy_checked(r, r).value) < 1e-12);

  const double p = 0.59483;
  const double expect = -kLn2 - 0.5 * std::log(p) - 0.5 * std::log(1.0 - p);
  const auto s = relative_entropy_checked(diag({0.5, 0.5}), diag({p, 1.0 - p}));
  CHECK(s.value == doctest::Approx(expect).epsilon(1e-13));
  // The same number is ln cosh(beta omega / 2) at p = 1 / (1 + e^{-beta omega}).
  CHECK(s.value == doctest::Approx(std::log(std::cosh(0.38394 / 2.0))).epsilon(1e-4));
  CHECK_FALSE(s.support_violation);

  const auto pure = relative_entropy_checked(diag({1.0, 0.0}), diag({0.5, 0.5}));
  CHECK(pure.value == doctest::Approx(kLn2).epsilon(1e-14));

  const auto bad = relative_entropy_checked(diag({0.5, 0.5}), diag({1.0, 0.0}));
  CHECK(bad.support_violation);
  CHECK(bad.value == std::numeric_limits<double>::infinity());
  CHECK(bad.weight_outside_support == doctest::Approx(0.5));

  // Off-diagonal reference: compare with -tr(rho ln sigma) - S(rho) built
  // from an independent eigendecomposition.
  const auto a = oracle::random_density(rng, 4);
  const auto b = oracle::random_density(rng, 4);
  const auto lnb = matrix_func(b, [](double x) { return std::log(x); });
  const double cross = -oracle::trace(oracle::mul(a, lnb)).real();
  CHECK(relative_entropy_checked(a, b).value ==
        doctest::Approx(cross - von_neumann_entropy(a)).epsilon(1e-10));
  CHECK(relative_entropy_checked(a, b).value > 0.0);
}

TEST_CASE("mutual information") {
  const SystemSpec s({{"A1", 1.0, 2.0}, {"A2", 1.3, 1.5}}, {{"B", 1.0}}, 1.0);
  const DensityMatrix prod = product_state(s);
  CHECK(std::abs(mutual_information(prod, {{0}, {1}, {2}})) < 1e-13);
  CHECK(std::abs(mutual_information(prod, {{0, 2}, {1}})) < 1e-13);

  const DensityMatrix b(bell(), {2, 2});
  CHECK(mutual_information(b, {{0}, {1}}) == doctest::Approx(2.0 * kLn2).epsilon(1e-12));

  const Scenario f = scenario("fig1d");
  const DensityMatrix rho = f.initial_state();
  const std::vector<std::size_t> a{0, 1};
  const DensityMatrix ra = rho.reduced(a);
  const double three = mutual_information(rho, {{0}, {1}, {2}});
  CHECK(three > 0.0);
  CHECK(three == doctest::Approx(mutual_information(ra, {{0}, {1}})).epsilon(1e-12));

  CHECK_THROWS_AS(mutual_information(prod, {{0}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(mutual_information(prod, {{0}, {0, 1}, {2}}), std::invalid_argument);
}

TEST_CASE("ledger of an unchanged state is zero") {
  for (const char* name : {"fig1b", "fig1c", "fig1d"}) {
    const Scenario s = scenario(name);
    const DensityMatrix rho = s.initial_state();
    const HeatLedger L = compute_ledger(rho, rho, s.spec, s.parts());
    CHECK(L.q == 0.0);
    CHECK(L.lhs == 0.0);
    CHECK(std::abs(L.rhs()) < 1e-14);
    CHECK(std::abs(L.delta_mutual_ab) < 1e-14);
    CHECK(std::abs(L.delta_temp_inhom) < 1e-14);
    CHECK(std::abs(L.delta_interaction) < 1e-14);
    for (double r : L.rel_entropy_a) CHECK(std::abs(r) < 1e-14);
    CHECK(classify_aht(L) == Mechanism::None);
  }
}

TEST_CASE("ledger rejects states that are not locally in equilibrium") {
  const SystemSpec s({{"A1", 1.0, 2.0}}, {{"B", 1.0}}, 1.0);
  const DensityMatrix off(diag({0.4, 0.1, 0.3, 0.2}), {2, 2});
  CHECK_THROWS_AS(compute_ledger(off, off, s, HamiltonianParts::from_spec(s)),
                  NotLocalEquilibriumError);
}

TEST_CASE("ledger identity and invariants on random scenarios") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ut(0.0, 500.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Scenario s = random_scenario(rng);
    const DensityMatrix rho0 = s.initial_state();
    const LedgerBuilder ledger(rho0, s.spec, s.parts());
    const DensityMatrix rho = evolve(rho0, s.h_total(), s.spec, ut(rng));
    const HeatLedger L = ledger(rho);
    check_invariants(L);
    CHECK(std::abs(L.energy_balance()) < 1e-10);
    CHECK(L.entropy_production() >= -1e-10);
  }
}

TEST_CASE("Clausius statement for homogeneous product states") {
  std::mt19937_64 rng(33);
  RandomScenarioOptions o;
  o.homogeneous_a = true;
  o.intra = false;
  o.coherence = false;
  o.correlations = false;
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario s = random_scenario(rng, o);
    const auto ts = ledger_series(s.initial_state(), s.h_total(), s.parts(), s.spec,
                                  uniform_times(300.0, 60));
    for (std::size_t i = 0; i < ts.times.size(); ++i) {
      CHECK(ts.lhs[i] >= -1e-10);
      CHECK(std::abs(ts.ledgers[i].delta_temp_inhom) < 1e-12);
      CHECK(std::abs(ts.ledgers[i].delta_interaction) < 1e-12);
    }
  }

  // The fig1b layout with A2 raised to the temperature of A1.
  Scenario hot = scenario("fig1b");
  auto a = hot.spec.a_subsystems();
  a[1].beta = a[0].beta;
  hot.spec = SystemSpec(a, hot.spec.b_qubits(), hot.spec.beta_b());
  const auto times = uniform_times(hot.run.t_max, hot.run.t_steps);
  const auto ts = heat_series(hot.initial_state(), hot.h_total(), free_hamiltonian_b(hot.spec),
                              hot.spec, times);
  CHECK(*std::min_element(ts.lhs.begin(), ts.lhs.end()) >= -1e-10);
}

TEST_CASE("figure ledgers carry the stated mechanisms") {
  SUBCASE("temperature inhomogeneity") {
    const HeatLedger L = most_anomalous(scenario("fig1b"));
    check_invariants(L);
    CHECK(L.lhs < 0.0);
    for (double other : {L.delta_mutual_intra, L.delta_mutual_cross, L.delta_interaction})
      CHECK(L.delta_temp_inhom < other);
    CHECK(classify_aht(L) == Mechanism::TemperatureInhomogeneity);
  }
  SUBCASE("intrasystem interaction") {
    const HeatLedger L = most_anomalous(scenario("fig1c"));
    check_invariants(L);
    CHECK(L.lhs < 0.0);
    CHECK(std::abs(L.delta_temp_inhom) < 1e-14);
    CHECK(classify_aht(L) == Mechanism::Interaction);
  }
  SUBCASE("intrasystem correlation") {
    const HeatLedger L = most_anomalous(scenario("fig1d"));
    check_invariants(L);
    CHECK(L.lhs < 0.0);
    CHECK(L.delta_mutual_intra < 0.0);
    CHECK(std::abs(L.delta_temp_inhom) < 1e-14);
    CHECK(std::abs(L.delta_interaction) < 1e-14);
    CHECK(classify_aht(L) == Mechanism::CorrelationIntra);
  }
}

TEST_CASE("mechanism classification rules") {
  HeatLedger L;
  L.rel_entropy_a = {0.0};
  CHECK(classify_aht(L) == Mechanism::None);
  L.lhs = 1e-3;
  CHECK(classify_aht(L) == Mechanism::None);

  L.lhs = -1e-3;
  L.delta_mutual_intra = -2e-3;
  L.delta_mutual_cross = 5e-4;
  L.delta_temp_inhom = -1e-4;
  CHECK(classify_aht(L) == Mechanism::CorrelationIntra);
  L.delta_mutual_cross = -3e-3;
  CHECK(classify_aht(L) == Mechanism::CorrelationCross);
  L.delta_interaction = -4e-3;
  CHECK(classify_aht(L) == Mechanism::Interaction);
  L.delta_temp_inhom = -4e-3 - 1e-14;
  CHECK(classify_aht(L) == Mechanism::Mixed);
  L.delta_temp_inhom = -5e-3;
  CHECK(classify_aht(L) == Mechanism::TemperatureInhomogeneity);

  for (Mechanism m : {Mechanism::None, Mechanism::CorrelationIntra, Mechanism::CorrelationCross,
                      Mechanism::TemperatureInhomogeneity, Mechanism::Interaction,
                      Mechanism::Mixed}) {
    CHECK(mechanism_from_string(to_string(m)) == m);
  }
  CHECK_THROWS(mechanism_from_string("entropy"));
}
