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

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qheat/analysis.hpp"

namespace qheat {

/// Deviations from the product Gibbs state, see local_equilibrium_state.
struct InitialStateRecipe {
  PauliSum coherence;
  PauliSum correlations;
  bool is_product() const { return coherence.empty() && correlations.empty(); }
};

/// Kelvin and GHz inputs kept as given; betas derive from them at load.
struct SiSource {
  double frequency_ghz;  // omega_0 / 2 pi
  std::vector<double> a_kelvin;
  double b_kelvin;
};

struct RunSettings {
  double t_max = 2000.0;
  std::size_t t_steps = 2000;
};

struct Scenario {
  Scenario(std::string n, SystemSpec s) : name(std::move(n)), spec(std::move(s)) {}

  std::string name;
  SystemSpec spec;
  PauliSum h_inter;    // H_I, couples A and B
  PauliSum h_intra;    // H_AI, inside A
  PauliSum h_perturb;  // extra terms that may break the heat transfer condition
  InitialStateRecipe initial;
  std::optional<Mechanism> expected_mechanism;
  bool declared_htc_violation = false;
  RunSettings run;
  std::optional<SiSource> si;
  std::vector<std::string> notes;

  PauliSum h_free() const { return free_hamiltonian(spec); }
  /// Free part plus every interaction; the generator of the motion.
  PauliSum h_total() const;
  HamiltonianParts parts() const { return HamiltonianParts::from_spec(spec, h_intra); }
  DensityMatrix initial_state() const;
  /// [H_I + H_b, H_A0 + H_AI + H_B] with H_b the perturbation.
  HtcReport htc() const;
};

/// Names accepted by `scenario`.
std::vector<std::string> scenario_names();

/// Built-in scenario by name: fig1b, fig1c, fig1d, fig2a, fig2b,
/// theorem1-random. `seed` only affects theorem1-random. Throws
/// std::invalid_argument for an unknown name.
Scenario scenario(std::string_view name, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Random generators (deterministic for a given engine state)

struct RandomScenarioOptions {
  std::size_t min_qubits = 2;
  std::size_t max_qubits = 4;
  bool coherence = true;         // may inject valid initial coherence
  bool correlations = true;      // may inject classical correlations
  bool intra = true;             // may include an intrasystem interaction
  bool homogeneous_a = false;    // all A qubits share one temperature
  bool a_colder = false;         // every beta_{A_k} > beta_B
  bool two_body_only = false;    // H_I restricted to A-B flip-flops
  double deviation_probability = 0.5;  // per allowed deviation kind
};

/// HTC-compliant Hamiltonian and local-equilibrium initial state.
Scenario random_scenario(std::mt19937_64& rng, const RandomScenarioOptions& opts = {});

/// Diagonal, classically correlated initial state with random flip-flop
/// couplings and a colder A.
Scenario theorem1_random(std::uint64_t seed);

// ---------------------------------------------------------------------------
// JSON configuration

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a config document. Throws ConfigError with a path-qualified
/// message for malformed input.
Scenario scenario_from_json(std::string_view text);
Scenario load_scenario_file(const std::string& path);
std::string scenario_to_json(const Scenario& s);

}  // namespace qheat
