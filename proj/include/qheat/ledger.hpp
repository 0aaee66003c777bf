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

// Entropy functionals (nats) and the entropy-flux ledger that splits the
// heat exchanged between a locally equilibrated cold system A and hot
// system B into relative entropies, correlation changes, a
// temperature-inhomogeneity flux and an interaction-energy flux.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qheat/pauli.hpp"
#include "qheat/states.hpp"

namespace qheat {

double von_neumann_entropy(const ComplexMatrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);

struct RelativeEntropy {
  double value;                       // +inf on support violation
  bool support_violation = false;
  double smallest_reference_eigenvalue = 0.0;
  double weight_outside_support = 0.0;
};

/// S(rho || sigma) = -tr(rho ln sigma) - S(rho). Eigenvalues of sigma below
/// 1e-14 count as outside its support.
RelativeEntropy relative_entropy_checked(const ComplexMatrix& rho,
                                         const ComplexMatrix& sigma);
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// sum over parts of S(marginal) - S(joint). Throws std::invalid_argument
/// unless the parts cover every subsystem exactly once.
double mutual_information(const DensityMatrix& rho,
                          const std::vector<std::vector<std::size_t>>& partition);

/// Split of the system Hamiltonian used by the ledger. a_parts[k] acts on
/// the k-th A qubit only; a_interaction is H_AI; b is the full H_B.
struct HamiltonianParts {
  std::vector<PauliSum> a_parts;
  PauliSum a_interaction;
  PauliSum b;

  /// Free qubit Hamiltonians from spec plus the given intrasystem term.
  static HamiltonianParts from_spec(const SystemSpec& spec, PauliSum h_ai = {});
};

/// Thrown when the initial state is not locally equilibrated.
class NotLocalEquilibriumError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HeatLedger {
  double q = 0.0;    // Delta<H_B>
  double lhs = 0.0;  // (beta_B - beta_A) q
  std::vector<double> rel_entropy_a;  // S(rho'_{A_k} || rho_{A_k})
  double rel_entropy_b = 0.0;         // S(rho'_B || rho_B)
  double delta_mutual_ab = 0.0;       // Delta I_AB
  double delta_temp_inhom = 0.0;      // sum_k (beta_A - beta_{A_k}) Delta<H_{A_k}>
  double delta_interaction = 0.0;     // beta_A Delta<H_AI>
  double delta_mutual_intra = 0.0;    // Delta I_A
  double delta_mutual_cross = 0.0;    // Delta I_{A:B}
  double delta_energy_a = 0.0;        // Delta<H_A>, H_A = sum_k H_{A_k} + H_AI
  double delta_entropy_joint = 0.0;   // S(rho') - S(rho)

  double rhs() const;
  /// |lhs - rhs| / max(|lhs|, 1e-6)
  double identity_residual() const;
  /// Delta<H_A> + Delta<H_B>
  double energy_balance() const { return delta_energy_a + q; }
  /// Delta I_{A:B} + S(rho'_B || rho_B)
  double entropy_production() const { return delta_mutual_cross + rel_entropy_b; }
};

/// Ledger between an initial local-equilibrium state and a later state.
/// Mutual informations use each state's own marginals. Throws
/// NotLocalEquilibriumError when a marginal of rho_initial deviates from its
/// Gibbs state by more than 1e-9 (max abs entry).
HeatLedger compute_ledger(const DensityMatrix& rho_initial,
                          const DensityMatrix& rho_final, const SystemSpec& spec,
                          const HamiltonianParts& parts);

/// Same, but reuses precomputed initial-state quantities across many final
/// states (time series).
class LedgerBuilder {
 public:
  LedgerBuilder(const DensityMatrix& rho_initial, const SystemSpec& spec,
                const HamiltonianParts& parts);
  HeatLedger operator()(const DensityMatrix& rho_final) const;

 private:
  struct Marginals {
    std::vector<ComplexMatrix> a;
    ComplexMatrix a_joint;
    ComplexMatrix b;
  };
  Marginals marginals_of(const ComplexMatrix& rho) const;

  const SystemSpec* spec_;
  std::vector<std::size_t> a_idx_;
  std::vector<std::size_t> b_idx_;
  std::vector<std::size_t> dims_;
  std::vector<ComplexMatrix> h_ak_;  // full-space operators
  ComplexMatrix h_ai_;
  ComplexMatrix h_b_;
  std::vector<double> beta_ak_;
  double beta_a_;
  double beta_b_;
  ComplexMatrix rho0_;
  Marginals m0_;
  std::vector<double> s0_a_;
  double s0_a_joint_;
  double s0_b_;
  double s0_joint_;
  std::vector<double> e0_ak_;
  double e0_ai_;
  double e0_b_;
};

enum class Mechanism {
  None,
  CorrelationIntra,
  CorrelationCross,
  TemperatureInhomogeneity,
  Interaction,
  Mixed,
};

std::string_view to_string(Mechanism m) noexcept;
/// Inverse of to_string; throws std::invalid_argument.
Mechanism mechanism_from_string(std::string_view s);

/// `None` when lhs >= -threshold. Otherwise the most negative of {Delta I_A,
/// Delta I_{A:B}, Delta T_A, Delta J_A}; `Mixed` when the runner-up is also
/// negative and within `threshold` of it.
Mechanism classify_aht(const HeatLedger& ledger, double threshold = 1e-12);

}  // namespace qheat
