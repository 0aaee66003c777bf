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

// Closed-system evolution by exact diagonalisation, heat-flow time series,
// and instantaneous derivatives of the heat via nested commutators.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qheat/ledger.hpp"

namespace qheat {

/// Diagonalises H once and propagates states to arbitrary times.
class Evolver {
 public:
  explicit Evolver(const ComplexMatrix& h);

  /// e^{-iHt} rho e^{iHt}
  ComplexMatrix evolve(const ComplexMatrix& rho, double t) const;

  const HermitianEigenSystem& eigensystem() const noexcept { return eig_; }

 private:
  HermitianEigenSystem eig_;
};

DensityMatrix evolve(const DensityMatrix& rho, const PauliSum& h, const SystemSpec& spec,
                     double t);

/// tr[O (rho(t) - rho(0))] for a fixed initial state and observable. The
/// difference is formed in the eigenbasis of H as
///   sum_ij O_ji rho_ij (e^{-i(l_i - l_j)t} - 1)
/// so small-t values keep full relative precision.
class ExpectationShift {
 public:
  ExpectationShift(const Evolver& evolver, const ComplexMatrix& rho0,
                   const ComplexMatrix& observable);
  double operator()(double t) const;

 private:
  std::vector<double> energies_;
  ComplexMatrix weights_;  // O~_ji rho~_ij stored at (i, j)
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> q;    // Delta<H_B>
  std::vector<double> lhs;  // (beta_B - beta_A) q
  std::vector<HeatLedger> ledgers;    // empty unless requested
  std::vector<Mechanism> mechanisms;  // parallel to ledgers
};

/// q and lhs at each requested time.
TimeSeries heat_series(const DensityMatrix& rho0, const PauliSum& h_total,
                       const PauliSum& h_b, const SystemSpec& spec,
                       std::span<const double> times);

/// heat_series plus a full ledger and AHT label per time point.
TimeSeries ledger_series(const DensityMatrix& rho0, const PauliSum& h_total,
                         const HamiltonianParts& parts, const SystemSpec& spec,
                         std::span<const double> times,
                         double mechanism_threshold = 1e-12);

/// n + 1 evenly spaced points on [0, t_max].
std::vector<double> uniform_times(double t_max, std::size_t steps);

// ---------------------------------------------------------------------------
// Instantaneous derivatives

/// [G, [G, ... [G, O]]] with n nested commutators.
ComplexMatrix nested_commutator(const ComplexMatrix& g, const ComplexMatrix& o, int n);

struct PairRef {
  std::size_t a;  // index of the A qubit
  std::size_t b;  // index of the B qubit
  friend bool operator==(const PairRef&, const PairRef&) = default;
};

enum class ConvexityTermKind {
  Pair,            // both couplings on the same A-B pair
  IntraCoherence,  // coupling pairs share one qubit; doublet-coherence part
  CrossCoherence,  // remainder of a shared-qubit term
};

struct ConvexityTerm {
  ConvexityTermKind kind;
  PairRef first;   // outer coupling
  PairRef second;  // inner coupling
  double value;
};

struct ConvexityDecomposition {
  std::vector<ConvexityTerm> terms;
  double pair_total = 0.0;
  double intra_total = 0.0;
  double cross_total = 0.0;
  double total() const { return pair_total + intra_total + cross_total; }
};

struct DerivativeReport {
  int order;
  double value;
  double imaginary_residue;
  std::optional<ConvexityDecomposition> decomposition;
};

class DerivativeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// d^n Q / dt^n at the instant of rho: i^n tr(rho [G, H_B]_n), with G the
/// generator of the motion (the full Hamiltonian, or H_I alone when the
/// heat transfer condition holds). Requires 1 <= n <= 6. Throws
/// DerivativeError when the imaginary residue exceeds 1e-8.
DerivativeReport q_derivative(const DensityMatrix& rho, const PauliSum& generator,
                              const PauliSum& h_b, const SystemSpec& spec, int n);

/// Precomputed i^n [G, H_B]_n for reuse over many states.
class DerivativeOperator {
 public:
  DerivativeOperator(const PauliSum& generator, const PauliSum& h_b,
                     const SystemSpec& spec, int n);
  DerivativeReport operator()(const ComplexMatrix& rho) const;
  /// Diagonal of the operator; enough for states diagonal in the product basis.
  const std::vector<double>& diagonal() const noexcept { return diag_; }
  int order() const noexcept { return n_; }

 private:
  int n_;
  ComplexMatrix op_;
  std::vector<double> diag_;
};

/// Splits d^2Q/dt^2 under a two-body flip-flop H_I into per-pair terms and
/// shared-qubit terms. For a shared-qubit term the intra part is evaluated
/// on the product of the doublet marginal and the shared qubit's marginal;
/// the cross part is the rest. Couplings on disjoint pairs commute and
/// contribute nothing. Throws std::invalid_argument for any other H_I.
DerivativeReport convexity_decomposition(const DensityMatrix& rho, const PauliSum& h_i,
                                         const SystemSpec& spec);

struct CoherenceSite {
  std::vector<std::size_t> qubits;  // sorted
  double off_diagonal_mass;
  bool diagonal;
};

struct Theorem1Witness {
  std::vector<CoherenceSite> triplets;  // X_m X_k Y_l, both side assignments
  std::vector<CoherenceSite> doublets;  // A_k B_l
  bool theorem_applies;
};

/// Checks the reduced states that can feed first- and second-order
/// anomalous flow under two-body couplings.
Theorem1Witness theorem1_witness(const DensityMatrix& rho, const SystemSpec& spec,
                                 double tol = 1e-12);

}  // namespace qheat
