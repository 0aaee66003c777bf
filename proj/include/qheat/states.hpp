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

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qheat/linalg.hpp"
#include "qheat/pauli.hpp"
#include "qheat/system.hpp"

namespace qheat {

/// Thrown when a matrix fails density-matrix validation.
class InvalidStateError : public std::runtime_error {
 public:
  InvalidStateError(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

struct StateTolerances {
  double hermiticity = 1e-12;  // max |rho_ij - conj(rho_ji)|
  double trace = 1e-12;        // |tr rho - 1|
  double min_eigenvalue = -1e-10;
};

/// Hermitian, unit-trace, positive semidefinite matrix with its tensor
/// factor dimensions. Construction validates; failures are reported, never
/// clipped.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims,
                const StateTolerances& tol = {});

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

  /// Reduced state on `keep` (factor order follows `keep`).
  DensityMatrix reduced(std::span<const std::size_t> keep) const;

  std::vector<double> eigenvalues() const;

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

/// Validation without construction: returns the smallest eigenvalue and
/// throws InvalidStateError on failure.
double validate_density_matrix(const ComplexMatrix& m, const StateTolerances& tol = {});

/// beta * omega from SI inputs: h f / (k_B T), f = omega / 2 pi in Hz.
double beta_omega_si(double temperature_kelvin, double frequency_hz);

/// Thermal state of -omega/2 sigma^z at the given beta*omega:
/// diag(p0, 1 - p0), p0 = 1 / (1 + exp(-beta omega)). Values above 700 are
/// capped. Throws std::invalid_argument for negative or non-finite input.
DensityMatrix gibbs_qubit(double beta_omega);

/// exp(-beta H) / Z for a Hermitian matrix H.
ComplexMatrix gibbs_matrix(const ComplexMatrix& h, double beta);

/// Tensor product of every qubit's Gibbs state at its own temperature.
DensityMatrix product_state(const SystemSpec& spec);

/// rho + chi. chi must be Hermitian with an exactly zero diagonal (so the
/// trace and populations are untouched). Throws std::invalid_argument for a
/// bad chi and InvalidStateError when the sum is not positive semidefinite.
DensityMatrix add_coherence(const DensityMatrix& rho, const PauliSum& chi,
                            const SystemSpec& spec);

/// Each term of `deviation` acting on qubit set S, embedded as
/// term_S (x) rho_rest with rho_rest the Gibbs product of the other qubits.
ComplexMatrix embed_deviation(const SystemSpec& spec, const PauliSum& deviation);

/// Product Gibbs state plus embedded classical correlations (terms built
/// from sigma^z only) and coherence (terms with zero diagonal). Throws
/// std::invalid_argument when a term is in the wrong group and
/// InvalidStateError when the result is not a state.
DensityMatrix local_equilibrium_state(const SystemSpec& spec, const PauliSum& coherence,
                                      const PauliSum& correlations = {});

/// True iff the reduced state on `subsystems` has off-diagonal Frobenius
/// mass below tol.
bool is_diagonal(const DensityMatrix& rho, std::span<const std::size_t> subsystems,
                 double tol = 1e-12);
double off_diagonal_mass(const ComplexMatrix& m);

}  // namespace qheat
