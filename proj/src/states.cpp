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

#include "qheat/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qheat {

namespace {

// CODATA 2018 exact values.
constexpr double kPlanck = 6.62607015e-34;
constexpr double kBoltzmann = 1.380649e-23;
constexpr double kBetaOmegaCap = 700.0;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

}  // namespace

double validate_density_matrix(const ComplexMatrix& m, const StateTolerances& tol) {
  const std::size_t n = m.dim();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol.hermiticity) {
        throw InvalidStateError("density matrix is not Hermitian at (" +
                                    std::to_string(r) + "," + std::to_string(c) + ")",
                                std::nan(""));
      }
    }
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw InvalidStateError("density matrix trace is " + format_double(tr.real()) +
                                ", expected 1",
                            std::nan(""));
  }
  const double min_ev = herm_eig(m).eigenvalues.front();
  if (min_ev < tol.min_eigenvalue) {
    throw InvalidStateError("density matrix is not positive semidefinite: most "
                            "negative eigenvalue " + format_double(min_ev),
                            min_ev);
  }
  return min_ev;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims,
                             const StateTolerances& tol)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (product(dims_) != matrix_.dim()) {
    throw std::invalid_argument("DensityMatrix: subsystem dims do not match matrix");
  }
  validate_density_matrix(matrix_, tol);
}

DensityMatrix DensityMatrix::reduced(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> dims;
  for (std::size_t s : keep) dims.push_back(dims_.at(s));
  // Marginals of a valid state are valid; only rounding-level slack needed.
  return DensityMatrix(partial_trace(matrix_, keep, dims_), std::move(dims),
                       {1e-10, 1e-10, -1e-10});
}

std::vector<double> DensityMatrix::eigenvalues() const {
  return herm_eig(matrix_).eigenvalues;
}

double beta_omega_si(double temperature_kelvin, double frequency_hz) {
  if (!(temperature_kelvin > 0.0) || !std::isfinite(temperature_kelvin)) {
    throw std::invalid_argument("beta_omega_si: temperature must be positive and finite");
  }
  return kPlanck * frequency_hz / (kBoltzmann * temperature_kelvin);
}

DensityMatrix gibbs_qubit(double beta_omega) {
  if (!(beta_omega >= 0.0) || std::isinf(beta_omega)) {
    throw std::invalid_argument("gibbs_qubit: beta*omega must be finite and >= 0");
  }
  const double x = std::min(beta_omega, kBetaOmegaCap);
  const double p0 = 1.0 / (1.0 + std::exp(-x));
  // 1 - p0 computed directly to keep relative accuracy at large x.
  const double p1 = std::exp(-x) / (1.0 + std::exp(-x));
  const double diag[] = {p0, p1};
  return DensityMatrix(ComplexMatrix::diagonal(diag), {2});
}

ComplexMatrix gibbs_matrix(const ComplexMatrix& h, double beta) {
  const auto eig = herm_eig(h);
  // Shift by the ground energy so the exponentials stay bounded.
  const double e0 = eig.eigenvalues.front();
  double z = 0.0;
  for (double e : eig.eigenvalues) z += std::exp(-beta * (e - e0));
  return matrix_func(eig, [&](double e) { return std::exp(-beta * (e - e0)) / z; });
}

DensityMatrix product_state(const SystemSpec& spec) {
  std::vector<ComplexMatrix> factors;
  factors.reserve(spec.num_qubits());
  for (const auto& q : spec.qubits()) {
    factors.push_back(gibbs_qubit(q.beta * q.omega).matrix());
  }
  return DensityMatrix(kron(factors), spec.dims());
}

DensityMatrix add_coherence(const DensityMatrix& rho, const PauliSum& chi,
                            const SystemSpec& spec) {
  if (rho.dim() != spec.dim()) {
    throw std::invalid_argument("add_coherence: state and system dimensions differ");
  }
  const ComplexMatrix c = to_matrix(chi, spec);
  if (hermiticity_defect(c) > 1e-12) {
    throw std::invalid_argument("add_coherence: coherence term is not Hermitian");
  }
  for (std::size_t i = 0; i < c.dim(); ++i) {
    if (std::abs(c(i, i)) > 1e-14) {
      throw std::invalid_argument(
          "add_coherence: coherence term has a diagonal component; only "
          "off-diagonal (traceless) coherence may be injected");
    }
  }
  return DensityMatrix(rho.matrix() + c, spec.dims());
}

ComplexMatrix embed_deviation(const SystemSpec& spec, const PauliSum& deviation) {
  ComplexMatrix out(spec.dim());
  for (const auto& t : deviation.terms()) {
    std::vector<bool> touched(spec.num_qubits(), false);
    for (const auto& f : t.factors()) touched[spec.index_of(f.label)] = true;
    std::vector<ComplexMatrix> env;
    for (std::size_t q = 0; q < spec.num_qubits(); ++q) {
      const Qubit& qb = spec.qubit(q);
      env.push_back(touched[q] ? ComplexMatrix::identity(2)
                               : gibbs_qubit(qb.beta * qb.omega).matrix());
    }
    // term (x) I commutes with the diagonal environment factor.
    out += to_matrix(t, spec) * kron(env);
  }
  return out;
}

DensityMatrix local_equilibrium_state(const SystemSpec& spec, const PauliSum& coherence,
                                      const PauliSum& correlations) {
  for (const auto& t : correlations.terms()) {
    for (const auto& f : t.factors()) {
      if (f.op != PauliOp::Z) {
        throw std::invalid_argument("correlation terms may only contain sigma^z factors");
      }
    }
  }
  const ComplexMatrix chi = embed_deviation(spec, coherence);
  if (hermiticity_defect(chi) > 1e-12) {
    throw std::invalid_argument("coherence term is not Hermitian");
  }
  for (std::size_t i = 0; i < chi.dim(); ++i) {
    if (std::abs(chi(i, i)) > 1e-14) {
      throw std::invalid_argument(
          "coherence term has a diagonal component; only off-diagonal coherence may "
          "be injected");
    }
  }
  const ComplexMatrix d = embed_deviation(spec, correlations);
  if (hermiticity_defect(d) > 1e-12) {
    throw std::invalid_argument("correlation term is not Hermitian");
  }
  return DensityMatrix(product_state(spec).matrix() + chi + d, spec.dims());
}

double off_diagonal_mass(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      if (r != c) sum += std::norm(m(r, c));
    }
  }
  return std::sqrt(sum);
}

bool is_diagonal(const DensityMatrix& rho, std::span<const std::size_t> subsystems,
                 double tol) {
  return off_diagonal_mass(partial_trace(rho.matrix(), subsystems, rho.dims())) < tol;
}

}  // namespace qheat
