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

#include "qheat/ledger.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace qheat {

namespace {

constexpr double kEigenFloor = 1e-14;

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  return trace_product_hermitian(rho, op).real();
}

}  // namespace

double von_neumann_entropy(const ComplexMatrix& rho) {
  double s = 0.0;
  for (double p : herm_eig(rho).eigenvalues) {
    if (p > kEigenFloor) s -= p * std::log(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix());
}

RelativeEntropy relative_entropy_checked(const ComplexMatrix& rho,
                                         const ComplexMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  }
  const auto eig = herm_eig(sigma);
  RelativeEntropy out{0.0};
  out.smallest_reference_eigenvalue = eig.eigenvalues.front();
  // -tr(rho ln sigma) = -sum_k ln(mu_k) <w_k|rho|w_k>
  const ComplexMatrix rotated = sandwich(eig.eigenvectors, rho);
  double cross = 0.0;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double weight = rotated(k, k).real();
    const double mu = eig.eigenvalues[k];
    if (mu < kEigenFloor) {
      if (weight > kEigenFloor) {
        out.support_violation = true;
        out.weight_outside_support += weight;
      }
      continue;
    }
    cross -= weight * std::log(mu);
  }
  if (out.support_violation) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = cross - von_neumann_entropy(rho);
  return out;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy_checked(rho.matrix(), sigma.matrix()).value;
}

double mutual_information(const DensityMatrix& rho,
                          const std::vector<std::vector<std::size_t>>& partition) {
  std::vector<int> covered(rho.dims().size(), 0);
  for (const auto& part : partition) {
    if (part.empty()) throw std::invalid_argument("mutual_information: empty part");
    for (std::size_t s : part) {
      if (s >= covered.size()) {
        throw std::invalid_argument("mutual_information: subsystem out of range");
      }
      ++covered[s];
    }
  }
  if (std::any_of(covered.begin(), covered.end(), [](int c) { return c != 1; })) {
    throw std::invalid_argument(
        "mutual_information: partition must cover every subsystem exactly once");
  }
  double sum = 0.0;
  for (const auto& part : partition) {
    sum += von_neumann_entropy(partial_trace(rho.matrix(), part, rho.dims()));
  }
  return sum - von_neumann_entropy(rho);
}

HamiltonianParts HamiltonianParts::from_spec(const SystemSpec& spec, PauliSum h_ai) {
  HamiltonianParts parts;
  for (std::size_t k : spec.a_indices()) {
    parts.a_parts.push_back(qubit_hamiltonian(spec, spec.qubit(k).label));
  }
  parts.a_interaction = std::move(h_ai);
  parts.b = free_hamiltonian_b(spec);
  return parts;
}

double HeatLedger::rhs() const {
  double sum = std::accumulate(rel_entropy_a.begin(), rel_entropy_a.end(), 0.0);
  return sum + rel_entropy_b + delta_mutual_ab + delta_temp_inhom + delta_interaction;
}

double HeatLedger::identity_residual() const {
  return std::abs(lhs - rhs()) / std::max(std::abs(lhs), 1e-6);
}

LedgerBuilder::LedgerBuilder(const DensityMatrix& rho_initial, const SystemSpec& spec,
                             const HamiltonianParts& parts)
    : spec_(&spec),
      a_idx_(spec.a_indices()),
      b_idx_(spec.b_indices()),
      dims_(spec.dims()),
      h_ai_(to_matrix(parts.a_interaction, spec)),
      h_b_(to_matrix(parts.b, spec)),
      beta_a_(spec.num_a() ? spec.beta_a() : 0.0),
      beta_b_(spec.beta_b()),
      rho0_(rho_initial.matrix()),
      m0_{{}, ComplexMatrix(1), ComplexMatrix(1)} {
  if (spec.num_a() == 0 || spec.num_b() == 0) {
    throw std::invalid_argument("ledger: both A and B must be non-empty");
  }
  if (rho_initial.dim() != spec.dim()) {
    throw std::invalid_argument("ledger: state and system dimensions differ");
  }
  if (parts.a_parts.size() != spec.num_a()) {
    throw std::invalid_argument("ledger: need one Hamiltonian per A subsystem");
  }
  for (std::size_t k : a_idx_) {
    h_ak_.push_back(to_matrix(parts.a_parts[k], spec));
    beta_ak_.push_back(spec.qubit(k).beta);
  }
  m0_ = marginals_of(rho0_);

  // The decomposition presumes locally equilibrated initial marginals.
  for (std::size_t k = 0; k < a_idx_.size(); ++k) {
    const std::size_t idx[] = {a_idx_[k]};
    const SystemSpec local = spec.restrict(idx);
    const ComplexMatrix gibbs = gibbs_matrix(to_matrix(parts.a_parts[k], local), beta_ak_[k]);
    const double dev = max_abs_diff(m0_.a[k], gibbs);
    if (dev > 1e-9) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "ledger: initial marginal of %s deviates from its Gibbs state "
                    "by %.3e",
                    spec.qubit(a_idx_[k]).label.c_str(), dev);
      throw NotLocalEquilibriumError(buf);
    }
  }
  {
    const SystemSpec local = spec.restrict(b_idx_);
    const ComplexMatrix gibbs = gibbs_matrix(to_matrix(parts.b, local), beta_b_);
    const double dev = max_abs_diff(m0_.b, gibbs);
    if (dev > 1e-9) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "ledger: initial marginal of B deviates from its Gibbs state by %.3e",
                    dev);
      throw NotLocalEquilibriumError(buf);
    }
  }

  for (const auto& m : m0_.a) s0_a_.push_back(von_neumann_entropy(m));
  s0_a_joint_ = von_neumann_entropy(m0_.a_joint);
  s0_b_ = von_neumann_entropy(m0_.b);
  s0_joint_ = von_neumann_entropy(rho0_);
  for (const auto& h : h_ak_) e0_ak_.push_back(expectation(rho0_, h));
  e0_ai_ = expectation(rho0_, h_ai_);
  e0_b_ = expectation(rho0_, h_b_);
}

LedgerBuilder::Marginals LedgerBuilder::marginals_of(const ComplexMatrix& rho) const {
  Marginals m{{}, partial_trace(rho, a_idx_, dims_), partial_trace(rho, b_idx_, dims_)};
  for (std::size_t k : a_idx_) {
    const std::size_t keep[] = {k};
    m.a.push_back(partial_trace(rho, keep, dims_));
  }
  return m;
}

HeatLedger LedgerBuilder::operator()(const DensityMatrix& rho_final) const {
  if (rho_final.dim() != rho0_.dim()) {
    throw std::invalid_argument("ledger: final state dimension differs");
  }
  const ComplexMatrix& rho = rho_final.matrix();
  const Marginals m = marginals_of(rho);

  HeatLedger L;
  L.q = expectation(rho, h_b_) - e0_b_;
  L.lhs = (beta_b_ - beta_a_) * L.q + 0.0;

  double sum_s_a = 0.0;
  double sum_s0_a = 0.0;
  L.delta_energy_a = 0.0;
  for (std::size_t k = 0; k < m.a.size(); ++k) {
    L.rel_entropy_a.push_back(relative_entropy_checked(m.a[k], m0_.a[k]).value);
    sum_s_a += von_neumann_entropy(m.a[k]);
    sum_s0_a += s0_a_[k];
    const double de = expectation(rho, h_ak_[k]) - e0_ak_[k];
    L.delta_temp_inhom += (beta_a_ - beta_ak_[k]) * de;
    L.delta_energy_a += de;
  }
  const double de_ai = expectation(rho, h_ai_) - e0_ai_;
  L.delta_interaction = beta_a_ * de_ai;
  L.delta_energy_a += de_ai;
  L.rel_entropy_b = relative_entropy_checked(m.b, m0_.b).value;

  const double s_a_joint = von_neumann_entropy(m.a_joint);
  const double s_b = von_neumann_entropy(m.b);
  const double s_joint = von_neumann_entropy(rho);
  L.delta_entropy_joint = s_joint - s0_joint_;

  const double i_ab = sum_s_a + s_b - s_joint;
  const double i_ab0 = sum_s0_a + s0_b_ - s0_joint_;
  const double i_a = sum_s_a - s_a_joint;
  const double i_a0 = sum_s0_a - s0_a_joint_;
  const double i_cross = s_a_joint + s_b - s_joint;
  const double i_cross0 = s0_a_joint_ + s0_b_ - s0_joint_;
  L.delta_mutual_ab = i_ab - i_ab0;
  L.delta_mutual_intra = i_a - i_a0;
  L.delta_mutual_cross = i_cross - i_cross0;
  return L;
}

HeatLedger compute_ledger(const DensityMatrix& rho_initial,
                          const DensityMatrix& rho_final, const SystemSpec& spec,
                          const HamiltonianParts& parts) {
  return LedgerBuilder(rho_initial, spec, parts)(rho_final);
}

std::string_view to_string(Mechanism m) noexcept {
  switch (m) {
    case Mechanism::None:
      return "none";
    case Mechanism::CorrelationIntra:
      return "correlation-intra";
    case Mechanism::CorrelationCross:
      return "correlation-cross";
    case Mechanism::TemperatureInhomogeneity:
      return "temperature-inhomogeneity";
    case Mechanism::Interaction:
      return "interaction";
    case Mechanism::Mixed:
      return "mixed";
  }
  return "unknown";
}

Mechanism mechanism_from_string(std::string_view s) {
  for (Mechanism m : {Mechanism::None, Mechanism::CorrelationIntra,
                      Mechanism::CorrelationCross, Mechanism::TemperatureInhomogeneity,
                      Mechanism::Interaction, Mechanism::Mixed}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown mechanism '" + std::string(s) + "'");
}

Mechanism classify_aht(const HeatLedger& ledger, double threshold) {
  // Rounding-level negatives are not anomalous flow.
  if (ledger.lhs >= -threshold) return Mechanism::None;
  std::array<std::pair<double, Mechanism>, 4> terms{{
      {ledger.delta_mutual_intra, Mechanism::CorrelationIntra},
      {ledger.delta_mutual_cross, Mechanism::CorrelationCross},
      {ledger.delta_temp_inhom, Mechanism::TemperatureInhomogeneity},
      {ledger.delta_interaction, Mechanism::Interaction},
  }};
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  const auto& [most, label] = terms[0];
  const double runner_up = terms[1].first;
  if (runner_up < 0.0 && runner_up - most < threshold) return Mechanism::Mixed;
  return label;
}

}  // namespace qheat
