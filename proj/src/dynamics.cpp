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

#include "qheat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qheat {

namespace {

constexpr double kImagResidueLimit = 1e-8;

Complex i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

void check_order(int n) {
  if (n < 1 || n > 6) {
    throw std::invalid_argument("derivative order must lie in 1..6");
  }
}

DerivativeReport finish_report(int n, Complex raw) {
  if (std::abs(raw.imag()) > kImagResidueLimit) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "derivative of order %d has imaginary residue %.3e; operator is "
                  "not Hermitian",
                  n, raw.imag());
    throw DerivativeError(buf);
  }
  return {n, raw.real(), raw.imag(), std::nullopt};
}

std::size_t shared_qubit_count(const PairRef& p, const PairRef& q) {
  return static_cast<std::size_t>(p.a == q.a) + static_cast<std::size_t>(p.b == q.b);
}

// rho_{doublet} (x) rho_{single} (x) rho_{rest}, arranged in the natural order.
ComplexMatrix doublet_product(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                              std::size_t u, std::size_t v, std::size_t s) {
  std::vector<std::size_t> layout = {u, v, s};
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i != u && i != v && i != s) rest.push_back(i);
  }
  const std::size_t uv[] = {u, v};
  const std::size_t ss[] = {s};
  std::vector<ComplexMatrix> factors = {partial_trace(rho, uv, dims),
                                        partial_trace(rho, ss, dims)};
  if (!rest.empty()) {
    factors.push_back(partial_trace(rho, rest, dims));
    layout.insert(layout.end(), rest.begin(), rest.end());
  }
  const ComplexMatrix joined = kron(factors);
  std::vector<std::size_t> order(dims.size());
  for (std::size_t j = 0; j < layout.size(); ++j) order[layout[j]] = j;
  std::vector<std::size_t> layout_dims;
  for (std::size_t q : layout) layout_dims.push_back(dims[q]);
  return permute_subsystems(joined, order, layout_dims);
}

}  // namespace

Evolver::Evolver(const ComplexMatrix& h) : eig_(herm_eig(h)) {}

ComplexMatrix Evolver::evolve(const ComplexMatrix& rho, double t) const {
  ComplexMatrix r = sandwich(eig_.eigenvectors, rho);
  const auto& e = eig_.eigenvalues;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    for (std::size_t j = 0; j < r.dim(); ++j) {
      if (i != j) r(i, j) *= std::polar(1.0, -(e[i] - e[j]) * t);
    }
  }
  return sandwich(eig_.eigenvectors.adjoint(), r);
}

DensityMatrix evolve(const DensityMatrix& rho, const PauliSum& h, const SystemSpec& spec,
                     double t) {
  if (rho.dim() != spec.dim()) {
    throw std::invalid_argument("evolve: state and system dimensions differ");
  }
  const Evolver ev(to_matrix(h, spec));
  // Unitary conjugation only accumulates rounding; allow slack above the
  // default construction tolerance.
  return DensityMatrix(ev.evolve(rho.matrix(), t), spec.dims(), {1e-10, 1e-10, -1e-10});
}

ExpectationShift::ExpectationShift(const Evolver& evolver, const ComplexMatrix& rho0,
                                   const ComplexMatrix& observable)
    : energies_(evolver.eigensystem().eigenvalues), weights_(rho0.dim()) {
  const ComplexMatrix& v = evolver.eigensystem().eigenvectors;
  const ComplexMatrix r = sandwich(v, rho0);
  const ComplexMatrix o = sandwich(v, observable);
  for (std::size_t i = 0; i < r.dim(); ++i) {
    for (std::size_t j = 0; j < r.dim(); ++j) weights_(i, j) = o(j, i) * r(i, j);
  }
}

double ExpectationShift::operator()(double t) const {
  // e^{-i theta} - 1 = -2 sin^2(theta/2) - i sin(theta)
  double sum = 0.0;
  const std::size_t n = weights_.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double theta = (energies_[i] - energies_[j]) * t;
      const double s = std::sin(0.5 * theta);
      const Complex f(-2.0 * s * s, -std::sin(theta));
      sum += (weights_(i, j) * f).real();
    }
  }
  return sum;
}

std::vector<double> uniform_times(double t_max, std::size_t steps) {
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("uniform_times: t_max must be finite and >= 0");
  }
  std::vector<double> times(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    times[i] = steps == 0 ? 0.0 : t_max * static_cast<double>(i) / static_cast<double>(steps);
  }
  return times;
}

TimeSeries heat_series(const DensityMatrix& rho0, const PauliSum& h_total,
                       const PauliSum& h_b, const SystemSpec& spec,
                       std::span<const double> times) {
  if (rho0.dim() != spec.dim()) {
    throw std::invalid_argument("heat_series: state and system dimensions differ");
  }
  const Evolver ev(to_matrix(h_total, spec));
  const ExpectationShift shift(ev, rho0.matrix(), to_matrix(h_b, spec));
  const double dbeta = spec.beta_b() - spec.beta_a();
  TimeSeries out;
  out.times.assign(times.begin(), times.end());
  for (double t : times) {
    const double q = shift(t) + 0.0;  // + 0.0 drops the sign of a zero
    out.q.push_back(q);
    out.lhs.push_back(dbeta * q + 0.0);
  }
  return out;
}

TimeSeries ledger_series(const DensityMatrix& rho0, const PauliSum& h_total,
                         const HamiltonianParts& parts, const SystemSpec& spec,
                         std::span<const double> times, double mechanism_threshold) {
  TimeSeries out = heat_series(rho0, h_total, parts.b, spec, times);
  const LedgerBuilder builder(rho0, spec, parts);
  const Evolver ev(to_matrix(h_total, spec));
  for (double t : times) {
    const DensityMatrix rho(ev.evolve(rho0.matrix(), t), spec.dims(),
                            {1e-10, 1e-10, -1e-10});
    out.ledgers.push_back(builder(rho));
    out.mechanisms.push_back(classify_aht(out.ledgers.back(), mechanism_threshold));
  }
  return out;
}

ComplexMatrix nested_commutator(const ComplexMatrix& g, const ComplexMatrix& o, int n) {
  if (n < 0) throw std::invalid_argument("nested_commutator: negative depth");
  ComplexMatrix c = o;
  for (int k = 0; k < n; ++k) c = commutator(g, c);
  return c;
}

DerivativeReport q_derivative(const DensityMatrix& rho, const PauliSum& generator,
                              const PauliSum& h_b, const SystemSpec& spec, int n) {
  return DerivativeOperator(generator, h_b, spec, n)(rho.matrix());
}

DerivativeOperator::DerivativeOperator(const PauliSum& generator, const PauliSum& h_b,
                                       const SystemSpec& spec, int n)
    : n_(n), op_(1) {
  check_order(n);
  op_ = i_pow(n) * nested_commutator(to_matrix(generator, spec), to_matrix(h_b, spec), n);
  diag_.resize(op_.dim());
  for (std::size_t i = 0; i < op_.dim(); ++i) diag_[i] = op_(i, i).real();
}

DerivativeReport DerivativeOperator::operator()(const ComplexMatrix& rho) const {
  if (rho.dim() != op_.dim()) {
    throw std::invalid_argument("derivative: state and operator dimensions differ");
  }
  return finish_report(n_, trace_product_hermitian(rho, op_));
}

DerivativeReport convexity_decomposition(const DensityMatrix& rho, const PauliSum& h_i,
                                         const SystemSpec& spec) {
  if (rho.dim() != spec.dim()) {
    throw std::invalid_argument("convexity_decomposition: dimension mismatch");
  }
  const auto pairs = split_flip_flop_pairs(h_i, spec);
  if (!pairs) {
    throw std::invalid_argument(
        "convexity_decomposition: interaction is not a two-body A-B flip-flop sum");
  }
  const ComplexMatrix hb = to_matrix(free_hamiltonian_b(spec), spec);
  std::vector<ComplexMatrix> h;
  std::vector<ComplexMatrix> inner;  // [H_q, H_B]
  for (const auto& p : *pairs) {
    h.push_back(to_matrix(p.h, spec));
    inner.push_back(commutator(h.back(), hb));
  }
  const ComplexMatrix& r = rho.matrix();
  const auto dims = rho.dims();

  ConvexityDecomposition dec;
  Complex raw_total{0.0, 0.0};
  for (std::size_t p = 0; p < pairs->size(); ++p) {
    for (std::size_t q = 0; q < pairs->size(); ++q) {
      const PairRef first{(*pairs)[p].a, (*pairs)[p].b};
      const PairRef second{(*pairs)[q].a, (*pairs)[q].b};
      if (p != q && shared_qubit_count(first, second) == 0) continue;
      const ComplexMatrix m = -1.0 * commutator(h[p], inner[q]);
      const Complex total = trace_product_hermitian(r, m);
      raw_total += total;
      if (p == q) {
        dec.terms.push_back({ConvexityTermKind::Pair, first, second, total.real()});
        dec.pair_total += total.real();
        continue;
      }
      std::size_t u, v, s;
      if (first.a == second.a) {
        s = first.a, u = first.b, v = second.b;
      } else {
        s = first.b, u = first.a, v = second.a;
      }
      const double intra = trace_product_hermitian(doublet_product(r, dims, u, v, s), m).real();
      const double cross = total.real() - intra;
      dec.terms.push_back({ConvexityTermKind::IntraCoherence, first, second, intra});
      dec.terms.push_back({ConvexityTermKind::CrossCoherence, first, second, cross});
      dec.intra_total += intra;
      dec.cross_total += cross;
    }
  }
  DerivativeReport rep = finish_report(2, raw_total);
  rep.decomposition = std::move(dec);
  return rep;
}

Theorem1Witness theorem1_witness(const DensityMatrix& rho, const SystemSpec& spec,
                                 double tol) {
  if (rho.dim() != spec.dim()) {
    throw std::invalid_argument("theorem1_witness: dimension mismatch");
  }
  const auto dims = rho.dims();
  auto site = [&](std::vector<std::size_t> qs) {
    const double mass = off_diagonal_mass(partial_trace(rho.matrix(), qs, dims));
    return CoherenceSite{std::move(qs), mass, mass < tol};
  };
  Theorem1Witness w;
  const std::size_t n = spec.num_qubits();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const int a_count = (spec.qubit(i).side == Side::A) +
                            (spec.qubit(j).side == Side::A) +
                            (spec.qubit(k).side == Side::A);
        if (a_count == 0 || a_count == 3) continue;
        w.triplets.push_back(site({i, j, k}));
      }
    }
  }
  for (std::size_t a : spec.a_indices()) {
    for (std::size_t b : spec.b_indices()) w.doublets.push_back(site({a, b}));
  }
  auto diag = [](const CoherenceSite& c) { return c.diagonal; };
  w.theorem_applies = std::all_of(w.triplets.begin(), w.triplets.end(), diag) &&
                      std::all_of(w.doublets.begin(), w.doublets.end(), diag);
  return w;
}

}  // namespace qheat
