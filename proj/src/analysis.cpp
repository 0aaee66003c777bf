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

#include "qheat/analysis.hpp"

#include <cmath>
#include <functional>
#include <optional>

namespace qheat {

namespace {

// Logistic weights: up(x) = e^x / (1 + e^x), down(x) = 1 / (1 + e^x).
double up(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double down(double x) { return 1.0 / (1.0 + std::exp(x)); }

void check_tripartite(const SystemSpec& spec) {
  if (spec.num_a() != 2 || spec.num_b() != 1) {
    throw std::invalid_argument("expected qubits A1, A2 on side A and one B qubit");
  }
  const double w1 = spec.qubit(0).omega;
  const double w2 = spec.qubit(1).omega;
  const double wb = spec.qubit(2).omega;
  if (std::abs(w1 - w2 - wb) > 1e-9 * std::max(1.0, w1)) {
    throw std::invalid_argument("expected omega_A1 = omega_A2 + omega_B");
  }
}

std::vector<double> product_diagonal(std::span<const double> x) {
  std::vector<double> p{1.0};
  for (double xk : x) {
    const double p0 = up(xk);
    const double p1 = down(xk);
    std::vector<double> next;
    next.reserve(p.size() * 2);
    for (double v : p) {
      next.push_back(v * p0);
      next.push_back(v * p1);
    }
    p = std::move(next);
  }
  return p;
}

}  // namespace

SystemSpec tripartite_spec(double a, double omega_b, double beta_b, double ratio1,
                           double ratio2) {
  if (!(a > 0.0)) throw std::invalid_argument("tripartite_spec: a must be positive");
  return SystemSpec({{"A1", (1.0 + a) * omega_b, ratio1 * beta_b},
                     {"A2", a * omega_b, ratio2 * beta_b}},
                    {{"B", omega_b}}, beta_b);
}

PauliSum tripartite_hamiltonian(const SystemSpec& spec, Complex c, double j) {
  check_tripartite(spec);
  const std::string& a1 = spec.qubit(0).label;
  const std::string& a2 = spec.qubit(1).label;
  const std::string& b = spec.qubit(2).label;
  PauliSum h = free_hamiltonian(spec) + three_body_exchange(a1, a2, b, c);
  if (j != 0.0) h += uniform_two_body_perturbation(spec, j);
  return h;
}

std::string_view to_string(ExponentConvention c) noexcept {
  return c == ExponentConvention::Linear ? "linear" : "doubled";
}

double perturbed_convexity_x(double x1, double x2, double xb, double omega_b, double c_abs2,
                             double j, ExponentConvention conv) {
  double scale = 2.0;
  if (conv == ExponentConvention::Doubled) {
    x1 *= 2.0, x2 *= 2.0, xb *= 2.0;
    scale = 4.0;
  }
  // (e^{x2+xb} - e^{x1}) / prod(1 + e^{x}) in bounded form.
  const double exchange = up(x2) * up(xb) * down(x1) - up(x1) * down(x2) * down(xb);
  const double pert = (up(x1) * down(xb) - down(x1) * up(xb)) +
                      (up(x2) * down(xb) - down(x2) * up(xb));
  return scale * c_abs2 * omega_b * exchange - 4.0 * scale * j * j * omega_b * pert;
}

double perturbed_convexity(const SystemSpec& spec, Complex c, double j,
                           ExponentConvention conv) {
  check_tripartite(spec);
  const auto& q = spec.qubits();
  return perturbed_convexity_x(q[0].beta * q[0].omega, q[1].beta * q[1].omega,
                               spec.beta_b() * q[2].omega, q[2].omega, std::norm(c), j,
                               conv);
}

double convexity_closed_form(const SystemSpec& spec, Complex c, ExponentConvention conv) {
  return perturbed_convexity(spec, c, 0.0, conv);
}

CalibrationResult calibrate_convention(const SystemSpec& spec, Complex c, double j) {
  const PauliSum h = tripartite_hamiltonian(spec, c, j);
  const double oracle =
      q_derivative(product_state(spec), h, free_hamiltonian_b(spec), spec, 2).value;
  CalibrationResult r{};
  r.oracle = oracle;
  r.linear = perturbed_convexity(spec, c, j, ExponentConvention::Linear);
  r.doubled = perturbed_convexity(spec, c, j, ExponentConvention::Doubled);
  const double denom = std::max(std::abs(oracle), 1e-300);
  r.linear_rel_err = std::abs(r.linear - oracle) / denom;
  r.doubled_rel_err = std::abs(r.doubled - oracle) / denom;
  r.adopted = r.linear_rel_err <= r.doubled_rel_err ? ExponentConvention::Linear
                                                    : ExponentConvention::Doubled;
  return r;
}

double phase_boundary(double a, double beta_a2_over_beta_b) {
  if (!(a > 0.0)) throw std::invalid_argument("phase_boundary: a must be positive");
  return (1.0 + a * beta_a2_over_beta_b) / (1.0 + a);
}

double initial_rate_check_on_boundary(const SystemSpec& spec, Complex c) {
  const PauliSum h = tripartite_hamiltonian(spec, c);
  const PauliSum hb = free_hamiltonian_b(spec);
  const DensityMatrix rho = product_state(spec);
  const double d1 = q_derivative(rho, h, hb, spec, 1).value;
  const double d2 = q_derivative(rho, h, hb, spec, 2).value;
  return std::max(std::abs(d1), std::abs(d2));
}

double GridAxis::value(std::size_t i) const {
  if (points < 2) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

double GridAxis::step() const {
  return points < 2 ? 0.0 : (hi - lo) / static_cast<double>(points - 1);
}

ScanResult phase_scan(const ScanOptions& opts) {
  if (!(opts.a > 0.0)) throw std::invalid_argument("phase_scan: a must be positive");
  if (opts.j_over_c < 0.0) throw std::invalid_argument("phase_scan: j_over_c must be >= 0");
  if (opts.ratio1.points == 0 || opts.ratio2.points == 0) {
    throw std::invalid_argument("phase_scan: grid axes need at least one point");
  }
  if (opts.ratio1.lo < 0.0 || opts.ratio2.lo < 0.0) {
    throw std::invalid_argument("phase_scan: temperature ratios must be >= 0");
  }
  if (!(opts.beta_b_omega_b > 0.0)) {
    throw std::invalid_argument("phase_scan: beta_B omega_B must be positive");
  }
  const double a = opts.a;
  const double xb = opts.beta_b_omega_b;
  const double j = opts.j_over_c;  // |c| = 1, omega_B = 1

  ScanResult out;
  out.options = opts;
  // Adopt whichever closed-form convention reproduces the commutator oracle
  // at an off-boundary reference point.
  const double ref2 = 3.0;
  const SystemSpec ref = tripartite_spec(a, 1.0, xb, phase_boundary(a, ref2) + 0.5, ref2);
  out.convention = calibrate_convention(ref, 1.0, j).adopted;

  std::function<double(double, double)> eval;
  std::optional<DerivativeOperator> op;
  if (opts.oracle) {
    op.emplace(tripartite_hamiltonian(ref, 1.0, j), free_hamiltonian_b(ref), ref, 2);
    eval = [&](double r1, double r2) {
      const double x[] = {r1 * xb * (1.0 + a), r2 * xb * a, xb};
      const auto p = product_diagonal(x);
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) s += op->diagonal()[i] * p[i];
      return s;
    };
  } else {
    eval = [&](double r1, double r2) {
      return perturbed_convexity_x(r1 * xb * (1.0 + a), r2 * xb * a, xb, 1.0, 1.0, j,
                                   out.convention);
    };
  }

  const std::size_t n1 = opts.ratio1.points;
  const std::size_t n2 = opts.ratio2.points;
  out.points.reserve(n1 * n2);
  for (std::size_t iy = 0; iy < n2; ++iy) {
    const double r2 = opts.ratio2.value(iy);
    std::vector<double> column(n1);
    for (std::size_t ix = 0; ix < n1; ++ix) {
      const double r1 = opts.ratio1.value(ix);
      const double conv = eval(r1, r2);
      column[ix] = conv;
      const bool aht = conv > 0.0 && r1 > 1.0 && r2 > 1.0;
      out.points.push_back({r1, r2, a, opts.j_over_c, conv, aht});
      if (aht) ++out.aht_cells;
    }
    for (std::size_t ix = 0; ix + 1 < n1; ++ix) {
      const double f0 = column[ix];
      const double f1 = column[ix + 1];
      if (f0 == 0.0) {
        out.boundary.push_back({opts.ratio1.value(ix), r2, 0.0});
        continue;
      }
      if ((f0 > 0.0) == (f1 > 0.0) || f1 == 0.0) continue;
      double lo = opts.ratio1.value(ix);
      double hi = opts.ratio1.value(ix + 1);
      double flo = f0;
      while (hi - lo > opts.bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval(mid, r2);
        if ((fm > 0.0) == (flo > 0.0)) {
          lo = mid, flo = fm;
        } else {
          hi = mid;
        }
      }
      const double root = 0.5 * (lo + hi);
      out.boundary.push_back({root, r2, eval(root, r2)});
    }
    if (n1 > 0 && column[n1 - 1] == 0.0) {
      out.boundary.push_back({opts.ratio1.value(n1 - 1), r2, 0.0});
    }
  }
  return out;
}

}  // namespace qheat
