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

// Initial heat-flow convexity of the three-qubit exchange model
//   H_I = c sigma^+_{A1} sigma^-_{A2} sigma^-_B + h.c.,
//   omega_{A1} = (1 + a) omega_B, omega_{A2} = a omega_B,
// its zero-convexity boundary, and grid scans over the A temperatures.

#include <string_view>
#include <vector>

#include "qheat/dynamics.hpp"

namespace qheat {

/// Spec with qubits A1, A2 (side A) and B. Ratios are beta_{A_k} / beta_B.
SystemSpec tripartite_spec(double a, double omega_b, double beta_b, double ratio1,
                           double ratio2);

/// Free part plus the three-body exchange plus, when j != 0, the uniform
/// two-body perturbation J sum_{u<v} sum_a sigma^a_u sigma^a_v.
PauliSum tripartite_hamiltonian(const SystemSpec& spec, Complex c, double j = 0.0);

/// Two ways of writing the closed forms. `Linear` uses Boltzmann exponents
/// beta*omega with prefactors 2|c|^2 and 8J^2; `Doubled` uses 2*beta*omega
/// with 4|c|^2 and 16J^2 (the form one gets from H = -omega sigma^z).
enum class ExponentConvention { Linear, Doubled };

std::string_view to_string(ExponentConvention c) noexcept;

/// d^2Q/dt^2 at t = 0 for the product state. Throws std::invalid_argument
/// unless spec is a tripartite_spec layout.
double convexity_closed_form(const SystemSpec& spec, Complex c,
                             ExponentConvention conv = ExponentConvention::Linear);

/// Same with the two-body perturbation included; equals convexity_closed_form
/// at j = 0.
double perturbed_convexity(const SystemSpec& spec, Complex c, double j,
                           ExponentConvention conv = ExponentConvention::Linear);

/// Closed form on scaled exponents x_k = beta_k omega_k (omega_B given).
double perturbed_convexity_x(double x1, double x2, double xb, double omega_b, double c_abs2,
                             double j, ExponentConvention conv);

struct CalibrationResult {
  ExponentConvention adopted;
  double oracle;          // nested-commutator value on the product state
  double linear;          // closed form, Linear convention
  double doubled;         // closed form, Doubled convention
  double linear_rel_err;  // |linear - oracle| / |oracle|
  double doubled_rel_err;
};

/// Evaluates both conventions against q_derivative(n = 2) on the product
/// state and adopts the closer one.
CalibrationResult calibrate_convention(const SystemSpec& spec, Complex c, double j = 0.0);

/// beta_{A1}/beta_B on the zero-convexity line: (1 + a x) / (1 + a),
/// x = beta_{A2}/beta_B. Throws std::invalid_argument unless a > 0.
double phase_boundary(double a, double beta_a2_over_beta_b);

/// max(|dQ/dt|, |d^2Q/dt^2|) at t = 0 for the product state of `spec` under
/// the unperturbed model.
double initial_rate_check_on_boundary(const SystemSpec& spec, Complex c);

struct PhasePoint {
  double beta_a1_over_beta_b;
  double beta_a2_over_beta_b;
  double a;
  double j_over_c;
  double convexity;
  // Positive convexity while both A qubits are colder than B.
  bool aht;
};

struct GridAxis {
  double lo = 0.0;
  double hi = 5.0;
  std::size_t points = 201;
  double value(std::size_t i) const;
  double step() const;
};

struct ScanOptions {
  double a = 1.0;
  double j_over_c = 0.0;
  GridAxis ratio1;             // beta_{A1}/beta_B
  GridAxis ratio2;             // beta_{A2}/beta_B
  double beta_b_omega_b = 0.15997;
  bool oracle = false;         // evaluate nodes by the nested commutator
  double bisection_tol = 1e-6;
};

struct BoundaryPoint {
  double beta_a1_over_beta_b;
  double beta_a2_over_beta_b;
  double convexity;  // residual at the bisected point
};

struct ScanResult {
  ScanOptions options;
  ExponentConvention convention;
  std::vector<PhasePoint> points;  // ratio2 outer, ratio1 inner
  std::vector<BoundaryPoint> boundary;
  std::size_t aht_cells = 0;
};

/// Evaluates the convexity on the grid (|c| = 1, omega_B = 1) and locates
/// the zero-convexity curve by bisection in ratio1 within each ratio2
/// column wherever neighbouring nodes change sign.
ScanResult phase_scan(const ScanOptions& opts);

}  // namespace qheat
