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

// Symbolic Pauli-string Hamiltonians over labelled qubits, the interaction
// families that respect energy conservation between A and B, and validators
// for that condition.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qheat/linalg.hpp"
#include "qheat/system.hpp"

namespace qheat {

/// sigma^{x,y,z} and sigma^{+-} = (sigma^x +- i sigma^y)/2. With |0> the
/// +1 eigenvector of sigma^z, sigma^+ |1> = |0>.
enum class PauliOp { X, Y, Z, Plus, Minus };

char to_char(PauliOp op) noexcept;
/// Accepts x, y, z, +, - (case-insensitive letters). Throws on anything else.
PauliOp pauli_op_from_char(char c);
ComplexMatrix single_qubit_matrix(PauliOp op);
PauliOp adjoint(PauliOp op) noexcept;

struct PauliFactor {
  std::string label;
  PauliOp op;
  friend bool operator==(const PauliFactor&, const PauliFactor&) = default;
};

/// coeff * prod_i op_i(label_i). Labels within a term are distinct, so the
/// factors commute and their order is irrelevant.
class PauliTerm {
 public:
  /// Throws std::invalid_argument on a repeated label.
  PauliTerm(Complex coeff, std::vector<PauliFactor> factors);

  Complex coeff() const noexcept { return coeff_; }
  const std::vector<PauliFactor>& factors() const noexcept { return factors_; }
  std::size_t weight() const noexcept { return factors_.size(); }

  PauliTerm adjoint() const;
  PauliTerm scaled(Complex s) const;

  std::string to_string() const;

 private:
  Complex coeff_;
  std::vector<PauliFactor> factors_;
};

/// Sum of Pauli terms. Hermitian closure ("+ h.c.") is never implicit; use
/// with_hc() or PauliSum::hc_closed().
class PauliSum {
 public:
  PauliSum() = default;
  PauliSum(std::initializer_list<PauliTerm> terms) : terms_(terms) {}
  explicit PauliSum(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator+=(const PauliTerm& term);
  PauliSum scaled(Complex s) const;
  PauliSum adjoint() const;
  /// this + this^dag
  PauliSum with_hc() const;

  std::string to_string() const;

 private:
  std::vector<PauliTerm> terms_;
};

PauliSum operator+(PauliSum lhs, const PauliSum& rhs);
PauliSum operator*(Complex s, const PauliSum& h);

/// Dense operator on the full joint space of `spec`. Throws
/// std::invalid_argument for a label not in spec.
ComplexMatrix to_matrix(const PauliSum& h, const SystemSpec& spec);
ComplexMatrix to_matrix(const PauliTerm& term, const SystemSpec& spec);

// ---------------------------------------------------------------------------
// Builders

/// -omega/2 sigma^z on one qubit.
PauliSum qubit_hamiltonian(const SystemSpec& spec, std::string_view label);
/// Sum of qubit_hamiltonian over the A qubits (H_{A0}).
PauliSum free_hamiltonian_a(const SystemSpec& spec);
/// Sum of qubit_hamiltonian over the B qubits (H_{B0}).
PauliSum free_hamiltonian_b(const SystemSpec& spec);
PauliSum free_hamiltonian(const SystemSpec& spec);

/// c sigma^-_a sigma^+_b + h.c.
PauliSum flip_flop(std::string_view a, std::string_view b, Complex c);

struct FlipFlopCoupling {
  std::string a;
  std::string b;
  Complex c;
};

/// Two-body A-B exchange family. Throws std::invalid_argument when a
/// coupling joins qubits of different frequency (beyond `tol`), or does not
/// join an A qubit to a B qubit.
PauliSum two_body_interaction(const SystemSpec& spec,
                              const std::vector<FlipFlopCoupling>& couplings,
                              double tol = 1e-9);

/// c sigma^+_u sigma^-_v sigma^-_w + h.c.
PauliSum three_body_exchange(std::string_view u, std::string_view v,
                             std::string_view w, Complex c);

/// J sum_{u<v} sum_{a=x,y,z} sigma^a_u sigma^a_v over every qubit pair.
PauliSum uniform_two_body_perturbation(const SystemSpec& spec, double j);

struct MixedInteraction {
  PauliSum h_i;
  PauliSum h_ai;
  double r2;
};

/// Two- plus three-body family on (A1, A2, B) with omega_{A1} = r1 omega and
/// omega_{A2} = omega_B = omega, paired with the intrasystem exchange
/// H_AI = omega (r2 sigma^+_{A1} sigma^-_{A2} + h.c.),
/// r2 = sign * sqrt(r1 (2 - r1)) / 2. Throws std::invalid_argument if r1 is
/// outside (0, 2], sign is not +-1, or the spec layout does not match.
MixedInteraction build_s19_interaction(double r1, int sign, double c_xyy,
                                       double c_xyx, const SystemSpec& spec,
                                       double tol = 1e-9);

// ---------------------------------------------------------------------------
// Validators

/// True iff every sigma^{+-} expansion of `term` carries equal total
/// frequency on its raising and lowering factors (z factors are free), i.e.
/// the term commutes with the free Hamiltonian. Tolerance is relative to
/// max(1, largest frequency involved).
bool frequency_match_check(const PauliTerm& term, const SystemSpec& spec,
                           double tol = 1e-9);

struct HtcReport {
  bool holds;
  double residual;
};

/// residual = ||[H_I, H_A + H_B]||_F / max(||H_I||_F ||H_A + H_B||_F, eps);
/// holds = residual < 1e-10.
HtcReport verify_heat_transfer_condition(const PauliSum& h_i, const PauliSum& h_a,
                                         const PauliSum& h_b,
                                         const SystemSpec& spec);

/// Terms of a two-body A-B interaction grouped by (A index, B index).
/// Returns std::nullopt unless every term is sigma^{+-}_A sigma^{-+}_B.
struct PairCoupling {
  std::size_t a;
  std::size_t b;
  PauliSum h;
};
std::optional<std::vector<PairCoupling>> split_flip_flop_pairs(const PauliSum& h_i,
                                                               const SystemSpec& spec);

}  // namespace qheat
