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

#include "qheat/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace qheat {

namespace {

constexpr Complex kI{0.0, 1.0};

bool frequencies_equal(double lhs, double rhs, double scale, double tol) {
  return std::abs(lhs - rhs) <= tol * std::max(1.0, scale);
}

std::string format_coeff(Complex c) {
  char buf[64];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.6g", c.real());
  } else {
    std::snprintf(buf, sizeof(buf), "(%.6g%+.6gi)", c.real(), c.imag());
  }
  return buf;
}

}  // namespace

char to_char(PauliOp op) noexcept {
  switch (op) {
    case PauliOp::X:
      return 'x';
    case PauliOp::Y:
      return 'y';
    case PauliOp::Z:
      return 'z';
    case PauliOp::Plus:
      return '+';
    case PauliOp::Minus:
      return '-';
  }
  return '?';
}

PauliOp pauli_op_from_char(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'x':
      return PauliOp::X;
    case 'y':
      return PauliOp::Y;
    case 'z':
      return PauliOp::Z;
    case '+':
      return PauliOp::Plus;
    case '-':
      return PauliOp::Minus;
    default:
      throw std::invalid_argument(std::string("unknown Pauli operator '") + c + "'");
  }
}

ComplexMatrix single_qubit_matrix(PauliOp op) {
  switch (op) {
    case PauliOp::X:
      return {{0.0, 1.0}, {1.0, 0.0}};
    case PauliOp::Y:
      return {{0.0, -kI}, {kI, 0.0}};
    case PauliOp::Z:
      return {{1.0, 0.0}, {0.0, -1.0}};
    case PauliOp::Plus:
      return {{0.0, 1.0}, {0.0, 0.0}};
    case PauliOp::Minus:
      return {{0.0, 0.0}, {1.0, 0.0}};
  }
  throw std::logic_error("single_qubit_matrix: bad op");
}

PauliOp adjoint(PauliOp op) noexcept {
  if (op == PauliOp::Plus) return PauliOp::Minus;
  if (op == PauliOp::Minus) return PauliOp::Plus;
  return op;
}

PauliTerm::PauliTerm(Complex coeff, std::vector<PauliFactor> factors)
    : coeff_(coeff), factors_(std::move(factors)) {
  std::set<std::string_view> seen;
  for (const auto& f : factors_) {
    if (!seen.insert(f.label).second) {
      throw std::invalid_argument("PauliTerm: qubit '" + f.label +
                                  "' appears twice in one term");
    }
  }
}

PauliTerm PauliTerm::adjoint() const {
  std::vector<PauliFactor> factors = factors_;
  for (auto& f : factors) f.op = qheat::adjoint(f.op);
  return PauliTerm(std::conj(coeff_), std::move(factors));
}

PauliTerm PauliTerm::scaled(Complex s) const { return PauliTerm(coeff_ * s, factors_); }

std::string PauliTerm::to_string() const {
  std::string out = format_coeff(coeff_);
  for (const auto& f : factors_) {
    out += ' ';
    out += f.label;
    out += ':';
    out += to_char(f.op);
  }
  return out;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliTerm& term) {
  terms_.push_back(term);
  return *this;
}

PauliSum PauliSum::scaled(Complex s) const {
  PauliSum out;
  for (const auto& t : terms_) out += t.scaled(s);
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out;
  for (const auto& t : terms_) out += t.adjoint();
  return out;
}

PauliSum PauliSum::with_hc() const { return *this + adjoint(); }

std::string PauliSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    out += terms_[i].to_string();
  }
  return out;
}

PauliSum operator+(PauliSum lhs, const PauliSum& rhs) {
  lhs += rhs;
  return lhs;
}

PauliSum operator*(Complex s, const PauliSum& h) { return h.scaled(s); }

ComplexMatrix to_matrix(const PauliTerm& term, const SystemSpec& spec) {
  std::vector<ComplexMatrix> factors(spec.num_qubits(), ComplexMatrix::identity(2));
  for (const auto& f : term.factors()) {
    factors[spec.index_of(f.label)] = single_qubit_matrix(f.op);
  }
  ComplexMatrix m = kron(factors);
  m *= term.coeff();
  return m;
}

ComplexMatrix to_matrix(const PauliSum& h, const SystemSpec& spec) {
  ComplexMatrix out(spec.dim());
  for (const auto& t : h.terms()) out += to_matrix(t, spec);
  return out;
}

PauliSum qubit_hamiltonian(const SystemSpec& spec, std::string_view label) {
  const Qubit& q = spec.qubit(label);
  return PauliSum{PauliTerm(-0.5 * q.omega, {{q.label, PauliOp::Z}})};
}

PauliSum free_hamiltonian_a(const SystemSpec& spec) {
  PauliSum h;
  for (std::size_t i : spec.a_indices()) h += qubit_hamiltonian(spec, spec.qubit(i).label);
  return h;
}

PauliSum free_hamiltonian_b(const SystemSpec& spec) {
  PauliSum h;
  for (std::size_t i : spec.b_indices()) h += qubit_hamiltonian(spec, spec.qubit(i).label);
  return h;
}

PauliSum free_hamiltonian(const SystemSpec& spec) {
  return free_hamiltonian_a(spec) + free_hamiltonian_b(spec);
}

PauliSum flip_flop(std::string_view a, std::string_view b, Complex c) {
  PauliSum h{PauliTerm(c, {{std::string(a), PauliOp::Minus},
                           {std::string(b), PauliOp::Plus}})};
  return h.with_hc();
}

PauliSum two_body_interaction(const SystemSpec& spec,
                              const std::vector<FlipFlopCoupling>& couplings,
                              double tol) {
  PauliSum h;
  for (const auto& cp : couplings) {
    const Qubit& qa = spec.qubit(cp.a);
    const Qubit& qb = spec.qubit(cp.b);
    if (qa.side != Side::A || qb.side != Side::B) {
      throw std::invalid_argument("two_body_interaction: coupling " + cp.a + "-" +
                                  cp.b + " must join an A qubit to a B qubit");
    }
    if (!frequencies_equal(qa.omega, qb.omega, std::max(qa.omega, qb.omega), tol)) {
      throw std::invalid_argument("two_body_interaction: " + cp.a + " and " + cp.b +
                                  " have different frequencies");
    }
    h += flip_flop(cp.a, cp.b, cp.c);
  }
  return h;
}

PauliSum three_body_exchange(std::string_view u, std::string_view v,
                             std::string_view w, Complex c) {
  PauliSum h{PauliTerm(c, {{std::string(u), PauliOp::Plus},
                           {std::string(v), PauliOp::Minus},
                           {std::string(w), PauliOp::Minus}})};
  return h.with_hc();
}

PauliSum uniform_two_body_perturbation(const SystemSpec& spec, double j) {
  PauliSum h;
  const auto qs = spec.qubits();
  for (std::size_t u = 0; u < qs.size(); ++u) {
    for (std::size_t v = u + 1; v < qs.size(); ++v) {
      for (PauliOp op : {PauliOp::X, PauliOp::Y, PauliOp::Z}) {
        h += PauliTerm(j, {{qs[u].label, op}, {qs[v].label, op}});
      }
    }
  }
  return h;
}

MixedInteraction build_s19_interaction(double r1, int sign, double c_xyy,
                                       double c_xyx, const SystemSpec& spec,
                                       double tol) {
  if (!(r1 > 0.0 && r1 <= 2.0)) {
    throw std::invalid_argument("build_s19_interaction: r1 must lie in (0, 2]");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("build_s19_interaction: sign must be +1 or -1");
  }
  if (spec.num_a() != 2 || spec.num_b() != 1) {
    throw std::invalid_argument("build_s19_interaction: needs exactly A1, A2 and B");
  }
  const Qubit& a1 = spec.qubit(0);
  const Qubit& a2 = spec.qubit(1);
  const Qubit& b = spec.qubit(2);
  const double omega = b.omega;
  if (!frequencies_equal(a2.omega, omega, omega, tol) ||
      !frequencies_equal(a1.omega, r1 * omega, omega, tol)) {
    throw std::invalid_argument(
        "build_s19_interaction: frequencies must satisfy omega_A1 = r1 omega, "
        "omega_A2 = omega_B = omega");
  }

  const double r2 = sign * 0.5 * std::sqrt(r1 * (2.0 - r1));
  const double k = 1.0 - r1;

  // Coefficients c^{abc} of sigma^a_{A1} sigma^b_{A2} sigma^c_B and
  // c_i^{ab} of sigma^a_{A_i} sigma^b_B that solve both commutator
  // constraints of the mixed two/three-body model.
  struct Coef {
    PauliOp a1, a2, b;
    double c;
  };
  const Coef three_body[] = {
      {PauliOp::X, PauliOp::X, PauliOp::X, k * c_xyy},
      {PauliOp::Y, PauliOp::Y, PauliOp::X, k * c_xyy},
      {PauliOp::X, PauliOp::X, PauliOp::Y, -k * c_xyx},
      {PauliOp::Y, PauliOp::Y, PauliOp::Y, -k * c_xyx},
      {PauliOp::Y, PauliOp::X, PauliOp::X, -c_xyx},
      {PauliOp::Y, PauliOp::X, PauliOp::Y, -c_xyy},
      {PauliOp::X, PauliOp::Y, PauliOp::Y, c_xyy},
      {PauliOp::X, PauliOp::Y, PauliOp::X, c_xyx},
  };
  MixedInteraction out{{}, {}, r2};
  for (const auto& t : three_body) {
    if (t.c == 0.0) continue;
    out.h_i += PauliTerm(t.c, {{a1.label, t.a1}, {a2.label, t.a2}, {b.label, t.b}});
  }
  struct TwoBody {
    const std::string* a;
    PauliOp b;
    double c;
  };
  const TwoBody two_body[] = {
      {&a1.label, PauliOp::X, -2.0 * r2 * c_xyy},
      {&a1.label, PauliOp::Y, 2.0 * r2 * c_xyx},
      {&a2.label, PauliOp::X, 2.0 * r2 * c_xyy},
      {&a2.label, PauliOp::Y, -2.0 * r2 * c_xyx},
  };
  for (const auto& t : two_body) {
    if (t.c == 0.0) continue;
    out.h_i += PauliTerm(t.c, {{*t.a, PauliOp::Z}, {b.label, t.b}});
  }
  if (r2 != 0.0) {
    out.h_ai = PauliSum{PauliTerm(omega * r2, {{a1.label, PauliOp::Plus},
                                               {a2.label, PauliOp::Minus}})}
                   .with_hc();
  }
  return out;
}

bool frequency_match_check(const PauliTerm& term, const SystemSpec& spec, double tol) {
  // x and y each expand into one raising and one lowering component; every
  // combination must balance.
  double fixed = 0.0;
  double scale = 0.0;
  std::vector<double> free_omegas;
  for (const auto& f : term.factors()) {
    const double w = spec.qubit(f.label).omega;
    scale = std::max(scale, w);
    switch (f.op) {
      case PauliOp::Plus:
        fixed += w;
        break;
      case PauliOp::Minus:
        fixed -= w;
        break;
      case PauliOp::X:
      case PauliOp::Y:
        free_omegas.push_back(w);
        break;
      case PauliOp::Z:
        break;
    }
  }
  const std::size_t combos = std::size_t{1} << free_omegas.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    double balance = fixed;
    for (std::size_t i = 0; i < free_omegas.size(); ++i) {
      balance += ((mask >> i) & 1U) ? free_omegas[i] : -free_omegas[i];
    }
    if (!frequencies_equal(balance, 0.0, scale, tol)) return false;
  }
  return true;
}

HtcReport verify_heat_transfer_condition(const PauliSum& h_i, const PauliSum& h_a,
                                         const PauliSum& h_b, const SystemSpec& spec) {
  const ComplexMatrix hi = to_matrix(h_i, spec);
  const ComplexMatrix hab = to_matrix(h_a + h_b, spec);
  const double denom = std::max(frob_norm(hi) * frob_norm(hab), 1e-300);
  const double residual = frob_norm(commutator(hi, hab)) / denom;
  return {residual < 1e-10, residual};
}

std::optional<std::vector<PairCoupling>> split_flip_flop_pairs(const PauliSum& h_i,
                                                               const SystemSpec& spec) {
  std::vector<PairCoupling> pairs;
  for (const auto& t : h_i.terms()) {
    if (t.weight() != 2) return std::nullopt;
    std::size_t ia = spec.index_of(t.factors()[0].label);
    std::size_t ib = spec.index_of(t.factors()[1].label);
    PauliOp oa = t.factors()[0].op;
    PauliOp ob = t.factors()[1].op;
    if (spec.qubit(ia).side == Side::B) {
      std::swap(ia, ib);
      std::swap(oa, ob);
    }
    if (spec.qubit(ia).side != Side::A || spec.qubit(ib).side != Side::B) {
      return std::nullopt;
    }
    const bool exchange = (oa == PauliOp::Plus && ob == PauliOp::Minus) ||
                          (oa == PauliOp::Minus && ob == PauliOp::Plus);
    if (!exchange) return std::nullopt;
    auto it = std::find_if(pairs.begin(), pairs.end(), [&](const PairCoupling& p) {
      return p.a == ia && p.b == ib;
    });
    if (it == pairs.end()) {
      pairs.push_back({ia, ib, {}});
      it = std::prev(pairs.end());
    }
    it->h += t;
  }
  return pairs;
}

}  // namespace qheat
