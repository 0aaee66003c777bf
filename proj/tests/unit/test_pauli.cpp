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


#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qheat/pauli.hpp"
#include "qheat/system.hpp"

using namespace qheat;

namespace {

const Complex kI(0.0, 1.0);

using Ops = std::vector<std::pair<std::size_t, PauliOp>>;

SystemSpec three_qubits(double w1, double w2, double wb) {
  return SystemSpec({{"A1", w1, 2.0}, {"A2", w2, 2.5}}, {{"B", wb}}, 1.0);
}

PauliSum free_a_and_b(const SystemSpec& s) { return free_hamiltonian(s); }

}  // namespace

TEST_CASE("SystemSpec validation and queries") {
  CHECK_THROWS_AS(SystemSpec({}, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SystemSpec({{"A", 1.0, 1.0}}, {{"A", 1.0}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SystemSpec({{"A", -1.0, 1.0}}, {{"B", 1.0}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SystemSpec({{"A", 1.0, 0.0}}, {{"B", 1.0}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SystemSpec({{"A", 1.0, 1.0}}, {{"B", 1.0}}, NAN), std::invalid_argument);

  const SystemSpec s({{"A1", 2.0, 3.0}, {"A2", 1.0, 2.0}}, {{"B1", 1.0}, {"B2", 1.0}}, 1.0);
  CHECK(s.num_qubits() == 4);
  CHECK(s.num_a() == 2);
  CHECK(s.num_b() == 2);
  CHECK(s.dim() == 16);
  CHECK(s.index_of("B1") == 2);
  CHECK_FALSE(s.find("C").has_value());
  CHECK_THROWS_AS(s.index_of("C"), std::invalid_argument);
  CHECK(s.qubit("B2").side == Side::B);
  CHECK(s.qubit("B2").beta == 1.0);
  CHECK(s.beta_a() == 2.0);
  CHECK(s.a_is_cold());
  CHECK(s.a_indices() == std::vector<std::size_t>{0, 1});
  CHECK(s.b_indices() == std::vector<std::size_t>{2, 3});

  const std::vector<std::size_t> idx{3, 1};
  const SystemSpec r = s.restrict(idx);
  CHECK(r.num_qubits() == 2);
  CHECK(r.qubit(0).label == "A2");
  CHECK(r.qubit(1).label == "B2");

  const SystemSpec warm({{"A1", 1.0, 0.5}}, {{"B", 1.0}}, 1.0);
  CHECK_FALSE(warm.a_is_cold());
}

TEST_CASE("Pauli symbols and terms") {
  for (char c : {'x', 'y', 'z', '+', '-', 'X', 'Y', 'Z'}) {
    CHECK(std::tolower(to_char(pauli_op_from_char(c))) == std::tolower(c));
  }
  CHECK_THROWS(pauli_op_from_char('q'));
  CHECK(adjoint(PauliOp::Plus) == PauliOp::Minus);
  CHECK(adjoint(PauliOp::Y) == PauliOp::Y);
  CHECK(oracle::max_abs_diff(single_qubit_matrix(PauliOp::Plus),
                             ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}) == 0.0);
  const ComplexMatrix sx = single_qubit_matrix(PauliOp::X);
  const ComplexMatrix sy = single_qubit_matrix(PauliOp::Y);
  CHECK(oracle::max_abs_diff(single_qubit_matrix(PauliOp::Plus), 0.5 * (sx + kI * sy)) < 1e-16);
  CHECK(oracle::max_abs_diff(single_qubit_matrix(PauliOp::Minus), 0.5 * (sx - kI * sy)) < 1e-16);

  CHECK_THROWS_AS(PauliTerm(1.0, {{"A", PauliOp::X}, {"A", PauliOp::Z}}), std::invalid_argument);
  const PauliTerm t(Complex(1.0, 2.0), {{"A", PauliOp::Plus}, {"B", PauliOp::Minus}});
  const PauliTerm ta = t.adjoint();
  CHECK(ta.coeff() == Complex(1.0, -2.0));
  CHECK(ta.factors()[0].op == PauliOp::Minus);
  CHECK(ta.factors()[1].op == PauliOp::Plus);
  CHECK(t.weight() == 2);
  CHECK(PauliSum{t}.with_hc().terms().size() == 2);
}

TEST_CASE("to_matrix examples") {
  const SystemSpec one({{"A", 1.0, 1.0}}, {}, 1.0);
  const std::vector<double> d{-0.5, 0.5};
  CHECK(oracle::max_abs_diff(to_matrix(qubit_hamiltonian(one, "A"), one),
                             ComplexMatrix::diagonal(d)) < 1e-16);

  const SystemSpec two({{"A", 1.0, 2.0}}, {{"B", 1.0}}, 1.0);
  const auto m = to_matrix(PauliTerm(1.0, {{"A", PauliOp::Minus}, {"B", PauliOp::Plus}}), two);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(m(i, j) == Complex((i == 0b10 && j == 0b01) ? 1.0 : 0.0));

  // sigma^+_{A1} sigma^-_{A2} sigma^-_B + h.c. connects |011> and |100> only.
  const SystemSpec s = three_qubits(2.0, 1.0, 1.0);
  const auto e9 = to_matrix(three_body_exchange("A1", "A2", "B", 1.0), s);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const bool hit = (i == 0b011 && j == 0b100) || (i == 0b100 && j == 0b011);
      CHECK(e9(i, j) == Complex(hit ? 1.0 : 0.0));
    }

  CHECK_THROWS_AS(to_matrix(PauliTerm(1.0, {{"Q", PauliOp::Z}}), s), std::invalid_argument);
}

TEST_CASE("to_matrix agrees with the basis-action oracle and is linear") {
  std::mt19937_64 rng(21);
  const SystemSpec s({{"A1", 1.0, 2.0}, {"A2", 1.5, 2.0}}, {{"B1", 1.0}, {"B2", 0.5}}, 1.0);
  const std::vector<std::string> labels{"A1", "A2", "B1", "B2"};
  std::uniform_int_distribution<int> opd(-1, 4);
  std::normal_distribution<double> g(0.0, 1.0);
  auto random_sum = [&](std::vector<ComplexMatrix>* oracle_terms) {
    PauliSum h;
    for (int t = 0; t < 4; ++t) {
      std::vector<PauliFactor> f;
      Ops ops;
      for (std::size_t q = 0; q < 4; ++q) {
        const int o = opd(rng);
        if (o < 0) continue;
        f.push_back({labels[q], static_cast<PauliOp>(o)});
        ops.emplace_back(q, static_cast<PauliOp>(o));
      }
      const Complex c(g(rng), g(rng));
      h += PauliTerm(c, f);
      if (oracle_terms) oracle_terms->push_back(oracle::pauli_string(c, ops, 4));
    }
    return h;
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ComplexMatrix> parts;
    const PauliSum h1 = random_sum(&parts);
    ComplexMatrix expect(16);
    for (const auto& p : parts) expect += p;
    CHECK(oracle::max_abs_diff(to_matrix(h1, s), expect) < 1e-14);

    const PauliSum h2 = random_sum(nullptr);
    const Complex alpha(g(rng), g(rng));
    const auto lhs = to_matrix(alpha * h1 + h2, s);
    const auto rhs = alpha * to_matrix(h1, s) + to_matrix(h2, s);
    CHECK(oracle::max_abs_diff(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("frequency matching examples") {
  const SystemSpec s = three_qubits(2.0, 1.0, 1.0);
  CHECK(frequency_match_check(PauliTerm(1.0, {{"A2", PauliOp::Minus}, {"B", PauliOp::Plus}}), s));
  CHECK(frequency_match_check(
      PauliTerm(1.0, {{"A1", PauliOp::Plus}, {"A2", PauliOp::Minus}, {"B", PauliOp::Minus}}), s));
  const SystemSpec odd = three_qubits(1.37, 0.2, 3.1);
  CHECK(frequency_match_check(
      PauliTerm(1.0, {{"A1", PauliOp::Z}, {"A2", PauliOp::Z}, {"B", PauliOp::Z}}), odd));
  CHECK_FALSE(
      frequency_match_check(PauliTerm(1.0, {{"A1", PauliOp::Minus}, {"B", PauliOp::Plus}}), s));
  CHECK_FALSE(frequency_match_check(PauliTerm(1.0, {{"A2", PauliOp::X}, {"B", PauliOp::X}}), s));
}

TEST_CASE("heat transfer condition examples") {
  const SystemSpec s = three_qubits(2.0, 1.0, 1.0);
  const auto e9 = verify_heat_transfer_condition(three_body_exchange("A1", "A2", "B", 0.005),
                                                 free_hamiltonian_a(s), free_hamiltonian_b(s), s);
  CHECK(e9.holds);
  CHECK(e9.residual < 1e-14);

  const auto bad = verify_heat_transfer_condition(flip_flop("A1", "B", 0.005),
                                                  free_hamiltonian_a(s), free_hamiltonian_b(s), s);
  CHECK_FALSE(bad.holds);
  CHECK(bad.residual > 1e-3);
  CHECK_THROWS_AS(two_body_interaction(s, {{"A1", "B", 0.005}}), std::invalid_argument);
  CHECK_THROWS_AS(two_body_interaction(s, {{"A1", "A2", 0.005}}), std::invalid_argument);
  const PauliSum ok = two_body_interaction(s, {{"A2", "B", Complex(0.003, 0.004)}});
  CHECK(verify_heat_transfer_condition(ok, free_hamiltonian_a(s), free_hamiltonian_b(s), s).holds);

  const auto pert = verify_heat_transfer_condition(uniform_two_body_perturbation(s, 0.001),
                                                   free_hamiltonian_a(s), free_hamiltonian_b(s), s);
  CHECK_FALSE(pert.holds);
}

TEST_CASE("mixed two- and three-body family") {
  const SystemSpec s = three_qubits(1.0, 1.0, 1.0);
  const double c = 0.005;
  const MixedInteraction m = build_s19_interaction(1.0, +1, c, 0.0, s);
  CHECK(m.r2 == doctest::Approx(0.5));
  const PauliSum h_a = free_hamiltonian_a(s) + m.h_ai;
  const auto r = verify_heat_transfer_condition(m.h_i, h_a, free_hamiltonian_b(s), s);
  CHECK(r.holds);
  CHECK(r.residual < 1e-10);

  // Nonzero coefficients at r1 = 1: c^{xyy} = c, c^{yxy} = -c and the two-body
  // sz sx terms, i.e. H_I = c [(sx sy - sy sx)_{A1 A2} sy_B + (sz_{A2} - sz_{A1}) sx_B].
  const auto P = PauliOp::Plus, M = PauliOp::Minus, X = PauliOp::X, Y = PauliOp::Y,
             Z = PauliOp::Z;
  ComplexMatrix hi = oracle::pauli_string(c, {{0, X}, {1, Y}, {2, Y}}, 3);
  hi += oracle::pauli_string(-c, {{0, Y}, {1, X}, {2, Y}}, 3);
  hi += oracle::pauli_string(c, {{1, Z}, {2, X}}, 3);
  hi += oracle::pauli_string(-c, {{0, Z}, {2, X}}, 3);
  ComplexMatrix hai = oracle::pauli_string(0.5, {{0, M}, {1, P}}, 3);
  hai += oracle::pauli_string(0.5, {{0, P}, {1, M}}, 3);
  CHECK(oracle::max_abs_diff(to_matrix(m.h_i, s), hi) < 1e-15);
  CHECK(oracle::max_abs_diff(to_matrix(m.h_ai, s), hai) < 1e-15);

  // Flipping the sign of the three-body part alone breaks the condition; it
  // is restored only together with r2 -> -r2.
  PauliSum flipped = PauliSum{PauliTerm(2.0 * kI * c, {{"A1", M}, {"A2", P}, {"B", Y}})}.with_hc();
  flipped += PauliTerm(c, {{"A2", Z}, {"B", X}});
  flipped += PauliTerm(-c, {{"A1", Z}, {"B", X}});
  CHECK(oracle::max_abs_diff(to_matrix(flipped, s), to_matrix(m.h_i, s)) > 1e-3);
  CHECK_FALSE(verify_heat_transfer_condition(flipped, h_a, free_hamiltonian_b(s), s).holds);
  const MixedInteraction neg = build_s19_interaction(1.0, -1, -c, 0.0, s);
  CHECK(oracle::max_abs_diff(to_matrix(neg.h_i, s), to_matrix(flipped, s)) < 1e-15);

  const SystemSpec s2 = three_qubits(2.0, 1.0, 1.0);
  const MixedInteraction edge = build_s19_interaction(2.0, +1, c, 0.002, s2);
  CHECK(edge.r2 == 0.0);
  CHECK(frob_norm(to_matrix(edge.h_ai, s2)) < 1e-15);
  CHECK(verify_heat_transfer_condition(edge.h_i, free_hamiltonian_a(s2) + edge.h_ai,
                                       free_hamiltonian_b(s2), s2)
            .holds);

  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.05, 2.0), cu(-0.01, 0.01);
  for (int trial = 0; trial < 25; ++trial) {
    const double r1 = u(rng);
    const int sign = trial % 2 ? 1 : -1;
    const SystemSpec sr = three_qubits(r1, 1.0, 1.0);
    const MixedInteraction mr = build_s19_interaction(r1, sign, cu(rng), cu(rng), sr);
    CHECK(verify_heat_transfer_condition(mr.h_i, free_hamiltonian_a(sr) + mr.h_ai,
                                         free_hamiltonian_b(sr), sr)
              .residual < 1e-10);
  }

  CHECK_THROWS_AS(build_s19_interaction(0.0, 1, c, 0.0, s), std::invalid_argument);
  CHECK_THROWS_AS(build_s19_interaction(2.5, 1, c, 0.0, s), std::invalid_argument);
  CHECK_THROWS_AS(build_s19_interaction(1.0, 0, c, 0.0, s), std::invalid_argument);
}

TEST_CASE("frequency-matched term sets always satisfy the heat transfer condition") {
  std::mt19937_64 rng(23);
  const std::vector<double> levels{1.0, 2.0, 3.0};
  std::uniform_int_distribution<int> lv(0, 2), nq(2, 4), opd(-1, 4), coin(0, 1);
  std::normal_distribution<double> g(0.0, 0.01);
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = nq(rng);
    const int na = 1 + coin(rng) * (n - 2);
    std::vector<ASubsystem> a;
    std::vector<BQubit> b;
    std::vector<std::string> labels;
    for (int q = 0; q < n; ++q) {
      const std::string name = (q < na ? "A" : "B") + std::to_string(q);
      labels.push_back(name);
      if (q < na) a.push_back({name, levels[lv(rng)], 2.0});
      else b.push_back({name, levels[lv(rng)]});
    }
    const SystemSpec s(a, b, 1.0);
    PauliSum h;
    for (int t = 0; t < 6; ++t) {
      std::vector<PauliFactor> f;
      for (int q = 0; q < n; ++q) {
        const int o = opd(rng);
        if (o >= 0) f.push_back({labels[q], static_cast<PauliOp>(o)});
      }
      if (f.empty()) continue;
      const PauliTerm term(Complex(g(rng), g(rng)), f);
      const bool match = frequency_match_check(term, s);
      const PauliSum closed = PauliSum{term}.with_hc();
      const auto single =
          verify_heat_transfer_condition(closed, free_hamiltonian_a(s), free_hamiltonian_b(s), s);
      // The numerical commutator agrees with the symbolic rule term by term.
      CHECK(single.holds == match);
      if (match) {
        h += closed;
        ++accepted;
      } else {
        ++rejected;
      }
    }
    CHECK(verify_heat_transfer_condition(h, free_hamiltonian_a(s), free_hamiltonian_b(s), s).holds);
  }
  CHECK(accepted > 50);
  CHECK(rejected > 50);
}

TEST_CASE("two-body filter over the nine xyz products leaves flip-flop plus zz") {
  const std::vector<PauliOp> xyz{PauliOp::X, PauliOp::Y, PauliOp::Z};
  auto kernel = [&](double wa, double wb) {
    const SystemSpec s({{"A", wa, 2.0}}, {{"B", wb}}, 1.0);
    const ComplexMatrix h0 = to_matrix(free_a_and_b(s), s);
    std::vector<ComplexMatrix> comm;
    for (auto p : xyz)
      for (auto q : xyz)
        comm.push_back(commutator(oracle::pauli_string(1.0, {{0, p}, {1, q}}, 2), h0));
    // Gram matrix of the commutator images; its null space is the family of
    // real combinations sum c_pq s^p_A s^q_B that commute with H_0.
    ComplexMatrix gram(9);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) gram(i, j) = trace_product(comm[i].adjoint(), comm[j]);
    const auto e = herm_eig(gram);
    std::vector<std::vector<double>> null;
    for (std::size_t k = 0; k < 9; ++k) {
      if (e.eigenvalues[k] > 1e-10) continue;
      std::vector<double> v(9);
      for (std::size_t i = 0; i < 9; ++i) v[i] = e.eigenvectors(i, k).real();
      null.push_back(v);
    }
    return null;
  };
  auto in_span = [](const std::vector<std::vector<double>>& basis, std::vector<double> v) {
    for (const auto& b : basis) {
      double dot = 0.0, nb = 0.0;
      for (std::size_t i = 0; i < 9; ++i) dot += b[i] * v[i], nb += b[i] * b[i];
      for (std::size_t i = 0; i < 9; ++i) v[i] -= dot / nb * b[i];
    }
    double r = 0.0;
    for (double x : v) r += x * x;
    return std::sqrt(r) < 1e-9;
  };
  // Index p * 3 + q for s^p_A s^q_B with p, q in (x, y, z).
  std::vector<double> xx_yy(9, 0.0), xy_yx(9, 0.0), zz(9, 0.0);
  xx_yy[0] = xx_yy[4] = 1.0;  // real flip-flop: (xx + yy) / 2
  xy_yx[1] = 1.0;             // imaginary flip-flop: (xy - yx) / 2
  xy_yx[3] = -1.0;
  zz[8] = 1.0;

  const auto equal = kernel(1.3, 1.3);
  CHECK(equal.size() == 3);
  CHECK(in_span(equal, xx_yy));
  CHECK(in_span(equal, xy_yx));
  CHECK(in_span(equal, zz));

  const auto unequal = kernel(1.3, 0.7);
  CHECK(unequal.size() == 1);
  CHECK(in_span(unequal, zz));

  // The flip-flop builder spans the same family.
  const SystemSpec s({{"A", 1.3, 2.0}}, {{"B", 1.3}}, 1.0);
  const auto re = to_matrix(flip_flop("A", "B", 1.0), s);
  const auto im = to_matrix(flip_flop("A", "B", kI), s);
  const auto X = PauliOp::X, Y = PauliOp::Y;
  ComplexMatrix expect_re = oracle::pauli_string(0.5, {{0, X}, {1, X}}, 2);
  expect_re += oracle::pauli_string(0.5, {{0, Y}, {1, Y}}, 2);
  CHECK(oracle::max_abs_diff(re, expect_re) < 1e-15);
  ComplexMatrix expect_im = oracle::pauli_string(-0.5, {{0, X}, {1, Y}}, 2);
  expect_im += oracle::pauli_string(0.5, {{0, Y}, {1, X}}, 2);
  CHECK(oracle::max_abs_diff(im, expect_im) < 1e-15);
}

TEST_CASE("flip-flop pair splitting") {
  const SystemSpec s({{"A1", 1.0, 2.0}, {"A2", 1.0, 2.0}}, {{"B", 1.0}}, 1.0);
  const PauliSum h = flip_flop("A1", "B", 0.1) + flip_flop("A2", "B", 0.2);
  const auto pairs = split_flip_flop_pairs(h, s);
  REQUIRE(pairs.has_value());
  CHECK(pairs->size() == 2);
  ComplexMatrix sum(8);
  for (const auto& p : *pairs) sum += to_matrix(p.h, s);
  CHECK(oracle::max_abs_diff(sum, to_matrix(h, s)) < 1e-16);
  CHECK_FALSE(split_flip_flop_pairs(three_body_exchange("A1", "A2", "B", 0.1), s).has_value());
  CHECK_FALSE(split_flip_flop_pairs(flip_flop("A1", "A2", 0.1), s).has_value());
}
