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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qheat {

enum class Side { A, B };

/// One qubit of the joint system. Energies are in units of a reference
/// frequency omega_0 (hbar = k_B = 1), so beta is in units of 1/omega_0.
struct Qubit {
  std::string label;
  Side side;
  double omega;
  double beta;
};

struct ASubsystem {
  std::string label;
  double omega;
  double beta;
};

struct BQubit {
  std::string label;
  double omega;
};

/// Qubit partition into the cold system A (individual temperatures) and the
/// hot system B (one shared temperature). Basis order is A_1..A_N, B_1..B_M.
class SystemSpec {
 public:
  /// Throws std::invalid_argument on empty system, duplicate labels,
  /// negative frequencies, or non-positive/non-finite beta.
  SystemSpec(std::vector<ASubsystem> a, std::vector<BQubit> b, double beta_b);

  std::span<const Qubit> qubits() const noexcept { return qubits_; }
  const Qubit& qubit(std::size_t index) const { return qubits_.at(index); }
  const Qubit& qubit(std::string_view label) const;

  std::size_t num_qubits() const noexcept { return qubits_.size(); }
  std::size_t num_a() const noexcept { return num_a_; }
  std::size_t num_b() const noexcept { return qubits_.size() - num_a_; }
  std::size_t dim() const noexcept { return std::size_t{1} << qubits_.size(); }
  std::vector<std::size_t> dims() const { return std::vector<std::size_t>(qubits_.size(), 2); }

  std::optional<std::size_t> find(std::string_view label) const noexcept;
  /// Throws std::invalid_argument for an unknown label.
  std::size_t index_of(std::string_view label) const;

  std::vector<std::size_t> a_indices() const;
  std::vector<std::size_t> b_indices() const;

  double beta_b() const noexcept { return beta_b_; }
  /// Reference temperature of A: the minimum of beta_{A_k}.
  double beta_a() const;

  /// True when every A_k is strictly colder than B.
  bool a_is_cold() const;

  /// Sub-system on the given qubits, kept in the original basis order.
  SystemSpec restrict(std::span<const std::size_t> indices) const;

  std::vector<ASubsystem> a_subsystems() const;
  std::vector<BQubit> b_qubits() const;

 private:
  SystemSpec() = default;
  void validate() const;

  std::vector<Qubit> qubits_;
  std::size_t num_a_ = 0;
  double beta_b_ = 1.0;
};

}  // namespace qheat
