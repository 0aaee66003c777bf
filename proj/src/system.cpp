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

#include "qheat/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace qheat {

SystemSpec::SystemSpec(std::vector<ASubsystem> a, std::vector<BQubit> b,
                       double beta_b)
    : num_a_(a.size()), beta_b_(beta_b) {
  qubits_.reserve(a.size() + b.size());
  for (auto& q : a) qubits_.push_back({std::move(q.label), Side::A, q.omega, q.beta});
  for (auto& q : b) qubits_.push_back({std::move(q.label), Side::B, q.omega, beta_b});
  validate();
}

void SystemSpec::validate() const {
  if (qubits_.empty()) throw std::invalid_argument("SystemSpec: no qubits");
  if (qubits_.size() > 10) {
    throw std::invalid_argument("SystemSpec: dense simulation limited to 10 qubits");
  }
  std::set<std::string> labels;
  for (const auto& q : qubits_) {
    if (q.label.empty()) throw std::invalid_argument("SystemSpec: empty qubit label");
    if (!labels.insert(q.label).second) {
      throw std::invalid_argument("SystemSpec: duplicate label '" + q.label + "'");
    }
    if (!(q.omega >= 0.0) || !std::isfinite(q.omega)) {
      throw std::invalid_argument("SystemSpec: frequency of '" + q.label +
                                  "' must be finite and >= 0");
    }
    if (!(q.beta > 0.0) || !std::isfinite(q.beta)) {
      throw std::invalid_argument("SystemSpec: inverse temperature of '" + q.label +
                                  "' must be finite and > 0");
    }
  }
}

const Qubit& SystemSpec::qubit(std::string_view label) const {
  return qubits_[index_of(label)];
}

std::optional<std::size_t> SystemSpec::find(std::string_view label) const noexcept {
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    if (qubits_[i].label == label) return i;
  }
  return std::nullopt;
}

std::size_t SystemSpec::index_of(std::string_view label) const {
  if (auto idx = find(label)) return *idx;
  throw std::invalid_argument("SystemSpec: unknown qubit label '" +
                              std::string(label) + "'");
}

std::vector<std::size_t> SystemSpec::a_indices() const {
  std::vector<std::size_t> out(num_a_);
  for (std::size_t i = 0; i < num_a_; ++i) out[i] = i;
  return out;
}

std::vector<std::size_t> SystemSpec::b_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = num_a_; i < qubits_.size(); ++i) out.push_back(i);
  return out;
}

double SystemSpec::beta_a() const {
  if (num_a_ == 0) throw std::logic_error("SystemSpec: system A is empty");
  double b = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < num_a_; ++i) b = std::min(b, qubits_[i].beta);
  return b;
}

bool SystemSpec::a_is_cold() const { return num_a_ > 0 && beta_a() > beta_b_; }

SystemSpec SystemSpec::restrict(std::span<const std::size_t> indices) const {
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("SystemSpec::restrict: repeated qubit index");
  }
  SystemSpec out;
  out.beta_b_ = beta_b_;
  for (std::size_t i : sorted) {
    const Qubit& q = qubits_.at(i);
    out.qubits_.push_back(q);
    if (q.side == Side::A) ++out.num_a_;
  }
  out.validate();
  return out;
}

std::vector<ASubsystem> SystemSpec::a_subsystems() const {
  std::vector<ASubsystem> out;
  for (std::size_t i = 0; i < num_a_; ++i) {
    out.push_back({qubits_[i].label, qubits_[i].omega, qubits_[i].beta});
  }
  return out;
}

std::vector<BQubit> SystemSpec::b_qubits() const {
  std::vector<BQubit> out;
  for (std::size_t i = num_a_; i < qubits_.size(); ++i) {
    out.push_back({qubits_[i].label, qubits_[i].omega});
  }
  return out;
}

}  // namespace qheat
