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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qheat/kernels.hpp"

namespace qheat::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if QHEAT_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() noexcept {
  // QHEAT_FORCE_SCALAR=1 pins the reference path for a whole process.
  if (const char* env = std::getenv("QHEAT_FORCE_SCALAR");
      env != nullptr && std::string(env) != "0") {
    return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

void check_len(std::size_t got, std::size_t want, const char* what) {
  if (got < want) {
    throw std::invalid_argument(std::string("kernels: ") + what +
                                " buffer too small");
  }
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

bool isa_available(Isa isa) noexcept {
  return isa == Isa::Scalar || cpu_has_avx2();
}

bool set_isa_override(std::optional<Isa> isa) noexcept {
  if (!isa) {
    current().store(detect(), std::memory_order_relaxed);
    return true;
  }
  if (!isa_available(*isa)) return false;
  current().store(*isa, std::memory_order_relaxed);
  return true;
}

void gemm(std::span<const Complex> a, std::span<const Complex> b,
          std::span<Complex> c, std::size_t n) {
  check_len(a.size(), n * n, "gemm lhs");
  check_len(b.size(), n * n, "gemm rhs");
  check_len(c.size(), n * n, "gemm out");
#if QHEAT_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) {
    avx2::gemm(a.data(), b.data(), c.data(), n);
    return;
  }
#endif
  scalar::gemm(a.data(), b.data(), c.data(), n);
}

Complex dot_conj(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("kernels: dot_conj length mismatch");
  }
#if QHEAT_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) return avx2::dot_conj(x.data(), y.data(), x.size());
#endif
  return scalar::dot_conj(x.data(), y.data(), x.size());
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("kernels: axpy length mismatch");
  }
#if QHEAT_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) {
    avx2::axpy(alpha, x.data(), y.data(), x.size());
    return;
  }
#endif
  scalar::axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace qheat::kernels
