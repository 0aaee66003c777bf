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

// Dense complex inner loops. Every kernel has a portable scalar reference
// implementation and, on x86-64, an AVX2+FMA variant. The variant is picked
// once at startup from CPUID; tests compare the two.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace qheat::kernels {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Variant the dispatcher currently routes to.
Isa active_isa() noexcept;

/// True when the running CPU can execute the given variant.
bool isa_available(Isa isa) noexcept;

/// Force a variant (tests, benchmarks). std::nullopt restores auto-detection.
/// Requesting an unavailable variant is ignored and returns false.
bool set_isa_override(std::optional<Isa> isa) noexcept;

/// c = a * b for row-major n x n matrices. c must not alias a or b.
void gemm(std::span<const Complex> a, std::span<const Complex> b,
          std::span<Complex> c, std::size_t n);

/// sum_k conj(x_k) * y_k
Complex dot_conj(std::span<const Complex> x, std::span<const Complex> y);

/// y += alpha * x
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);

// Direct access to each variant, bypassing dispatch.
namespace scalar {
void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t n);
Complex dot_conj(const Complex* x, const Complex* y, std::size_t len);
void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t len);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define QHEAT_HAVE_AVX2_KERNELS 1
namespace avx2 {
void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t n);
Complex dot_conj(const Complex* x, const Complex* y, std::size_t len);
void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t len);
}  // namespace avx2
#else
#define QHEAT_HAVE_AVX2_KERNELS 0
#endif

}  // namespace qheat::kernels
