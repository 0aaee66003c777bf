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

#include "qheat/kernels.hpp"

namespace qheat::kernels::scalar {

// Written on split real/imaginary parts so the compiler does not route
// through the C99 complex-multiply NaN handling.

void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t n) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = Complex{};
  for (std::size_t i = 0; i < n; ++i) {
    Complex* crow = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double ar = a[i * n + k].real();
      const double ai = a[i * n + k].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const Complex* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] = Complex{crow[j].real() + (ar * br - ai * bi),
                          crow[j].imag() + (ar * bi + ai * br)};
      }
    }
  }
}

Complex dot_conj(const Complex* x, const Complex* y, std::size_t len) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    const double yr = y[k].real();
    const double yi = y[k].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t len) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t k = 0; k < len; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    y[k] = Complex{y[k].real() + (ar * xr - ai * xi),
                   y[k].imag() + (ar * xi + ai * xr)};
  }
}

}  // namespace qheat::kernels::scalar
