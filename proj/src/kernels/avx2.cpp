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

#if QHEAT_HAVE_AVX2_KERNELS

#include <immintrin.h>

// Compiled without global -mavx2: each entry point carries its own target
// attribute and is only reached after the dispatcher has checked CPUID.
#define QHEAT_AVX2_FN __attribute__((target("avx2,fma")))

namespace qheat::kernels::avx2 {

namespace {

// std::complex<double> is layout-compatible with double[2].
inline const double* raw(const Complex* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* raw(Complex* p) { return reinterpret_cast<double*>(p); }

// acc += alpha * x for two packed complex numbers, alpha = (ar, ai).
// re: ar*xr - ai*xi ; im: ar*xi + ai*xr
QHEAT_AVX2_FN inline __m256d cmul_acc(__m256d acc, __m256d ar, __m256d ai_signed,
                                      __m256d x) {
  const __m256d xswap = _mm256_permute_pd(x, 0b0101);
  acc = _mm256_fmadd_pd(ar, x, acc);
  return _mm256_fmadd_pd(ai_signed, xswap, acc);
}

}  // namespace

QHEAT_AVX2_FN void gemm(const Complex* a, const Complex* b, Complex* c,
                        std::size_t n) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = Complex{};
  const std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = raw(c + i * n);
    for (std::size_t k = 0; k < n; ++k) {
      const double ar_s = a[i * n + k].real();
      const double ai_s = a[i * n + k].imag();
      if (ar_s == 0.0 && ai_s == 0.0) continue;
      const __m256d ar = _mm256_set1_pd(ar_s);
      const __m256d ai_signed = _mm256_setr_pd(-ai_s, ai_s, -ai_s, ai_s);
      const double* brow = raw(b + k * n);
      for (std::size_t p = 0; p < pairs; ++p) {
        const __m256d bv = _mm256_loadu_pd(brow + 4 * p);
        __m256d cv = _mm256_loadu_pd(crow + 4 * p);
        cv = cmul_acc(cv, ar, ai_signed, bv);
        _mm256_storeu_pd(crow + 4 * p, cv);
      }
      if (n % 2 != 0) {
        const std::size_t j = n - 1;
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        crow[2 * j] += ar_s * br - ai_s * bi;
        crow[2 * j + 1] += ar_s * bi + ai_s * br;
      }
    }
  }
}

QHEAT_AVX2_FN Complex dot_conj(const Complex* x, const Complex* y,
                               std::size_t len) {
  const double* xs = raw(x);
  const double* ys = raw(y);
  __m256d same = _mm256_setzero_pd();   // xr*yr, xi*yi
  __m256d cross = _mm256_setzero_pd();  // xr*yi, xi*yr
  const std::size_t pairs = len / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const __m256d xv = _mm256_loadu_pd(xs + 4 * p);
    const __m256d yv = _mm256_loadu_pd(ys + 4 * p);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double s[4];
  alignas(32) double t[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(t, cross);
  double re = (s[0] + s[2]) + (s[1] + s[3]);
  double im = (t[0] + t[2]) - (t[1] + t[3]);
  if (len % 2 != 0) {
    const std::size_t k = len - 1;
    re += xs[2 * k] * ys[2 * k] + xs[2 * k + 1] * ys[2 * k + 1];
    im += xs[2 * k] * ys[2 * k + 1] - xs[2 * k + 1] * ys[2 * k];
  }
  return {re, im};
}

QHEAT_AVX2_FN void axpy(Complex alpha, const Complex* x, Complex* y,
                        std::size_t len) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai_signed =
      _mm256_setr_pd(-alpha.imag(), alpha.imag(), -alpha.imag(), alpha.imag());
  const double* xs = raw(x);
  double* ys = raw(y);
  const std::size_t pairs = len / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const __m256d xv = _mm256_loadu_pd(xs + 4 * p);
    __m256d yv = _mm256_loadu_pd(ys + 4 * p);
    yv = cmul_acc(yv, ar, ai_signed, xv);
    _mm256_storeu_pd(ys + 4 * p, yv);
  }
  if (len % 2 != 0) {
    const std::size_t k = len - 1;
    y[k] += alpha * x[k];
  }
}

}  // namespace qheat::kernels::avx2

#endif  // QHEAT_HAVE_AVX2_KERNELS
