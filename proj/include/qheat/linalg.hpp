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

// Dense complex linear algebra for joint systems of a handful of qubits.
//
// Basis convention used everywhere in qheat: |0> is the +1 eigenvector of
// sigma^z, and a joint basis index is written with the leftmost tensor
// factor as the most significant digit.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qheat {

using Complex = std::complex<double>;

/// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  /// Zero matrix. dim must be >= 1.
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  ComplexMatrix adjoint() const;
  Complex trace() const noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// Ascending eigenvalues with matching column eigenvectors.
struct HermitianEigenSystem {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::span<const ComplexMatrix> factors);

/// Reduced matrix on the subsystems listed in `keep`. The result's tensor
/// factors follow the order of `keep`, so an unsorted list also permutes.
/// Throws std::invalid_argument when dims do not multiply to dim(rho) or
/// `keep` is empty, out of range, or repeats an index.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);

/// Reorders tensor factors: factor `order[i]` of the input becomes factor i
/// of the output.
ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 std::span<const std::size_t> order,
                                 std::span<const std::size_t> dims);

/// Throws std::invalid_argument if ||h - h^dag||_F / ||h||_F >= 1e-10.
HermitianEigenSystem herm_eig(const ComplexMatrix& h);

/// V f(Lambda) V^dag.
ComplexMatrix matrix_func(const ComplexMatrix& h,
                          const std::function<double(double)>& f);
ComplexMatrix matrix_func(const HermitianEigenSystem& eig,
                          const std::function<double(double)>& f);
/// Complex-valued spectral function, e.g. exp(-i x t).
ComplexMatrix matrix_func_complex(const HermitianEigenSystem& eig,
                                  const std::function<Complex(double)>& f);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
double frob_norm(const ComplexMatrix& a);

/// tr(a b) for Hermitian a; routes through the conjugated dot kernel.
Complex trace_product_hermitian(const ComplexMatrix& a, const ComplexMatrix& b);
/// tr(a b) for arbitrary square matrices.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||h - h^dag||_F / max(||h||_F, tiny).
double hermiticity_defect(const ComplexMatrix& h);

/// a^dag b a, used for basis changes and unitary conjugation.
ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b);

std::size_t product(std::span<const std::size_t> dims);

}  // namespace qheat
