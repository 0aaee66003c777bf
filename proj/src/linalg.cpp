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

#include "qheat/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qheat/kernels.hpp"

namespace qheat {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* op) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
}

// Row-major strides of a tensor-product index.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * dims[i];
  }
  return strides;
}

// Flat offsets for every multi-index over `subsystems`, enumerated with the
// first listed subsystem most significant.
std::vector<std::size_t> offsets_over(std::span<const std::size_t> subsystems,
                                      std::span<const std::size_t> dims,
                                      std::span<const std::size_t> strides) {
  std::vector<std::size_t> offsets{0};
  for (std::size_t s : subsystems) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[s]);
    for (std::size_t base : offsets) {
      for (std::size_t digit = 0; digit < dims[s]; ++digit) {
        next.push_back(base + digit * strides[s]);
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

void validate_subsystems(std::span<const std::size_t> keep,
                         std::span<const std::size_t> dims, std::size_t dim,
                         const char* op) {
  if (product(dims) != dim) {
    throw std::invalid_argument(std::string(op) +
                                ": subsystem dims do not multiply to matrix dim");
  }
  if (keep.empty()) {
    throw std::invalid_argument(std::string(op) + ": empty subsystem list");
  }
  std::vector<bool> seen(dims.size(), false);
  for (std::size_t s : keep) {
    if (s >= dims.size()) {
      throw std::invalid_argument(std::string(op) + ": subsystem index " +
                                  std::to_string(s) + " out of range");
    }
    if (seen[s]) {
      throw std::invalid_argument(std::string(op) + ": repeated subsystem " +
                                  std::to_string(s));
    }
    seen[s] = true;
  }
}

using EigenMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw std::invalid_argument("ComplexMatrix: rows must form a square");
    }
    std::copy(row.begin(), row.end(), data_.begin() + r * dim_);
    ++r;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+=");
  kernels::axpy(1.0, other.data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-=");
  kernels::axpy(-1.0, other.data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Complex ComplexMatrix::trace() const noexcept {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  ComplexMatrix out(lhs.dim());
  kernels::gemm(lhs.data(), rhs.data(), out.data(), lhs.dim());
  return out;
}

std::size_t product(std::span<const std::size_t> dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t ar = 0; ar < da; ++ar) {
    for (std::size_t ac = 0; ac < da; ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < db; ++br) {
        for (std::size_t bc = 0; bc < db; ++bc) {
          out(ar * db + br, ac * db + bc) = s * b(br, bc);
        }
      }
    }
  }
  return out;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw std::invalid_argument("kron: no factors");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
  validate_subsystems(keep, dims, rho.dim(), "partial_trace");
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);
  }
  const auto strides = strides_of(dims);
  const auto kept_off = offsets_over(keep, dims, strides);
  const auto traced_off = offsets_over(traced, dims, strides);

  ComplexMatrix out(kept_off.size());
  for (std::size_t r = 0; r < kept_off.size(); ++r) {
    for (std::size_t c = 0; c < kept_off.size(); ++c) {
      Complex sum{};
      for (std::size_t t : traced_off) sum += rho(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = sum;
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 std::span<const std::size_t> order,
                                 std::span<const std::size_t> dims) {
  validate_subsystems(order, dims, m.dim(), "permute_subsystems");
  if (order.size() != dims.size()) {
    throw std::invalid_argument("permute_subsystems: order must list every subsystem");
  }
  return partial_trace(m, order, dims);
}

HermitianEigenSystem herm_eig(const ComplexMatrix& h) {
  const double defect = hermiticity_defect(h);
  if (!(defect < 1e-10)) {
    throw std::invalid_argument("herm_eig: input is not Hermitian (relative defect " +
                                std::to_string(defect) + ")");
  }
  const std::size_t n = h.dim();
  Eigen::Map<const EigenMatrix> view(h.data().data(), n, n);
  // Symmetrize so the solver sees an exactly Hermitian input.
  EigenMatrix sym = 0.5 * (view + view.adjoint());
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("herm_eig: eigensolver did not converge");
  }
  HermitianEigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = solver.eigenvalues()(i);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      out.eigenvectors(r, c) = solver.eigenvectors()(r, c);
    }
  }
  return out;
}

ComplexMatrix matrix_func_complex(const HermitianEigenSystem& eig,
                                  const std::function<Complex(double)>& f) {
  const std::size_t n = eig.eigenvectors.dim();
  // (V f) V^dag with f applied column-wise.
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t c = 0; c < n; ++c) {
    const Complex fc = f(eig.eigenvalues[c]);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= fc;
  }
  return scaled * eig.eigenvectors.adjoint();
}

ComplexMatrix matrix_func(const HermitianEigenSystem& eig,
                          const std::function<double(double)>& f) {
  return matrix_func_complex(eig, [&f](double x) { return Complex{f(x), 0.0}; });
}

ComplexMatrix matrix_func(const ComplexMatrix& h,
                          const std::function<double(double)>& f) {
  return matrix_func(herm_eig(h), f);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  ComplexMatrix ab = a * b;
  ab -= b * a;
  return ab;
}

double frob_norm(const ComplexMatrix& a) {
  return std::sqrt(kernels::dot_conj(a.data(), a.data()).real());
}

Complex trace_product_hermitian(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_product_hermitian");
  // tr(ab) = sum_ij a_ij b_ji = sum_ij conj(a_ji) b_ji when a = a^dag.
  return kernels::dot_conj(a.data(), b.data());
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_product");
  Complex t{};
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t += a(i, j) * b(j, i);
  }
  return t;
}

double hermiticity_defect(const ComplexMatrix& h) {
  double diff = 0.0;
  double norm = 0.0;
  const std::size_t n = h.dim();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      diff += std::norm(h(r, c) - std::conj(h(c, r)));
      norm += std::norm(h(r, c));
    }
  }
  if (norm == 0.0) return 0.0;
  return std::sqrt(diff / norm);
}

ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.adjoint() * (b * a);
}

}  // namespace qheat
