// Copyright 2026 The Overmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ovm/error.hpp"

namespace ovm {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Dimensions stay small (observables live on
// spaces of dimension <= ~64), so everything is written for clarity over
// cache tricks.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  const std::vector<cplx>& entries() const { return a_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scale, const ComplexMatrix& a);

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : v_(dim, cplx(0.0, 0.0)) {}
  explicit ComplexVector(std::vector<cplx> entries) : v_(std::move(entries)) {}

  std::size_t dim() const { return v_.size(); }
  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }
  const std::vector<cplx>& entries() const { return v_; }

  double norm() const;
  bool all_finite() const;

 private:
  std::vector<cplx> v_;
};

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator*(cplx scale, const ComplexVector& a);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

// Inner product, conjugate-linear in the first argument.
cplx inner(const ComplexVector& a, const ComplexVector& b);

// |u><v|.
ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Equality and clustering thresholds. eps_eq decides when two operators or
// indices coincide; eps_cluster decides when two eigenvalues are distinct.
// The band between them is a guard zone: eigenvalue gaps that land inside it
// are rejected as ambiguous rather than silently merged or split.
struct Tolerance {
  double eps_eq = 1e-9;
  double eps_cluster = 1e-6;

  Tolerance() = default;
  Tolerance(double eq, double cluster) : eps_eq(eq), eps_cluster(cluster) {
    validate();
  }
  void validate() const;
};

// Frobenius distance <= eps_eq. Shapes must agree.
bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b,
               const Tolerance& tol = Tolerance());

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol = Tolerance());

// Hermitian and idempotent within eps_eq. Throws on non-square input.
bool is_projector(const ComplexMatrix& m, const Tolerance& tol = Tolerance());

// One spectral term: an eigenvalue with the orthogonal projector onto its
// eigenspace.
struct EigenTerm {
  double value = 0.0;
  ComplexMatrix projector;
};

struct JacobiResult {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // unitary; column i pairs with values[i]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix (no eigenvalue
// clustering). The input is checked square and Hermitian within eps_eq, then
// symmetrized before iterating.
JacobiResult jacobi_hermitian(const ComplexMatrix& m,
                              const Tolerance& tol = Tolerance());

// Full eigendecomposition with eigenvalue clustering: eigenvalues closer than
// eps_eq are chained into one cluster, clusters must then be separated by
// more than eps_cluster, and each cluster contributes one (mean value,
// eigenspace projector) term, ascending by value. A cluster boundary falling
// inside (eps_eq, eps_cluster] throws ClusterAmbiguity.
std::vector<EigenTerm> hermitian_eigendecomposition(
    const ComplexMatrix& m, const Tolerance& tol = Tolerance());

}  // namespace ovm
