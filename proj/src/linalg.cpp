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

#include "ovm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ovm {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << "shapes " << a.rows() << "x" << a.cols() << " and " << b.rows()
        << "x" << b.cols() << " differ";
    throw Error(ErrorKind::kShapeMismatch, msg.str());
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.square()) {
    std::ostringstream msg;
    msg << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::kNotSquare, msg.str());
  }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  ComplexMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "cannot multiply " << a.rows() << "x" << a.cols() << " by "
        << b.rows() << "x" << b.cols();
    throw Error(ErrorKind::kShapeMismatch, msg.str());
  }
  ComplexMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

ComplexMatrix operator*(cplx scale, const ComplexMatrix& a) {
  ComplexMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = scale * a(i, j);
  return r;
}

double ComplexVector::norm() const {
  double s = 0.0;
  for (const cplx& z : v_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexVector::all_finite() const {
  for (const cplx& z : v_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::kShapeMismatch, "vector dimensions differ");
  ComplexVector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::kShapeMismatch, "vector dimensions differ");
  ComplexVector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

ComplexVector operator*(cplx scale, const ComplexVector& a) {
  ComplexVector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = scale * a[i];
  return r;
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols() != v.dim()) {
    std::ostringstream msg;
    msg << "cannot apply " << m.rows() << "x" << m.cols() << " to vector of "
        << "dimension " << v.dim();
    throw Error(ErrorKind::kShapeMismatch, msg.str());
  }
  ComplexVector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

cplx inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::kShapeMismatch, "vector dimensions differ");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) {
  ComplexMatrix r(u.dim(), v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j)
      r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx aij = a(ia, ja);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          r(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
    }
  return r;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector r(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) r[i * b.dim() + j] = a[i] * b[j];
  return r;
}

void Tolerance::validate() const {
  if (!(eps_eq > 0.0) || !(eps_cluster > eps_eq) ||
      !std::isfinite(eps_eq) || !std::isfinite(eps_cluster)) {
    std::ostringstream msg;
    msg << "need 0 < eps_eq < eps_cluster, got eps_eq=" << eps_eq
        << " eps_cluster=" << eps_cluster;
    throw Error(ErrorKind::kInvalidTolerance, msg.str());
  }
}

bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b,
               const Tolerance& tol) {
  require_same_shape(a, b);
  return (a - b).frobenius_norm() <= tol.eps_eq;
}

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "operator");
  return (m - m.adjoint()).frobenius_norm() <= tol.eps_eq;
}

bool is_projector(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "operator");
  if ((m - m.adjoint()).frobenius_norm() > tol.eps_eq) return false;
  return (m * m - m).frobenius_norm() <= tol.eps_eq;
}

namespace {

// One two-sided Jacobi rotation zeroing a(p, q). The rotation J is the
// identity outside rows/columns p and q, with J(p,p) = J(q,q) = c,
// J(q,p) = s, J(p,q) = -conj(s); a <- J^H a J, v <- v J.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p,
                   std::size_t q) {
  const std::size_t n = a.rows();
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx phase = apq / r;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  // Smaller-magnitude root of r t^2 - (aqq - app) t - r = 0.
  const double t = (tau <= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const cplx s = (t * c) * std::conj(phase);

  for (std::size_t i = 0; i < n; ++i) {  // a <- a J
    const cplx aip = a(i, p), aiq = a(i, q);
    a(i, p) = c * aip + s * aiq;
    a(i, q) = -std::conj(s) * aip + c * aiq;
  }
  for (std::size_t j = 0; j < n; ++j) {  // a <- J^H a
    const cplx apj = a(p, j), aqj = a(q, j);
    a(p, j) = c * apj + std::conj(s) * aqj;
    a(q, j) = -s * apj + c * aqj;
  }
  for (std::size_t i = 0; i < n; ++i) {  // v <- v J
    const cplx vip = v(i, p), viq = v(i, q);
    v(i, p) = c * vip + s * viq;
    v(i, q) = -std::conj(s) * vip + c * viq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

JacobiResult jacobi_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "operator");
  if (!m.all_finite())
    throw Error(ErrorKind::kNonFinite, "operator has non-finite entries");
  const double herm_defect = (m - m.adjoint()).frobenius_norm();
  if (herm_defect > tol.eps_eq) {
    std::ostringstream msg;
    msg << "Hermiticity defect " << herm_defect << " exceeds eps_eq "
        << tol.eps_eq;
    throw Error(ErrorKind::kNotHermitian, msg.str());
  }

  const std::size_t n = m.rows();
  // Symmetrize so roundoff in the input cannot bias the iteration.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, a.frobenius_norm());
  const double converge = 1e-14 * scale;
  const double skip = 1e-18 * scale;
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= converge) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > skip) jacobi_rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double di = a(i, i).real(), dj = a(j, j).real();
    if (di != dj) return di < dj;
    return i < j;
  });

  JacobiResult res;
  res.values.resize(n);
  res.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
  }
  return res;
}

std::vector<EigenTerm> hermitian_eigendecomposition(const ComplexMatrix& m,
                                                    const Tolerance& tol) {
  tol.validate();
  const JacobiResult eig = jacobi_hermitian(m, tol);
  const std::size_t n = eig.values.size();

  // Chain eigenvalues into tight groups (consecutive gap <= eps_eq), then
  // demand clear separation (> eps_cluster) between groups.
  std::vector<EigenTerm> terms;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && eig.values[end] - eig.values[end - 1] <= tol.eps_eq)
      ++end;
    if (end < n) {
      const double gap = eig.values[end] - eig.values[end - 1];
      if (gap <= tol.eps_cluster) {
        std::ostringstream msg;
        msg << "eigenvalue gap " << gap << " lies in the ambiguous band ("
            << tol.eps_eq << ", " << tol.eps_cluster << "]";
        throw Error(ErrorKind::kClusterAmbiguity, msg.str());
      }
    }

    EigenTerm term;
    double sum = 0.0;
    term.projector = ComplexMatrix(n, n);
    for (std::size_t k = start; k < end; ++k) {
      sum += eig.values[k];
      for (std::size_t i = 0; i < n; ++i) {
        const cplx vik = eig.vectors(i, k);
        for (std::size_t j = 0; j < n; ++j)
          term.projector(i, j) += vik * std::conj(eig.vectors(j, k));
      }
    }
    term.value = sum / static_cast<double>(end - start);
    terms.push_back(std::move(term));
    start = end;
  }
  return terms;
}

}  // namespace ovm
