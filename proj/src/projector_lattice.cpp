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

#include "ovm/projector_lattice.hpp"

#include <cmath>
#include <sstream>

namespace ovm {

namespace {

void require_projector(const ComplexMatrix& m, const char* name,
                       const Tolerance& tol) {
  if (!m.square()) {
    std::ostringstream msg;
    msg << name << " must be square";
    throw Error(ErrorKind::kNotSquare, msg.str());
  }
  if (!is_projector(m, tol)) {
    std::ostringstream msg;
    msg << name << " is not a projector within eps_eq";
    throw Error(ErrorKind::kNotAProjector, msg.str());
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) {
    std::ostringstream msg;
    msg << "projectors act on dimensions " << a.rows() << " and " << b.rows();
    throw Error(ErrorKind::kDimMismatch, msg.str());
  }
}

}  // namespace

ProjectorSet::ProjectorSet(std::size_t d, std::vector<ComplexMatrix> m,
                           const Tolerance& tol)
    : dim(d), members(std::move(m)) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].rows() != dim || members[i].cols() != dim) {
      std::ostringstream msg;
      msg << "member " << i << " is not " << dim << "x" << dim;
      throw Error(ErrorKind::kDimMismatch, msg.str());
    }
    if (!is_projector(members[i], tol)) {
      std::ostringstream msg;
      msg << "member " << i << " is not a projector within eps_eq";
      throw Error(ErrorKind::kNotAProjector, msg.str());
    }
  }
}

bool leq(const ComplexMatrix& e, const ComplexMatrix& f, const Tolerance& tol) {
  require_projector(e, "left operand", tol);
  require_projector(f, "right operand", tol);
  require_same_dim(e, f);
  return (e * f - e).frobenius_norm() <= tol.eps_eq;
}

ComplexMatrix glb_commuting(const ComplexMatrix& e, const ComplexMatrix& f,
                            const Tolerance& tol) {
  require_projector(e, "left operand", tol);
  require_projector(f, "right operand", tol);
  require_same_dim(e, f);
  const double comm = (e * f - f * e).frobenius_norm();
  if (comm > tol.eps_eq) {
    std::ostringstream msg;
    msg << "commutator norm " << comm << " exceeds eps_eq " << tol.eps_eq;
    throw Error(ErrorKind::kNotCommuting, msg.str());
  }
  return e * f;
}

ComplexMatrix lub_orthogonal(const ProjectorSet& family, const Tolerance& tol) {
  if (family.members.empty())
    throw Error(ErrorKind::kEmptyList, "least upper bound of an empty family");
  for (std::size_t i = 0; i < family.members.size(); ++i)
    for (std::size_t j = i + 1; j < family.members.size(); ++j) {
      const double off =
          (family.members[i] * family.members[j]).frobenius_norm();
      if (off > tol.eps_eq) {
        std::ostringstream msg;
        msg << "members " << i << " and " << j
            << " are not orthogonal (product norm " << off << ")";
        throw Error(ErrorKind::kNotOrthogonal, msg.str());
      }
    }
  ComplexMatrix sum(family.dim, family.dim);
  for (const ComplexMatrix& e : family.members) sum = sum + e;
  return sum;
}

bool orthogonality_propagates(const ComplexMatrix& e, const ComplexMatrix& f,
                              const ComplexMatrix& g, const Tolerance& tol) {
  require_projector(e, "first projector", tol);
  require_projector(f, "second projector", tol);
  require_projector(g, "third projector", tol);
  require_same_dim(e, f);
  require_same_dim(e, g);
  const bool ef_orthogonal = (e * f).frobenius_norm() <= tol.eps_eq;
  const bool g_below_e = (g * e - g).frobenius_norm() <= tol.eps_eq;
  if (!ef_orthogonal || !g_below_e) return true;  // hypotheses not met
  return (g * f).frobenius_norm() <= tol.eps_eq;
}

bool sum_dominates(const ProjectorSet& gs, const ProjectorSet& es,
                   const std::vector<std::size_t>& assignment,
                   const Tolerance& tol) {
  if (gs.dim != es.dim) {
    std::ostringstream msg;
    msg << "families act on dimensions " << gs.dim << " and " << es.dim;
    throw Error(ErrorKind::kDimMismatch, msg.str());
  }
  if (assignment.size() != gs.members.size())
    throw Error(ErrorKind::kPreconditionViolated,
                "assignment length differs from the dominated family size");
  for (std::size_t l = 0; l < assignment.size(); ++l)
    if (assignment[l] >= es.members.size()) {
      std::ostringstream msg;
      msg << "assignment[" << l << "] = " << assignment[l]
          << " is out of range";
      throw Error(ErrorKind::kPreconditionViolated, msg.str());
    }
  for (std::size_t i = 0; i < gs.members.size(); ++i)
    for (std::size_t j = i + 1; j < gs.members.size(); ++j)
      if ((gs.members[i] * gs.members[j]).frobenius_norm() > tol.eps_eq) {
        std::ostringstream msg;
        msg << "dominated members " << i << " and " << j
            << " are not orthogonal";
        throw Error(ErrorKind::kPreconditionViolated, msg.str());
      }
  for (std::size_t i = 0; i < es.members.size(); ++i)
    for (std::size_t j = i + 1; j < es.members.size(); ++j)
      if ((es.members[i] * es.members[j]).frobenius_norm() > tol.eps_eq) {
        std::ostringstream msg;
        msg << "dominating members " << i << " and " << j
            << " are not orthogonal";
        throw Error(ErrorKind::kPreconditionViolated, msg.str());
      }
  for (std::size_t l = 0; l < gs.members.size(); ++l) {
    const ComplexMatrix& e = es.members[assignment[l]];
    if ((gs.members[l] * e - gs.members[l]).frobenius_norm() > tol.eps_eq) {
      std::ostringstream msg;
      msg << "lower-bound condition fails at index " << l;
      throw Error(ErrorKind::kPreconditionViolated, msg.str());
    }
  }

  ComplexMatrix sum_g(gs.dim, gs.dim);
  for (const ComplexMatrix& g : gs.members) sum_g = sum_g + g;
  ComplexMatrix sum_e(es.dim, es.dim);
  for (const ComplexMatrix& e : es.members) sum_e = sum_e + e;
  return (sum_g * sum_e - sum_g).frobenius_norm() <= tol.eps_eq;
}

ComplexMatrix brute_force_glb(const ComplexMatrix& e, const ComplexMatrix& f,
                              const Tolerance& tol) {
  require_projector(e, "left operand", tol);
  require_projector(f, "right operand", tol);
  require_same_dim(e, f);
  const std::size_t n = e.rows();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  // (I - E) + (I - F) is positive semidefinite; its kernel is exactly
  // range(E) intersect range(F).
  const ComplexMatrix gap = (id - e) + (id - f);
  const JacobiResult eig = jacobi_hermitian(gap, tol);
  ComplexMatrix proj(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] > tol.eps_eq) break;  // ascending order
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j)
        proj(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return proj;
}

ComplexMatrix projector_onto_span(const ProjectorSet& family,
                                  const Tolerance& tol) {
  if (family.members.empty())
    throw Error(ErrorKind::kEmptyList, "span of an empty family");
  const std::size_t n = family.dim;
  std::vector<ComplexVector> cols;
  cols.reserve(n * family.members.size());
  for (const ComplexMatrix& e : family.members)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexVector c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = e(i, j);
      cols.push_back(std::move(c));
    }

  const double floor = std::sqrt(tol.eps_eq);
  std::vector<ComplexVector> basis;
  for (;;) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const double nj = cols[j].norm();
      if (nj > best_norm) {
        best_norm = nj;
        best = j;
      }
    }
    if (best_norm <= floor || basis.size() == n) break;
    ComplexVector v = cplx(1.0 / best_norm, 0.0) * cols[best];
    for (ComplexVector& c : cols) c = c - inner(v, c) * v;
    basis.push_back(std::move(v));
  }

  ComplexMatrix proj(n, n);
  for (const ComplexVector& v : basis)
    proj = proj + outer(v, v);
  return proj;
}

}  // namespace ovm
