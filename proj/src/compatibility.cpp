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

#include "ovm/compatibility.hpp"

#include <sstream>

namespace ovm {

bool commutes(const ComplexMatrix& a, const ComplexMatrix& b,
              const Tolerance& tol) {
  if (!a.square() || !b.square())
    throw Error(ErrorKind::kNotSquare, "commutator needs square operators");
  if (a.rows() != b.rows()) {
    std::ostringstream msg;
    msg << "operators act on dimensions " << a.rows() << " and " << b.rows();
    throw Error(ErrorKind::kDimMismatch, msg.str());
  }
  return (a * b - b * a).frobenius_norm() <= tol.eps_eq;
}

ComplexMatrix pinch(const SpectralForm& o, const ComplexMatrix& x,
                    const Tolerance& tol) {
  (void)tol;
  if (!x.square() || x.rows() != o.dim()) {
    std::ostringstream msg;
    msg << "operator must be " << o.dim() << "x" << o.dim();
    throw Error(ErrorKind::kDimMismatch, msg.str());
  }
  ComplexMatrix r(o.dim(), o.dim());
  for (std::size_t k = 0; k < o.term_count(); ++k)
    r = r + o.projector(k) * x * o.projector(k);
  return r;
}

CommutationWitness commutation_witness(const SpectralForm& o,
                                       const ComplexMatrix& x,
                                       const Tolerance& tol) {
  CommutationWitness w;
  w.commutes_with_operator = commutes(o.matrix(), x, tol);
  w.equals_pinched = approx_eq(x, pinch(o, x, tol), tol);
  w.commutes_with_projectors = true;
  for (std::size_t k = 0; k < o.term_count(); ++k)
    if (!commutes(o.projector(k), x, tol)) {
      w.commutes_with_projectors = false;
      break;
    }
  return w;
}

bool are_compatible(const SpectralForm& o1, const SpectralForm& o2,
                    const Tolerance& tol) {
  if (o1.dim() != o2.dim()) {
    std::ostringstream msg;
    msg << "observables act on dimensions " << o1.dim() << " and " << o2.dim();
    throw Error(ErrorKind::kDimMismatch, msg.str());
  }
  for (std::size_t m = 0; m < o1.term_count(); ++m)
    for (std::size_t n = 0; n < o2.term_count(); ++n)
      if (!commutes(o1.projector(m), o2.projector(n), tol)) return false;
  return true;
}

CommonRefinement maximal_common_refinement(const SpectralForm& o1,
                                           const SpectralForm& o2,
                                           const Tolerance& tol) {
  if (!are_compatible(o1, o2, tol))
    throw Error(ErrorKind::kNotCompatible,
                "observables are not compatible; no common refinement exists");

  // For commuting families each nonzero product E1_m E2_n is a projector,
  // the family is pairwise orthogonal, and it sums to the identity.
  std::vector<EigenTerm> terms;
  std::vector<std::size_t> onto1, onto2;
  for (std::size_t m = 0; m < o1.term_count(); ++m)
    for (std::size_t n = 0; n < o2.term_count(); ++n) {
      ComplexMatrix prod = o1.projector(m) * o2.projector(n);
      if (prod.frobenius_norm() <= tol.eps_eq) continue;
      EigenTerm t;
      t.value = static_cast<double>(terms.size());
      t.projector = std::move(prod);
      terms.push_back(std::move(t));
      onto1.push_back(m);
      onto2.push_back(n);
    }

  const std::size_t fine = terms.size();
  SpectralForm refined(o1.dim(), std::move(terms), tol);
  return CommonRefinement{
      std::move(refined),
      IndexSurjection(fine, o1.term_count(), std::move(onto1)),
      IndexSurjection(fine, o2.term_count(), std::move(onto2))};
}

MultiRefinement multi_common_refinement(const std::vector<SpectralForm>& os,
                                        const Tolerance& tol) {
  if (os.empty())
    throw Error(ErrorKind::kEmptyList, "no observables to refine");
  for (std::size_t i = 0; i < os.size(); ++i)
    for (std::size_t j = i + 1; j < os.size(); ++j)
      if (!are_compatible(os[i], os[j], tol)) {
        std::ostringstream msg;
        msg << "observables " << i << " and " << j << " are not compatible";
        throw Error(ErrorKind::kNotCompatible, msg.str());
      }

  const std::size_t q = os.size();
  const std::size_t dim = os.front().dim();
  std::vector<EigenTerm> terms;
  std::vector<std::vector<std::size_t>> onto(q);

  // Odometer over index tuples (n_1, ..., n_q), last index fastest, which is
  // the lexicographic order that folding pairwise reproduces.
  std::vector<std::size_t> tuple(q, 0);
  for (;;) {
    ComplexMatrix prod = os[0].projector(tuple[0]);
    for (std::size_t i = 1; i < q; ++i) prod = prod * os[i].projector(tuple[i]);
    if (prod.frobenius_norm() > tol.eps_eq) {
      EigenTerm t;
      t.value = static_cast<double>(terms.size());
      t.projector = std::move(prod);
      terms.push_back(std::move(t));
      for (std::size_t i = 0; i < q; ++i) onto[i].push_back(tuple[i]);
    }
    std::size_t pos = q;
    while (pos-- > 0) {
      if (++tuple[pos] < os[pos].term_count()) break;
      tuple[pos] = 0;
      if (pos == 0) {
        const std::size_t fine = terms.size();
        MultiRefinement result{SpectralForm(dim, std::move(terms), tol), {}};
        result.onto.reserve(q);
        for (std::size_t i = 0; i < q; ++i)
          result.onto.emplace_back(fine, os[i].term_count(),
                                   std::move(onto[i]));
        return result;
      }
    }
  }
}

std::optional<std::pair<IndexSurjection, IndexSurjection>>
is_common_refinement(const SpectralForm& candidate, const SpectralForm& o1,
                     const SpectralForm& o2, const Tolerance& tol) {
  std::optional<IndexSurjection> r1 = is_refinement(candidate, o1, tol);
  if (!r1) return std::nullopt;
  std::optional<IndexSurjection> r2 = is_refinement(candidate, o2, tol);
  if (!r2) return std::nullopt;
  return std::make_pair(std::move(*r1), std::move(*r2));
}

bool verify_refinement_characterization(const SpectralForm& o1,
                                        const SpectralForm& o2,
                                        const Tolerance& tol) {
  const CommonRefinement mcr = maximal_common_refinement(o1, o2, tol);

  CoarseningEnumerator coarsenings(mcr.refined, tol);
  while (std::optional<CoarseningEnumerator::Item> item = coarsenings.next()) {
    const bool common =
        is_common_refinement(item->coarse, o1, o2, tol).has_value();
    const bool refines =
        is_refinement(item->coarse, mcr.refined, tol).has_value();
    if (common != refines) return false;
  }

  const SpectralForm complete = complete_refinement(mcr.refined, tol);
  const bool common =
      is_common_refinement(complete, o1, o2, tol).has_value();
  const bool refines = is_refinement(complete, mcr.refined, tol).has_value();
  return common == refines;
}

}  // namespace ovm
