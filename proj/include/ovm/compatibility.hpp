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

#include <optional>
#include <utility>
#include <vector>

#include "ovm/observables.hpp"

namespace ovm {

// Commutator test on raw operators: ||ab - ba||_F <= eps_eq.
bool commutes(const ComplexMatrix& a, const ComplexMatrix& b,
              const Tolerance& tol = Tolerance());

// Sum of E_k X E_k over the observable's eigenprojectors: the block-diagonal
// part of X relative to the eigenspace decomposition.
ComplexMatrix pinch(const SpectralForm& o, const ComplexMatrix& x,
                    const Tolerance& tol = Tolerance());

// Three equivalent readings of "X commutes with the observable". For any
// Hermitian-observable/operator pair all three agree; the witness records
// each verdict separately so the equivalence itself can be audited.
struct CommutationWitness {
  bool commutes_with_operator = false;   // [O, X] = 0
  bool equals_pinched = false;           // X = sum E_k X E_k
  bool commutes_with_projectors = false; // [E_k, X] = 0 for every k

  bool all_agree() const {
    return commutes_with_operator == equals_pinched &&
           equals_pinched == commutes_with_projectors;
  }
  bool all_hold() const {
    return commutes_with_operator && equals_pinched &&
           commutes_with_projectors;
  }
};

CommutationWitness commutation_witness(const SpectralForm& o,
                                       const ComplexMatrix& x,
                                       const Tolerance& tol = Tolerance());

// Two observables are compatible iff every eigenprojector of one commutes
// with every eigenprojector of the other (equivalently, the operators
// commute).
bool are_compatible(const SpectralForm& o1, const SpectralForm& o2,
                    const Tolerance& tol = Tolerance());

// Common refinement of two compatible observables: the term at fine index k
// coarsens onto o1 via onto_first and onto o2 via onto_second.
struct CommonRefinement {
  SpectralForm refined;
  IndexSurjection onto_first;
  IndexSurjection onto_second;
};

// Maximal common refinement: one term per nonzero product E1_m E2_n, scanned
// in lexicographic (m, n) order and labelled 0, 1, 2, ... Every common
// refinement of the pair coarsens from this one. Throws NotCompatible when
// the observables do not commute.
CommonRefinement maximal_common_refinement(const SpectralForm& o1,
                                           const SpectralForm& o2,
                                           const Tolerance& tol = Tolerance());

struct MultiRefinement {
  SpectralForm refined;
  std::vector<IndexSurjection> onto;  // one surjection per input observable
};

// Maximal common refinement of any number of pairwise compatible
// observables: nonzero products over index tuples in lexicographic order.
// Folding maximal_common_refinement pairwise gives the same observable.
MultiRefinement multi_common_refinement(const std::vector<SpectralForm>& os,
                                        const Tolerance& tol = Tolerance());

// Is `candidate` a common refinement of both observables? Returns the two
// witnessing surjections, or nullopt.
std::optional<std::pair<IndexSurjection, IndexSurjection>>
is_common_refinement(const SpectralForm& candidate, const SpectralForm& o1,
                     const SpectralForm& o2, const Tolerance& tol = Tolerance());

// Audits, over every coarsening of the maximal common refinement plus its
// complete refinement, the biconditional "candidate is a common refinement
// of the pair iff candidate refines the maximal common refinement". Returns
// true when no counterexample is found. Both truth values occur: proper
// coarsenings fail both sides, while the identity coarsening and the
// complete refinement satisfy both.
bool verify_refinement_characterization(const SpectralForm& o1,
                                        const SpectralForm& o2,
                                        const Tolerance& tol = Tolerance());

}  // namespace ovm
