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

#include <vector>

#include "ovm/linalg.hpp"

namespace ovm {

// A finite family of projectors on one space. The constructor checks each
// member is a projector within eps_eq and that dimensions agree.
struct ProjectorSet {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> members;

  ProjectorSet() = default;
  ProjectorSet(std::size_t dim, std::vector<ComplexMatrix> members,
               const Tolerance& tol = Tolerance());
};

// Range inclusion: E <= F iff E F = E. Both arguments must be projectors.
bool leq(const ComplexMatrix& e, const ComplexMatrix& f,
         const Tolerance& tol = Tolerance());

// Greatest lower bound of two commuting projectors, namely their product.
// Throws NotCommuting when the commutator exceeds eps_eq.
ComplexMatrix glb_commuting(const ComplexMatrix& e, const ComplexMatrix& f,
                            const Tolerance& tol = Tolerance());

// Least upper bound of a pairwise orthogonal family, namely its sum. Throws
// NotOrthogonal when some pairwise product exceeds eps_eq, EmptyList on an
// empty family.
ComplexMatrix lub_orthogonal(const ProjectorSet& family,
                             const Tolerance& tol = Tolerance());

// If E F = 0 and G <= E, does G F = 0 follow? Returns true vacuously when
// the hypotheses fail, so a sound implementation never returns false.
bool orthogonality_propagates(const ComplexMatrix& e, const ComplexMatrix& f,
                              const ComplexMatrix& g,
                              const Tolerance& tol = Tolerance());

// Given pairwise orthogonal families {G_l} and {E_k} and an assignment
// l -> k with G_l <= E_{assignment[l]}, checks sum(G) <= sum(E). The
// preconditions are enforced (PreconditionViolated names the one that
// failed); the conclusion is the returned verdict, and soundness means it is
// always true when the preconditions hold.
bool sum_dominates(const ProjectorSet& gs, const ProjectorSet& es,
                   const std::vector<std::size_t>& assignment,
                   const Tolerance& tol = Tolerance());

// Oracle for glb: projector onto range(E) intersect range(F), computed from
// the kernel of (I - E) + (I - F). Works for non-commuting pairs too, which
// is what makes it an independent check on glb_commuting.
ComplexMatrix brute_force_glb(const ComplexMatrix& e, const ComplexMatrix& f,
                              const Tolerance& tol = Tolerance());

// Oracle for lub: projector onto the span of the union of the ranges, by
// Gram-Schmidt over all member columns with an eps-scaled rank cutoff.
ComplexMatrix projector_onto_span(const ProjectorSet& family,
                                  const Tolerance& tol = Tolerance());

}  // namespace ovm
