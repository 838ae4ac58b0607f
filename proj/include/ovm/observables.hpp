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

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ovm/linalg.hpp"

namespace ovm {

// A discrete observable in spectral form: strictly increasing eigenvalues
// o_0 < o_1 < ... paired with nonzero orthogonal projectors that sum to the
// identity. This normal form is unique for a Hermitian operator, so index k
// is a stable name for "the outcome with the k-th smallest value".
//
// The constructor enforces the whole invariant (within eps_eq): every
// projector Hermitian idempotent and nonzero, pairwise products zero,
// completeness, values strictly increasing. Nothing else in the library
// re-checks these, so all observables must enter through here, from_matrix,
// or an operation that preserves the invariant.
class SpectralForm {
 public:
  SpectralForm(std::size_t dim, std::vector<EigenTerm> terms,
               const Tolerance& tol = Tolerance());

  std::size_t dim() const { return dim_; }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<EigenTerm>& terms() const { return terms_; }
  double value(std::size_t k) const { return terms_.at(k).value; }
  const ComplexMatrix& projector(std::size_t k) const {
    return terms_.at(k).projector;
  }

  // Reassembled operator sum(value_k * projector_k).
  ComplexMatrix matrix() const;

 private:
  std::size_t dim_;
  std::vector<EigenTerm> terms_;
};

// Equal term counts and pairwise approx_eq of the projector lists (both
// lists are value-sorted). Eigenvalues are deliberately not compared: two
// observables that differ only in outcome labels measure the same thing.
bool structural_eq(const SpectralForm& a, const SpectralForm& b,
                   const Tolerance& tol = Tolerance());

// Surjection from fine outcome indices {0..fine_count-1} onto coarse indices
// {0..coarse_count-1}. image[k] is the coarse index fine index k lands on.
struct IndexSurjection {
  std::size_t fine_count = 0;
  std::size_t coarse_count = 0;
  std::vector<std::size_t> image;

  IndexSurjection() = default;
  IndexSurjection(std::size_t fine, std::size_t coarse,
                  std::vector<std::size_t> img);

  static IndexSurjection identity(std::size_t n);

  // Fine indices grouped by coarse index, each class ascending.
  std::vector<std::vector<std::size_t>> preimage_classes() const;
};

// outer after inner: fine -> mid -> coarse.
IndexSurjection compose(const IndexSurjection& outer,
                        const IndexSurjection& inner);

// Partition of {0..element_count-1} into disjoint nonempty classes covering
// everything. Classes are kept sorted internally and ordered by smallest
// element, the canonical form produced by the enumerator.
struct Partition {
  std::size_t element_count = 0;
  std::vector<std::vector<std::size_t>> classes;

  Partition() = default;
  Partition(std::size_t elements, std::vector<std::vector<std::size_t>> cls);

  // Surjection sending element to the index of its class.
  IndexSurjection to_surjection() const;
};

// Unique spectral form of a Hermitian matrix, eigenvalues clustered per the
// tolerance model.
SpectralForm from_matrix(const ComplexMatrix& m,
                         const Tolerance& tol = Tolerance());

// Coarsen by a real function on outcome values: outcomes with equal images
// merge, projectors add, and the returned surjection records where each fine
// index went. A non-finite image value is an error.
std::pair<SpectralForm, IndexSurjection> coarsen_by_function(
    const SpectralForm& o, const std::function<double(double)>& f,
    const Tolerance& tol = Tolerance());

// Coarsen by an explicit index surjection, assigning the given (pairwise
// distinct) values to the coarse outcomes before sorting into normal form.
SpectralForm coarsen_by_map(const SpectralForm& o, const IndexSurjection& s,
                            const std::vector<double>& coarse_values,
                            const Tolerance& tol = Tolerance());

// Decides whether `fine` refines `coarse`: every coarse projector must be a
// sum of fine ones. Returns the witnessing surjection, or nullopt. Values
// play no role; only the projector families matter.
std::optional<IndexSurjection> is_refinement(const SpectralForm& fine,
                                             const SpectralForm& coarse,
                                             const Tolerance& tol = Tolerance());

// Splits every eigenspace into rank-one projectors (Gram-Schmidt with
// largest-column pivoting), labelling the dim() outcomes 0, 1, 2, ... in
// order. The result refines the input and admits no proper refinement.
SpectralForm complete_refinement(const SpectralForm& o,
                                 const Tolerance& tol = Tolerance());

// All coarsenings of an observable, one per partition of its index set, in
// lexicographic restricted-growth-string order. The count is the Bell number
// of the term count, so results are pulled one at a time rather than
// materialized; construction refuses term counts above 12.
class CoarseningEnumerator {
 public:
  struct Item {
    Partition partition;
    SpectralForm coarse;
  };

  CoarseningEnumerator(const SpectralForm& o, const Tolerance& tol = Tolerance());

  // Next coarsening, or nullopt when exhausted.
  std::optional<Item> next();

 private:
  SpectralForm o_;  // owned copy, so temporaries are safe to enumerate
  Tolerance tol_;
  std::vector<std::size_t> rgs_;
  bool done_ = false;
  bool first_ = true;
  bool advance();
};

}  // namespace ovm
