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

#include "ovm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ovm {

SpectralForm::SpectralForm(std::size_t dim, std::vector<EigenTerm> terms,
                           const Tolerance& tol)
    : dim_(dim), terms_(std::move(terms)) {
  tol.validate();
  if (dim_ == 0)
    throw Error(ErrorKind::kInvalidObservable, "dimension must be positive");
  if (terms_.empty())
    throw Error(ErrorKind::kInvalidObservable, "spectral form has no terms");

  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const ComplexMatrix& e = terms_[k].projector;
    if (e.rows() != dim_ || e.cols() != dim_) {
      std::ostringstream msg;
      msg << "projector " << k << " is " << e.rows() << "x" << e.cols()
          << ", expected " << dim_ << "x" << dim_;
      throw Error(ErrorKind::kInvalidObservable, msg.str());
    }
    if (!e.all_finite())
      throw Error(ErrorKind::kNonFinite, "projector has non-finite entries");
    if (!std::isfinite(terms_[k].value))
      throw Error(ErrorKind::kNonFinite, "eigenvalue is not finite");
    if (!is_projector(e, tol)) {
      std::ostringstream msg;
      msg << "term " << k << " is not a projector within eps_eq";
      throw Error(ErrorKind::kInvalidObservable, msg.str());
    }
    // A projector's squared Frobenius norm is its rank; anything below 1/2
    // is the zero operator, which the normal form forbids.
    if (e.frobenius_norm() < 0.5) {
      std::ostringstream msg;
      msg << "term " << k << " has zero projector";
      throw Error(ErrorKind::kInvalidObservable, msg.str());
    }
  }

  for (std::size_t k = 0; k + 1 < terms_.size(); ++k) {
    if (!(terms_[k].value < terms_[k + 1].value)) {
      std::ostringstream msg;
      msg << "eigenvalues not strictly increasing at index " << k;
      throw Error(ErrorKind::kInvalidObservable, msg.str());
    }
  }

  for (std::size_t i = 0; i < terms_.size(); ++i)
    for (std::size_t j = i + 1; j < terms_.size(); ++j) {
      const double off =
          (terms_[i].projector * terms_[j].projector).frobenius_norm();
      if (off > tol.eps_eq) {
        std::ostringstream msg;
        msg << "projectors " << i << " and " << j
            << " are not orthogonal (product norm " << off << ")";
        throw Error(ErrorKind::kInvalidObservable, msg.str());
      }
    }

  ComplexMatrix sum(dim_, dim_);
  for (const EigenTerm& t : terms_) sum = sum + t.projector;
  if (!approx_eq(sum, ComplexMatrix::identity(dim_), tol))
    throw Error(ErrorKind::kInvalidObservable,
                "projectors do not sum to the identity");
}

ComplexMatrix SpectralForm::matrix() const {
  ComplexMatrix m(dim_, dim_);
  for (const EigenTerm& t : terms_)
    m = m + cplx(t.value, 0.0) * t.projector;
  return m;
}

bool structural_eq(const SpectralForm& a, const SpectralForm& b,
                   const Tolerance& tol) {
  if (a.dim() != b.dim() || a.term_count() != b.term_count()) return false;
  for (std::size_t k = 0; k < a.term_count(); ++k)
    if (!approx_eq(a.projector(k), b.projector(k), tol)) return false;
  return true;
}

IndexSurjection::IndexSurjection(std::size_t fine, std::size_t coarse,
                                 std::vector<std::size_t> img)
    : fine_count(fine), coarse_count(coarse), image(std::move(img)) {
  if (image.size() != fine_count)
    throw Error(ErrorKind::kInvalidSurjection,
                "image length differs from fine count");
  if (coarse_count == 0 || fine_count == 0)
    throw Error(ErrorKind::kInvalidSurjection, "index sets must be nonempty");
  std::vector<bool> hit(coarse_count, false);
  for (std::size_t k = 0; k < fine_count; ++k) {
    if (image[k] >= coarse_count) {
      std::ostringstream msg;
      msg << "image[" << k << "] = " << image[k] << " out of range "
          << coarse_count;
      throw Error(ErrorKind::kInvalidSurjection, msg.str());
    }
    hit[image[k]] = true;
  }
  for (std::size_t l = 0; l < coarse_count; ++l)
    if (!hit[l]) {
      std::ostringstream msg;
      msg << "coarse index " << l << " has empty preimage";
      throw Error(ErrorKind::kInvalidSurjection, msg.str());
    }
}

IndexSurjection IndexSurjection::identity(std::size_t n) {
  std::vector<std::size_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = i;
  return IndexSurjection(n, n, std::move(img));
}

std::vector<std::vector<std::size_t>> IndexSurjection::preimage_classes()
    const {
  std::vector<std::vector<std::size_t>> classes(coarse_count);
  for (std::size_t k = 0; k < fine_count; ++k) classes[image[k]].push_back(k);
  return classes;
}

IndexSurjection compose(const IndexSurjection& outer,
                        const IndexSurjection& inner) {
  if (inner.coarse_count != outer.fine_count)
    throw Error(ErrorKind::kCountMismatch,
                "inner coarse count differs from outer fine count");
  std::vector<std::size_t> img(inner.fine_count);
  for (std::size_t k = 0; k < inner.fine_count; ++k)
    img[k] = outer.image[inner.image[k]];
  return IndexSurjection(inner.fine_count, outer.coarse_count, std::move(img));
}

Partition::Partition(std::size_t elements,
                     std::vector<std::vector<std::size_t>> cls)
    : element_count(elements), classes(std::move(cls)) {
  std::vector<bool> seen(element_count, false);
  std::size_t covered = 0;
  for (auto& c : classes) {
    if (c.empty())
      throw Error(ErrorKind::kInvalidPartition, "empty class");
    std::sort(c.begin(), c.end());
    for (std::size_t e : c) {
      if (e >= element_count || seen[e])
        throw Error(ErrorKind::kInvalidPartition,
                    "classes must disjointly cover the index set");
      seen[e] = true;
      ++covered;
    }
  }
  if (covered != element_count)
    throw Error(ErrorKind::kInvalidPartition,
                "classes must disjointly cover the index set");
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

IndexSurjection Partition::to_surjection() const {
  std::vector<std::size_t> img(element_count);
  for (std::size_t l = 0; l < classes.size(); ++l)
    for (std::size_t e : classes[l]) img[e] = l;
  return IndexSurjection(element_count, classes.size(), std::move(img));
}

SpectralForm from_matrix(const ComplexMatrix& m, const Tolerance& tol) {
  std::vector<EigenTerm> terms = hermitian_eigendecomposition(m, tol);
  return SpectralForm(m.rows(), std::move(terms), tol);
}

std::pair<SpectralForm, IndexSurjection> coarsen_by_function(
    const SpectralForm& o, const std::function<double(double)>& f,
    const Tolerance& tol) {
  const std::size_t n = o.term_count();
  std::vector<double> images(n);
  for (std::size_t k = 0; k < n; ++k) {
    images[k] = f(o.value(k));
    if (!std::isfinite(images[k])) {
      std::ostringstream msg;
      msg << "f(" << o.value(k) << ") is not finite";
      throw Error(ErrorKind::kNonFiniteImage, msg.str());
    }
  }

  // Map distinct image values (exact comparison; the grouping is the
  // function's fibers, not a tolerance question) to coarse indices in
  // ascending value order.
  std::map<double, std::size_t> index_of;
  for (double v : images) index_of.emplace(v, 0);
  std::size_t next = 0;
  for (auto& [v, idx] : index_of) idx = next++;

  const std::size_t coarse_n = index_of.size();
  std::vector<std::size_t> img(n);
  std::vector<EigenTerm> terms(coarse_n);
  for (auto& [v, idx] : index_of) {
    terms[idx].value = v;
    terms[idx].projector = ComplexMatrix(o.dim(), o.dim());
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t l = index_of[images[k]];
    img[k] = l;
    terms[l].projector = terms[l].projector + o.projector(k);
  }
  return {SpectralForm(o.dim(), std::move(terms), tol),
          IndexSurjection(n, coarse_n, std::move(img))};
}

SpectralForm coarsen_by_map(const SpectralForm& o, const IndexSurjection& s,
                            const std::vector<double>& coarse_values,
                            const Tolerance& tol) {
  if (s.fine_count != o.term_count()) {
    std::ostringstream msg;
    msg << "surjection covers " << s.fine_count << " fine indices, observable"
        << " has " << o.term_count();
    throw Error(ErrorKind::kCountMismatch, msg.str());
  }
  if (coarse_values.size() != s.coarse_count) {
    std::ostringstream msg;
    msg << coarse_values.size() << " coarse values for " << s.coarse_count
        << " coarse indices";
    throw Error(ErrorKind::kCountMismatch, msg.str());
  }
  for (std::size_t i = 0; i < coarse_values.size(); ++i) {
    if (!std::isfinite(coarse_values[i]))
      throw Error(ErrorKind::kNonFinite, "coarse value is not finite");
    for (std::size_t j = i + 1; j < coarse_values.size(); ++j)
      if (coarse_values[i] == coarse_values[j]) {
        std::ostringstream msg;
        msg << "coarse values at " << i << " and " << j << " coincide";
        throw Error(ErrorKind::kDuplicateCoarseValues, msg.str());
      }
  }

  std::vector<EigenTerm> terms(s.coarse_count);
  for (std::size_t l = 0; l < s.coarse_count; ++l) {
    terms[l].value = coarse_values[l];
    terms[l].projector = ComplexMatrix(o.dim(), o.dim());
  }
  for (std::size_t k = 0; k < s.fine_count; ++k)
    terms[s.image[k]].projector =
        terms[s.image[k]].projector + o.projector(k);
  std::sort(terms.begin(), terms.end(),
            [](const EigenTerm& a, const EigenTerm& b) {
              return a.value < b.value;
            });
  return SpectralForm(o.dim(), std::move(terms), tol);
}

std::optional<IndexSurjection> is_refinement(const SpectralForm& fine,
                                             const SpectralForm& coarse,
                                             const Tolerance& tol) {
  if (fine.dim() != coarse.dim()) {
    std::ostringstream msg;
    msg << "dimensions " << fine.dim() << " and " << coarse.dim() << " differ";
    throw Error(ErrorKind::kDimMismatch, msg.str());
  }
  if (fine.term_count() < coarse.term_count()) return std::nullopt;

  // Each fine projector must live inside exactly one coarse eigenspace.
  std::vector<std::size_t> img(fine.term_count());
  for (std::size_t k = 0; k < fine.term_count(); ++k) {
    std::size_t matches = 0;
    for (std::size_t l = 0; l < coarse.term_count(); ++l) {
      const ComplexMatrix prod = fine.projector(k) * coarse.projector(l);
      if ((prod - fine.projector(k)).frobenius_norm() <= tol.eps_eq) {
        img[k] = l;
        ++matches;
      }
    }
    if (matches != 1) return std::nullopt;
  }

  // And each coarse projector must be exactly the sum over its preimage.
  std::vector<ComplexMatrix> sums(
      coarse.term_count(), ComplexMatrix(fine.dim(), fine.dim()));
  std::vector<bool> hit(coarse.term_count(), false);
  for (std::size_t k = 0; k < fine.term_count(); ++k) {
    sums[img[k]] = sums[img[k]] + fine.projector(k);
    hit[img[k]] = true;
  }
  for (std::size_t l = 0; l < coarse.term_count(); ++l) {
    if (!hit[l]) return std::nullopt;
    if (!approx_eq(sums[l], coarse.projector(l), tol)) return std::nullopt;
  }
  return IndexSurjection(fine.term_count(), coarse.term_count(),
                         std::move(img));
}

namespace {

// Orthonormal basis of a projector's range by modified Gram-Schmidt over its
// columns, pivoting on the largest remaining column.
std::vector<ComplexVector> range_basis(const ComplexMatrix& e,
                                       const Tolerance& tol) {
  const std::size_t n = e.rows();
  const std::size_t rank =
      static_cast<std::size_t>(std::llround(e.trace().real()));
  std::vector<ComplexVector> cols(n, ComplexVector(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = e(i, j);

  std::vector<ComplexVector> basis;
  basis.reserve(rank);
  const double floor = std::sqrt(tol.eps_eq);
  while (basis.size() < rank) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double nj = cols[j].norm();
      if (nj > best_norm) {
        best_norm = nj;
        best = j;
      }
    }
    if (best_norm <= floor)
      throw Error(ErrorKind::kNotAProjector,
                  "projector rank below its trace; cannot split eigenspace");
    ComplexVector v = cplx(1.0 / best_norm, 0.0) * cols[best];
    for (std::size_t j = 0; j < n; ++j)
      cols[j] = cols[j] - inner(v, cols[j]) * v;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

SpectralForm complete_refinement(const SpectralForm& o, const Tolerance& tol) {
  std::vector<EigenTerm> terms;
  terms.reserve(o.dim());
  double next_value = 0.0;
  for (std::size_t k = 0; k < o.term_count(); ++k) {
    for (const ComplexVector& v : range_basis(o.projector(k), tol)) {
      EigenTerm t;
      t.value = next_value;
      next_value += 1.0;
      t.projector = outer(v, v);
      terms.push_back(std::move(t));
    }
  }
  return SpectralForm(o.dim(), std::move(terms), tol);
}

CoarseningEnumerator::CoarseningEnumerator(const SpectralForm& o,
                                           const Tolerance& tol)
    : o_(o), tol_(tol), rgs_(o.term_count(), 0) {
  if (o.term_count() > 12) {
    std::ostringstream msg;
    msg << "refusing to enumerate partitions of " << o.term_count()
        << " outcomes (limit 12)";
    throw Error(ErrorKind::kTooManyTerms, msg.str());
  }
}

// Lexicographic successor among restricted growth strings: find the
// rightmost position that may still grow (a[i] <= max of the prefix),
// bump it, reset the suffix to zero.
bool CoarseningEnumerator::advance() {
  const std::size_t n = rgs_.size();
  for (std::size_t i = n; i-- > 1;) {
    std::size_t prefix_max = 0;
    for (std::size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs_[j]);
    if (rgs_[i] <= prefix_max) {
      ++rgs_[i];
      for (std::size_t j = i + 1; j < n; ++j) rgs_[j] = 0;
      return true;
    }
  }
  return false;
}

std::optional<CoarseningEnumerator::Item> CoarseningEnumerator::next() {
  if (done_) return std::nullopt;
  if (!first_ && !advance()) {
    done_ = true;
    return std::nullopt;
  }
  first_ = false;

  std::size_t class_count = 0;
  for (std::size_t label : rgs_) class_count = std::max(class_count, label + 1);
  std::vector<std::vector<std::size_t>> classes(class_count);
  for (std::size_t k = 0; k < rgs_.size(); ++k) classes[rgs_[k]].push_back(k);

  // Growth strings label classes by first appearance, so class l already
  // contains the l-th smallest leading element; canonical coarse values are
  // 0, 1, 2, ... in that order.
  std::vector<EigenTerm> terms(class_count);
  for (std::size_t l = 0; l < class_count; ++l) {
    terms[l].value = static_cast<double>(l);
    terms[l].projector = ComplexMatrix(o_.dim(), o_.dim());
    for (std::size_t k : classes[l])
      terms[l].projector = terms[l].projector + o_.projector(k);
  }

  Item item{Partition(rgs_.size(), std::move(classes)),
            SpectralForm(o_.dim(), std::move(terms), tol_)};
  return item;
}

}  // namespace ovm
