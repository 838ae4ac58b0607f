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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "ovm/observables.hpp"
#include "ovm/rng.hpp"
#include "ovm/verify.hpp"
#include "test_util.hpp"

using namespace ovm;
using namespace test_util;

namespace {

std::size_t rank_of(const ComplexMatrix& p) {
  return static_cast<std::size_t>(std::llround(p.trace().real()));
}

}  // namespace

TEST_SUITE("observables") {

TEST_CASE("spectral form construction rejects broken inputs") {
  const ComplexMatrix p0 = basis_projector(2, {0});
  const ComplexMatrix p1 = basis_projector(2, {1});

  // Values must strictly increase.
  CHECK(error_kind_of([&] {
          SpectralForm(2, {{1.0, p0}, {1.0, p1}});
        }) == ErrorKind::kInvalidObservable);
  // Zero projectors are excluded.
  CHECK(error_kind_of([&] {
          SpectralForm(2, {{0.0, ComplexMatrix(2, 2)},
                           {1.0, ComplexMatrix::identity(2)}});
        }) == ErrorKind::kInvalidObservable);
  // Projectors must be orthogonal.
  CHECK(error_kind_of([&] {
          SpectralForm(2, {{0.0, p0}, {1.0, mat({{0.5, 0.5}, {0.5, 0.5}})}});
        }) == ErrorKind::kInvalidObservable);
  // Projectors must sum to the identity.
  CHECK(error_kind_of([&] { SpectralForm(2, {{1.0, p0}}); }) ==
        ErrorKind::kInvalidObservable);
  // Valid two-level form passes.
  CHECK(error_kind_of([&] {
          SpectralForm(2, {{-1.0, p1}, {1.0, p0}});
        }) == std::nullopt);
}

TEST_CASE("from_matrix on fixed matrices") {
  const SpectralForm o = from_matrix(diag({-1, 1}));
  REQUIRE(o.term_count() == 2);
  CHECK(std::fabs(o.value(0) + 1.0) < 1e-12);
  CHECK(std::fabs(o.value(1) - 1.0) < 1e-12);
  CHECK(approx_eq(o.projector(0), basis_projector(2, {0})));
  CHECK(approx_eq(o.projector(1), basis_projector(2, {1})));

  const SpectralForm one = from_matrix(ComplexMatrix::identity(3));
  REQUIRE(one.term_count() == 1);
  CHECK(approx_eq(one.projector(0), ComplexMatrix::identity(3)));

  const SpectralForm deg = from_matrix(diag({2, 2, 5}));
  REQUIRE(deg.term_count() == 2);
  CHECK(rank_of(deg.projector(0)) == 2);
  CHECK(rank_of(deg.projector(1)) == 1);
  CHECK(approx_eq(deg.projector(0), basis_projector(3, {0, 1})));
  CHECK(approx_eq(deg.projector(1), basis_projector(3, {2})));
  CHECK(approx_eq(deg.matrix(), diag({2, 2, 5})));
}

TEST_CASE("structural equality ignores eigenvalue labels") {
  const ComplexMatrix p0 = basis_projector(2, {0});
  const ComplexMatrix p1 = basis_projector(2, {1});
  const SpectralForm a(2, {{-1.0, p1}, {1.0, p0}});
  const SpectralForm b(2, {{10.0, p1}, {20.0, p0}});
  const SpectralForm c(2, {{10.0, p0}, {20.0, p1}});
  CHECK(structural_eq(a, b));
  CHECK_FALSE(structural_eq(a, c));  // same projectors, opposite order
}

TEST_CASE("index surjection and partition validation") {
  CHECK(error_kind_of([] { IndexSurjection(3, 2, {0, 0, 0}); }) ==
        ErrorKind::kInvalidSurjection);  // coarse index 1 has no preimage
  CHECK(error_kind_of([] { IndexSurjection(3, 2, {0, 2, 1}); }) ==
        ErrorKind::kInvalidSurjection);  // out of range
  CHECK(error_kind_of([] { IndexSurjection(3, 2, {0, 1}); }) ==
        ErrorKind::kInvalidSurjection);  // wrong length

  const IndexSurjection s(4, 2, {1, 0, 1, 1});
  const auto classes = s.preimage_classes();
  REQUIRE(classes.size() == 2);
  CHECK(classes[0] == std::vector<std::size_t>{1});
  CHECK(classes[1] == std::vector<std::size_t>{0, 2, 3});

  CHECK(error_kind_of([] { Partition(3, {{0, 1}, {1, 2}}); }) ==
        ErrorKind::kInvalidPartition);  // overlap
  CHECK(error_kind_of([] { Partition(3, {{0, 1}}); }) ==
        ErrorKind::kInvalidPartition);  // element 2 missing

  // Classes are canonically ordered by smallest element; the surjection
  // labels them in that order.
  const Partition p(4, {{2, 3}, {0, 1}});
  const IndexSurjection ps = p.to_surjection();
  CHECK(ps.image == std::vector<std::size_t>{0, 0, 1, 1});

  const IndexSurjection outer(2, 1, {0, 0});
  const IndexSurjection composed = compose(outer, s);
  CHECK(composed.image == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(composed.coarse_count == 1);
}

TEST_CASE("coarsen_by_function squares a symmetric spectrum") {
  const SpectralForm o = from_matrix(diag({-1, 0, 1}));
  const auto [coarse, s] =
      coarsen_by_function(o, [](double x) { return x * x; });
  REQUIRE(coarse.term_count() == 2);
  CHECK(coarse.value(0) == doctest::Approx(0.0));
  CHECK(coarse.value(1) == doctest::Approx(1.0));
  CHECK(approx_eq(coarse.projector(0), basis_projector(3, {1})));
  CHECK(approx_eq(coarse.projector(1), basis_projector(3, {0, 2})));
  CHECK(s.image == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("coarsen_by_function identity and constant maps") {
  const SpectralForm o = from_matrix(diag({2, 2, 5}));

  const auto [same, id] = coarsen_by_function(o, [](double x) { return x; });
  CHECK(structural_eq(same, o));
  CHECK(same.value(0) == o.value(0));
  CHECK(id.image == std::vector<std::size_t>{0, 1});

  const auto [total, all] =
      coarsen_by_function(o, [](double) { return 7.0; });
  REQUIRE(total.term_count() == 1);
  CHECK(total.value(0) == doctest::Approx(7.0));
  CHECK(approx_eq(total.projector(0), ComplexMatrix::identity(3)));
  CHECK(all.image == std::vector<std::size_t>{0, 0});

  CHECK(error_kind_of([&] {
          coarsen_by_function(from_matrix(diag({0, 1})),
                              [](double x) { return 1.0 / x; });
        }) == ErrorKind::kNonFiniteImage);
}

TEST_CASE("coarsen_by_map merges projectors and re-sorts by value") {
  const SpectralForm o = from_matrix(diag({1, 2, 3}));

  const SpectralForm same = coarsen_by_map(
      o, IndexSurjection::identity(3), {1.0, 2.0, 3.0});
  CHECK(structural_eq(same, o));

  const SpectralForm merged =
      coarsen_by_map(o, IndexSurjection(3, 2, {0, 0, 1}), {10.0, 20.0});
  REQUIRE(merged.term_count() == 2);
  CHECK(merged.value(0) == doctest::Approx(10.0));
  CHECK(approx_eq(merged.projector(0), basis_projector(3, {0, 1})));
  CHECK(approx_eq(merged.projector(1), basis_projector(3, {2})));

  // Coarse values in decreasing order force a re-sort of the output.
  const SpectralForm swapped =
      coarsen_by_map(o, IndexSurjection(3, 2, {0, 0, 1}), {20.0, 10.0});
  CHECK(swapped.value(0) == doctest::Approx(10.0));
  CHECK(approx_eq(swapped.projector(0), basis_projector(3, {2})));
  CHECK(approx_eq(swapped.projector(1), basis_projector(3, {0, 1})));

  CHECK(error_kind_of([&] {
          coarsen_by_map(o, IndexSurjection(3, 2, {0, 0, 1}), {5.0, 5.0});
        }) == ErrorKind::kDuplicateCoarseValues);
  CHECK(error_kind_of([&] {
          coarsen_by_map(o, IndexSurjection(4, 2, {0, 0, 1, 1}),
                         {1.0, 2.0});
        }) == ErrorKind::kCountMismatch);
}

TEST_CASE("coarsening a complete refinement recovers the block form") {
  const SpectralForm zi = from_matrix(diag({1, 1, -1, -1}));
  const SpectralForm fine = complete_refinement(zi);
  REQUIRE(fine.term_count() == 4);
  // Terms 0,1 split the value -1 eigenspace, terms 2,3 the value +1 one.
  const SpectralForm back = coarsen_by_map(
      fine, IndexSurjection(4, 2, {0, 0, 1, 1}), {-1.0, 1.0});
  CHECK(structural_eq(back, zi));
  CHECK(approx_eq(back.matrix(), zi.matrix()));
}

TEST_CASE("is_refinement on fixed pairs") {
  const SpectralForm o = from_matrix(diag({2, 2, 5}));
  const auto self = is_refinement(o, o);
  REQUIRE(self.has_value());
  CHECK(self->image == std::vector<std::size_t>{0, 1});

  const SpectralForm zi = from_matrix(diag({1, 1, -1, -1}));
  const SpectralForm fine = complete_refinement(zi);
  const auto merged = is_refinement(fine, zi);
  REQUIRE(merged.has_value());
  CHECK(merged->image == std::vector<std::size_t>{0, 0, 1, 1});

  const SpectralForm z = from_matrix(pauli_z());
  const SpectralForm x = from_matrix(pauli_x());
  CHECK_FALSE(is_refinement(z, x).has_value());

  CHECK(error_kind_of([&] { is_refinement(z, zi); }) ==
        ErrorKind::kDimMismatch);
}

TEST_CASE("refinement composes transitively") {
  const SpectralForm a = from_matrix(diag({0, 1, 2, 3}));
  const SpectralForm b =
      coarsen_by_map(a, IndexSurjection(4, 2, {0, 0, 1, 1}), {0.0, 1.0});
  const SpectralForm c =
      coarsen_by_map(b, IndexSurjection(2, 1, {0, 0}), {0.0});

  const auto ab = is_refinement(a, b);
  const auto bc = is_refinement(b, c);
  const auto ac = is_refinement(a, c);
  REQUIRE(ab.has_value());
  REQUIRE(bc.has_value());
  REQUIRE(ac.has_value());
  CHECK(ac->image == compose(*bc, *ab).image);
}

TEST_CASE("complete_refinement splits every eigenspace into lines") {
  const SpectralForm z = from_matrix(pauli_z());
  const SpectralForm same = complete_refinement(z);
  CHECK(structural_eq(same, z));  // already rank 1 everywhere

  const SpectralForm planes = complete_refinement(
      from_matrix(ComplexMatrix::identity(2)));
  REQUIRE(planes.term_count() == 2);
  CHECK(rank_of(planes.projector(0)) == 1);
  CHECK(rank_of(planes.projector(1)) == 1);
  CHECK(approx_eq(planes.projector(0) + planes.projector(1),
                  ComplexMatrix::identity(2)));

  const SpectralForm deg = from_matrix(diag({2, 2, 5}));
  const SpectralForm split = complete_refinement(deg);
  REQUIRE(split.term_count() == 3);
  const auto onto = is_refinement(split, deg);
  REQUIRE(onto.has_value());
  ComplexMatrix first_two(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(rank_of(split.projector(k)) == 1);
    if (onto->image[k] == 0) first_two = first_two + split.projector(k);
  }
  CHECK(approx_eq(first_two, basis_projector(3, {0, 1})));
}

TEST_CASE("complete_refinement always refines its input") {
  Rng rng(21);
  for (std::size_t dim = 2; dim <= 5; ++dim) {
    for (int rep = 0; rep < 5; ++rep) {
      const SpectralForm o = random_observable(dim, dim, rng);
      const SpectralForm fine = complete_refinement(o);
      CHECK(fine.term_count() == dim);
      CHECK(is_refinement(fine, o).has_value());
    }
  }
}

TEST_CASE("coarsening enumeration counts follow Bell numbers") {
  auto count_for = [](const ComplexMatrix& m) {
    CoarseningEnumerator en(from_matrix(m));
    std::size_t n = 0;
    while (en.next()) ++n;
    return n;
  };
  CHECK(count_for(ComplexMatrix::identity(2)) == 1);
  CHECK(count_for(diag({0, 1, 2})) == 5);
  CHECK(count_for(diag({0, 1, 2, 3})) == 15);
}

TEST_CASE("enumerated coarsenings are valid and recover their surjection") {
  const SpectralForm o = from_matrix(diag({-3, 1, 4, 6}));
  CoarseningEnumerator en(o);
  std::size_t items = 0;
  while (std::optional<CoarseningEnumerator::Item> item = en.next()) {
    ++items;
    const IndexSurjection s = item->partition.to_surjection();
    // The coarse form must name the same surjection through the refinement
    // relation, and cross products must vanish.
    const auto found = is_refinement(o, item->coarse);
    REQUIRE(found.has_value());
    CHECK(found->image == s.image);
    for (std::size_t k = 0; k < o.term_count(); ++k)
      for (std::size_t l = 0; l < item->coarse.term_count(); ++l)
        if (s.image[k] != l)
          CHECK((item->coarse.projector(l) * o.projector(k))
                    .frobenius_norm() <= 1e-9);
  }
  CHECK(items == 15);
}

TEST_CASE("coarsening enumeration guards against huge term counts") {
  std::vector<EigenTerm> terms;
  for (std::size_t k = 0; k < 13; ++k)
    terms.push_back({static_cast<double>(k), basis_projector(13, {k})});
  const SpectralForm wide(13, std::move(terms));
  CHECK(error_kind_of([&] { CoarseningEnumerator en(wide); }) ==
        ErrorKind::kTooManyTerms);
}

TEST_CASE("function coarsenings agree with the refinement relation") {
  Rng rng(22);
  for (std::size_t dim = 2; dim <= 5; ++dim) {
    for (int rep = 0; rep < 5; ++rep) {
      const SpectralForm o = random_observable(dim, dim, rng);
      const auto [coarse, s] =
          coarsen_by_function(o, [](double x) { return std::fabs(x); });
      const auto found = is_refinement(o, coarse);
      REQUIRE(found.has_value());
      CHECK(found->image == s.image);
    }
  }
}

}  // TEST_SUITE
