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
#include "ovm/premeasurement.hpp"
#include "ovm/rng.hpp"
#include "ovm/verify.hpp"
#include "test_util.hpp"

using namespace ovm;
using namespace test_util;

namespace {

// Two-outcome observable with value -1 on |0> and +1 on |1>, so outcome
// index equals basis index.
SpectralForm two_level() { return from_matrix(diag({-1, 1})); }

const double kInvSqrt2 = 0.70710678118654752;

double vec_distance(const ComplexVector& a, const ComplexVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) d += std::norm(a[i] - b[i]);
  return std::sqrt(d);
}

}  // namespace

TEST_SUITE("premeasurement") {

TEST_CASE("single-outcome observables need no pointer motion") {
  const PremeasurementSetup setup =
      build_premeasurement(from_matrix(ComplexMatrix::identity(3)));
  CHECK(setup.pointer_dim() == 1);
  CHECK(approx_eq(setup.unitary(), ComplexMatrix::identity(3)));
  CHECK(check_calibration(setup, 0, 20, 7));
}

TEST_CASE("two-level premeasurement is the expected controlled shift") {
  const PremeasurementSetup setup = build_premeasurement(two_level());
  CHECK(setup.pointer_dim() == 2);
  CHECK(approx_eq(setup.unitary(), mat({{1, 0, 0, 0},
                                        {0, 1, 0, 0},
                                        {0, 0, 0, 1},
                                        {0, 0, 1, 0}})));
  CHECK(check_calibration(setup, 0, 20, 8));
  CHECK(check_calibration(setup, 1, 20, 9));
}

TEST_CASE("degenerate eigenspaces share one pointer outcome") {
  const PremeasurementSetup setup =
      build_premeasurement(from_matrix(diag({2, 2, 5})));
  CHECK(setup.pointer_dim() == 2);
  CHECK(check_calibration(setup, 0, 20, 10));
  CHECK(check_calibration(setup, 1, 20, 11));

  // A degenerate eigenvector stays put and marks outcome 0.
  const CompositeState out =
      evolve(setup, vec({kInvSqrt2, kInvSqrt2, 0}));
  ComplexVector expected(6);
  expected[0] = kInvSqrt2;  // |0> (x) pointer |0>
  expected[2] = kInvSqrt2;  // |1> (x) pointer |0>
  CHECK(vec_distance(out.vector, expected) < 1e-9);
}

TEST_CASE("evolution copies the outcome index onto the pointer") {
  const PremeasurementSetup setup = build_premeasurement(two_level());

  const CompositeState low = evolve(setup, vec({1, 0}));
  CHECK(vec_distance(low.vector, vec({1, 0, 0, 0})) < 1e-9);

  const CompositeState high = evolve(setup, vec({0, 1}));
  CHECK(vec_distance(high.vector, vec({0, 0, 0, 1})) < 1e-9);

  const CompositeState both = evolve(setup, vec({kInvSqrt2, kInvSqrt2}));
  CHECK(vec_distance(both.vector,
                     vec({kInvSqrt2, 0, 0, kInvSqrt2})) < 1e-9);

  CHECK(error_kind_of([&] { evolve(setup, vec({2, 0})); }) ==
        ErrorKind::kNotUnit);
  CHECK(error_kind_of([&] { evolve(setup, vec({1, 0, 0})); }) ==
        ErrorKind::kDimMismatch);
}

TEST_CASE("an identity unitary fails calibration") {
  const PremeasurementSetup broken = build_premeasurement(two_level())
      .with_unitary(ComplexMatrix::identity(4));
  CHECK_FALSE(check_calibration(broken, 1, 5, 12));
  CHECK(check_calibration(broken, 0, 5, 13));  // outcome 0 never shifts
  CHECK(error_kind_of([&] { check_calibration(broken, 2, 5, 14); }) ==
        ErrorKind::kIndexOutOfRange);
}

TEST_CASE("setup construction validates its pieces") {
  const SpectralForm o = two_level();
  const PremeasurementSetup setup = build_premeasurement(o);
  ComplexMatrix not_unitary(4, 4);
  not_unitary(0, 0) = 2.0;
  CHECK(error_kind_of([&] { setup.with_unitary(not_unitary); }) ==
        ErrorKind::kNotUnitary);
  CHECK(error_kind_of([&] {
          PremeasurementSetup(o, from_matrix(ComplexMatrix::identity(2)),
                              vec({1, 0}), ComplexMatrix::identity(4));
        }) == ErrorKind::kCountMismatch);
}

TEST_CASE("coarse pointers merge co-indexed outcomes") {
  const SpectralForm o = from_matrix(diag({0, 1, 2, 3}));
  const PremeasurementSetup setup = build_premeasurement(o);

  const SpectralForm same = coarse_pointer(
      setup, IndexSurjection::identity(4), {0.0, 1.0, 2.0, 3.0});
  CHECK(structural_eq(same, setup.pointer_observable()));

  const SpectralForm total =
      coarse_pointer(setup, IndexSurjection(4, 1, {0, 0, 0, 0}), {5.0});
  REQUIRE(total.term_count() == 1);
  CHECK(approx_eq(total.projector(0), ComplexMatrix::identity(4)));

  const SpectralForm halves = coarse_pointer(
      setup, IndexSurjection(4, 2, {0, 0, 1, 1}), {0.0, 1.0});
  CHECK(approx_eq(halves.projector(0), basis_projector(4, {0, 1})));
  CHECK(approx_eq(halves.projector(1), basis_projector(4, {2, 3})));
  // Coarse pointer projectors absorb their fine constituents.
  for (std::size_t k = 0; k < 4; ++k) {
    const ComplexMatrix& fine = setup.pointer_observable().projector(k);
    CHECK(approx_eq(halves.projector(k / 2) * fine, fine));
  }
}

TEST_CASE("coarse calibration follows from fine calibration") {
  const SpectralForm o = from_matrix(diag({0, 1, 2, 3}));
  const PremeasurementSetup setup = build_premeasurement(o);

  const IndexSurjection pairs(4, 2, {0, 0, 1, 1});
  CHECK(check_coarse_calibration(setup, pairs, 0, 30, 15));
  CHECK(check_coarse_calibration(setup, pairs, 1, 30, 16));

  const IndexSurjection identity = IndexSurjection::identity(4);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(check_coarse_calibration(setup, identity, k, 10, 17) ==
          check_calibration(setup, k, 10, 17));

  const IndexSurjection total(4, 1, {0, 0, 0, 0});
  CHECK(check_coarse_calibration(setup, total, 0, 10, 18));

  CHECK(error_kind_of([&] {
          check_coarse_calibration(setup, pairs, 2, 10, 19);
        }) == ErrorKind::kIndexOutOfRange);
}

TEST_CASE("collapse projects onto a pointer outcome") {
  const PremeasurementSetup setup = build_premeasurement(two_level());

  const CompositeState entangled =
      evolve(setup, vec({kInvSqrt2, kInvSqrt2}));
  const auto low = collapse(entangled, setup, 0);
  REQUIRE(low.has_value());
  CHECK(low->fine_index == 0);
  CHECK(low->fine_value == doctest::Approx(-1.0));
  CHECK(low->probability == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(vec_distance(low->post_state.vector, vec({1, 0, 0, 0})) < 1e-9);

  const CompositeState sharp = evolve(setup, vec({1, 0}));
  CHECK_FALSE(collapse(sharp, setup, 1).has_value());
  CHECK(error_kind_of([&] { collapse(sharp, setup, 2); }) ==
        ErrorKind::kIndexOutOfRange);
}

TEST_CASE("collapse of a degenerate branch keeps the object part") {
  const PremeasurementSetup setup =
      build_premeasurement(from_matrix(diag({2, 2, 5})));
  const CompositeState state = evolve(setup, vec({kInvSqrt2, 0, kInvSqrt2}));
  const auto out = collapse(state, setup, 0);
  REQUIRE(out.has_value());
  CHECK(out->fine_value == doctest::Approx(2.0));
  CHECK(out->probability == doctest::Approx(0.5).epsilon(1e-9));
  ComplexVector expected(6);
  expected[0] = 1.0;  // object |0>, pointer |0>
  CHECK(vec_distance(out->post_state.vector, expected) < 1e-9);
}

TEST_CASE("collapse probabilities are complete") {
  Rng rng(51);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t dim = 2 + rng.below(5);
    const SpectralForm o = random_observable(dim, dim, rng);
    const PremeasurementSetup setup = build_premeasurement(o);
    ComplexVector psi = rng.gaussian_vector(dim);
    psi = cplx(1.0 / psi.norm(), 0.0) * psi;
    const CompositeState state = evolve(setup, psi);
    const std::vector<double> probs = branch_probabilities(setup, state);
    double sum = 0.0;
    for (double p : probs) sum += p;
    CHECK(std::fabs(sum - 1.0) <= 100e-9);
  }
}

TEST_CASE("collapsed branches stay sharp for their coarse class") {
  const SpectralForm o = from_matrix(diag({0, 1, 2, 3}));
  const PremeasurementSetup setup = build_premeasurement(o);
  const IndexSurjection pairs(4, 2, {0, 0, 1, 1});
  const IndexSurjection total(4, 1, {0, 0, 0, 0});

  Rng rng(52);
  for (int rep = 0; rep < 10; ++rep) {
    ComplexVector psi = rng.gaussian_vector(4);
    psi = cplx(1.0 / psi.norm(), 0.0) * psi;
    const CompositeState state = evolve(setup, psi);
    const std::vector<double> probs = branch_probabilities(setup, state);
    for (std::size_t k = 0; k < 4; ++k) {
      if (probs[k] <= 1e-9) continue;
      CHECK(check_coarse_result_consistency(setup, pairs, state, k));
      CHECK(check_coarse_result_consistency(
          setup, IndexSurjection::identity(4), state, k));
      CHECK(check_coarse_result_consistency(setup, total, state, k));
    }
  }

  const CompositeState sharp = evolve(setup, vec({1, 0, 0, 0}));
  CHECK(error_kind_of([&] {
          check_coarse_result_consistency(setup, pairs, sharp, 3);
        }) == ErrorKind::kZeroProbabilityBranch);
}

TEST_CASE("simultaneous measurement of an observable with itself is sharp") {
  const SpectralForm o = two_level();
  const SimultaneousOutcome out =
      simultaneous_measure(o, o, vec({1, 0}), 99);
  CHECK(out.first_value == doctest::Approx(-1.0));
  CHECK(out.second_value == doctest::Approx(-1.0));
  CHECK(out.outcome.probability == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("simultaneous marginals on an entangled state are correlated") {
  const SpectralForm first =
      from_matrix(kron(pauli_z(), ComplexMatrix::identity(2)));
  const SpectralForm second =
      from_matrix(kron(ComplexMatrix::identity(2), pauli_z()));
  const ComplexVector bell = vec({kInvSqrt2, 0, 0, kInvSqrt2});

  Rng rng(53);
  std::size_t plus_plus = 0;
  std::size_t minus_minus = 0;
  for (int s = 0; s < 2000; ++s) {
    const SimultaneousOutcome out =
        simultaneous_measure(first, second, bell, rng);
    REQUIRE(out.first_value * out.second_value > 0.0);  // never mixed signs
    if (out.first_value > 0.0)
      ++plus_plus;
    else
      ++minus_minus;
  }
  CHECK(plus_plus + minus_minus == 2000);
  CHECK(plus_plus > 880);   // ~4.5 sigma slack around the fair split
  CHECK(minus_minus > 880);
}

TEST_CASE("simultaneous product states factor into independent marginals") {
  const SpectralForm first =
      from_matrix(kron(pauli_z(), ComplexMatrix::identity(2)));
  const SpectralForm second =
      from_matrix(kron(ComplexMatrix::identity(2), pauli_z()));
  const ComplexVector product = vec({kInvSqrt2, kInvSqrt2, 0, 0});

  Rng rng(54);
  std::size_t second_high = 0;
  for (int s = 0; s < 1000; ++s) {
    const SimultaneousOutcome out =
        simultaneous_measure(first, second, product, rng);
    CHECK(out.first_value == doctest::Approx(1.0));  // first factor sharp
    if (out.second_value > 0.0) ++second_high;
  }
  CHECK(second_high > 400);
  CHECK(second_high < 600);

  CHECK(error_kind_of([&] {
          simultaneous_measure(first, second, vec({1, 1, 0, 0}), 1);
        }) == ErrorKind::kNotUnit);
  CHECK(error_kind_of([&] {
          simultaneous_measure(from_matrix(pauli_z()),
                               from_matrix(pauli_x()), vec({1, 0}), 1);
        }) == ErrorKind::kNotCompatible);
}

}  // TEST_SUITE
