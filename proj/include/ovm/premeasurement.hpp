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

#include <cstdint>
#include <optional>
#include <vector>

#include "ovm/observables.hpp"
#include "ovm/rng.hpp"

namespace ovm {

// Pure state of the object-pointer composite, stored as a unit vector with
// index a * pointer_dim + b (object slot major).
struct CompositeState {
  ComplexVector vector;
  std::size_t object_dim = 0;
  std::size_t pointer_dim = 0;

  CompositeState() = default;
  CompositeState(ComplexVector v, std::size_t obj_dim, std::size_t ptr_dim,
                 const Tolerance& tol = Tolerance());
};

// A premeasurement of an object observable: a pointer observable with one
// outcome per object outcome, an initial pointer state, and a composite
// unitary meant to copy the measured index onto the pointer. Construction
// checks structure only (co-indexed term counts, unit pointer state, unitary
// within eps_eq); whether the unitary actually calibrates is a separate
// dynamical question answered by check_calibration.
class PremeasurementSetup {
 public:
  PremeasurementSetup(SpectralForm object_obs, SpectralForm pointer_obs,
                      ComplexVector initial_pointer, ComplexMatrix unitary,
                      const Tolerance& tol = Tolerance());

  const SpectralForm& object_observable() const { return object_obs_; }
  const SpectralForm& pointer_observable() const { return pointer_obs_; }
  const ComplexVector& initial_pointer() const { return initial_pointer_; }
  const ComplexMatrix& unitary() const { return unitary_; }
  std::size_t object_dim() const { return object_obs_.dim(); }
  std::size_t pointer_dim() const { return pointer_obs_.dim(); }
  std::size_t outcome_count() const { return object_obs_.term_count(); }

  // Same setup with a different interaction unitary (revalidated).
  PremeasurementSetup with_unitary(ComplexMatrix unitary,
                                   const Tolerance& tol = Tolerance()) const;

 private:
  SpectralForm object_obs_;
  SpectralForm pointer_obs_;
  ComplexVector initial_pointer_;
  ComplexMatrix unitary_;
};

// Canonical premeasurement for an observable with K outcomes: pointer space
// of dimension K with basis observable F_k = |k><k| (value k), initial
// pointer |0>, and U = sum_k E_k (x) S^k where S is the cyclic shift
// S|j> = |j+1 mod K>. U is unitary because the E_k partition the identity,
// and it satisfies calibration: E_k-sharp object states drive the pointer
// from |0> to |k>.
PremeasurementSetup build_premeasurement(const SpectralForm& o,
                                         const Tolerance& tol = Tolerance());

// U applied to (object_state (x) initial pointer).
CompositeState evolve(const PremeasurementSetup& setup,
                      const ComplexVector& object_state,
                      const Tolerance& tol = Tolerance());

// (I (x) f) applied to a composite vector, blockwise per object slot.
ComplexVector apply_pointer_operator(const CompositeState& state,
                                     const ComplexMatrix& f);

// Born weights ||(I (x) F_k) Phi||^2 of each pointer outcome.
std::vector<double> branch_probabilities(const PremeasurementSetup& setup,
                                         const CompositeState& state);

// Calibration audit at object outcome k: for `trials` random unit states in
// range(E_k), evolving must leave the composite F_k-sharp (pointer outcome k
// certain) within eps_eq in vector norm. Vacuously true for zero trials.
bool check_calibration(const PremeasurementSetup& setup, std::size_t k,
                       std::size_t trials, std::uint64_t seed,
                       const Tolerance& tol = Tolerance());

// Pointer observable coarsened by the same surjection that coarsens the
// object observable, carrying the given coarse pointer values.
SpectralForm coarse_pointer(const PremeasurementSetup& setup,
                            const IndexSurjection& s,
                            const std::vector<double>& coarse_values,
                            const Tolerance& tol = Tolerance());

// Coarse calibration audit at coarse outcome l: random unit states sharp for
// the coarsened object projector sum(E_k : s(k) = l) must evolve to states
// sharp for the matching coarse pointer projector. This is the transfer of
// calibration from an observable to its coarsenings, checked dynamically.
bool check_coarse_calibration(const PremeasurementSetup& setup,
                              const IndexSurjection& s, std::size_t l,
                              std::size_t trials, std::uint64_t seed,
                              const Tolerance& tol = Tolerance());

struct MeasurementOutcome {
  std::size_t fine_index = 0;  // object/pointer outcome index
  double fine_value = 0.0;     // object observable value at that index
  double probability = 0.0;    // Born weight of the branch
  CompositeState post_state;   // renormalized sharp composite state
};

// Projective collapse of an evolved composite state onto pointer outcome k.
// Returns nullopt when the branch weight is zero within eps_eq.
std::optional<MeasurementOutcome> collapse(const CompositeState& state,
                                           const PremeasurementSetup& setup,
                                           std::size_t k,
                                           const Tolerance& tol = Tolerance());

// After collapsing onto fine pointer outcome k, the post state must remain
// sharp for the coarse pointer class containing k: reading the pointer
// coarsely and reading it finely then forgetting detail agree. Throws
// ZeroProbabilityBranch when branch k carries no weight.
bool check_coarse_result_consistency(const PremeasurementSetup& setup,
                                     const IndexSurjection& s,
                                     const CompositeState& state,
                                     std::size_t k,
                                     const Tolerance& tol = Tolerance());

struct SimultaneousOutcome {
  MeasurementOutcome outcome;  // on the maximal common refinement
  double first_value = 0.0;    // outcome value of the first observable
  double second_value = 0.0;   // outcome value of the second observable
};

// One-shot simultaneous measurement of two compatible observables: build the
// premeasurement of their maximal common refinement, evolve the object
// state, sample a pointer outcome from the Born weights, collapse, and
// report the induced outcome of each original observable. Zero-probability
// branches are never sampled.
SimultaneousOutcome simultaneous_measure(const SpectralForm& o1,
                                         const SpectralForm& o2,
                                         const ComplexVector& object_state,
                                         Rng& rng,
                                         const Tolerance& tol = Tolerance());

SimultaneousOutcome simultaneous_measure(const SpectralForm& o1,
                                         const SpectralForm& o2,
                                         const ComplexVector& object_state,
                                         std::uint64_t seed,
                                         const Tolerance& tol = Tolerance());

}  // namespace ovm
