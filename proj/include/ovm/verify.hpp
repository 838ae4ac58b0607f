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
#include <string>
#include <utility>
#include <vector>

#include "ovm/observables.hpp"
#include "ovm/rng.hpp"

namespace ovm {

// Randomized audit suites. Each check states a lemma-like property, runs it
// on generated instances, and counts failures; a sound implementation
// reports zero failures on every check. The same runners back the CLI
// `verify` subcommand and the acceptance tests.

struct SuiteCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;

  bool all_passed() const {
    for (const SuiteCheck& c : checks)
      if (c.failures != 0) return false;
    return true;
  }
};

// Random observable with term count between 1 and min(dim, max_terms):
// random eigenbasis, random surjective grouping of basis vectors into
// eigenspaces (degenerate whenever the term count is below dim), distinct
// integer eigenvalues.
SpectralForm random_observable(std::size_t dim, std::size_t max_terms,
                               Rng& rng, const Tolerance& tol = Tolerance());

// As above but diagonal in the given orthonormal basis (columns of a
// unitary). Observables drawn in one shared basis are always compatible.
SpectralForm random_observable_in_basis(const ComplexMatrix& basis,
                                        std::size_t max_terms, Rng& rng,
                                        const Tolerance& tol = Tolerance());

// Compatible pair with a bound on the term count of their maximal common
// refinement (useful when a downstream step enumerates its coarsenings).
std::pair<SpectralForm, SpectralForm> random_compatible_pair(
    std::size_t dim, std::size_t max_joint_terms, Rng& rng,
    const Tolerance& tol = Tolerance());

// Projector lattice lemmas: glb of commuting pairs against the subspace
// intersection oracle, lub of orthogonal families against the span oracle,
// orthogonality propagation through implication, and domination of sums.
SuiteReport run_lattice_suite(const std::vector<std::size_t>& dims,
                              std::size_t cases_per_dim, std::uint64_t seed,
                              const Tolerance& tol = Tolerance());

// Commutation equivalences: the three-way operator/pinching/projector
// agreement for constructed-commuting and generic operators, and the
// operator-commutation iff projector-commutation biconditional on observable
// pairs.
SuiteReport run_claims_suite(const std::vector<std::size_t>& dims,
                             std::size_t cases_per_dim, std::uint64_t seed,
                             const Tolerance& tol = Tolerance());

// Measurement-coarsening sweep: for random observables, every coarsening is
// audited for calibration transfer (sharp_inputs_per_coarsening sharp states
// spread over its coarse indices) and for collapse consistency (every
// nonzero branch of states_per_coarsening random states).
SuiteReport run_overmeasurement_suite(const std::vector<std::size_t>& dims,
                                      std::size_t observables_per_dim,
                                      std::size_t sharp_inputs_per_coarsening,
                                      std::size_t states_per_coarsening,
                                      std::uint64_t seed,
                                      const Tolerance& tol = Tolerance());

// Render a report in the fixed layout used by the CLI (deterministic for
// golden comparisons).
std::string format_report(const SuiteReport& report);

}  // namespace ovm
