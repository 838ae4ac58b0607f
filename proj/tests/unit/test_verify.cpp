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

#include <algorithm>

#include "doctest.h"
#include "ovm/compatibility.hpp"
#include "ovm/verify.hpp"
#include "test_util.hpp"

using namespace ovm;

TEST_SUITE("verify") {

TEST_CASE("random observables respect the requested bounds") {
  Rng rng(71);
  for (std::size_t dim = 2; dim <= 5; ++dim) {
    for (int rep = 0; rep < 6; ++rep) {
      const std::size_t max_terms = 1 + rng.below(6);
      const SpectralForm o = random_observable(dim, max_terms, rng);
      CHECK(o.dim() == dim);
      CHECK(o.term_count() >= 1);
      CHECK(o.term_count() <= std::min(dim, max_terms));
    }
  }
}

TEST_CASE("shared-basis draws are compatible by construction") {
  Rng rng(72);
  const ComplexMatrix basis = random_unitary(4, rng);
  const SpectralForm a = random_observable_in_basis(basis, 3, rng);
  const SpectralForm b = random_observable_in_basis(basis, 3, rng);
  CHECK(are_compatible(a, b));
}

TEST_CASE("compatible pairs honor the joint term bound") {
  Rng rng(73);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t dim = 2 + rng.below(4);
    const std::size_t bound = 1 + rng.below(4);
    const auto [a, b] = random_compatible_pair(dim, bound, rng);
    REQUIRE(are_compatible(a, b));
    const CommonRefinement r = maximal_common_refinement(a, b);
    CHECK(r.refined.term_count() <= bound);
  }
}

TEST_CASE("lattice suite passes on small dimensions") {
  const SuiteReport report = run_lattice_suite({2, 3}, 25, 1);
  CHECK(report.suite == "lattice");
  REQUIRE(report.checks.size() == 4);
  for (const SuiteCheck& c : report.checks) CHECK(c.cases > 0);
  CHECK(report.all_passed());
}

TEST_CASE("claims suite passes on small dimensions") {
  const SuiteReport report = run_claims_suite({2, 3}, 25, 2);
  CHECK(report.suite == "claims");
  REQUIRE(report.checks.size() == 4);
  CHECK(report.all_passed());
}

TEST_CASE("overmeasurement suite passes on small dimensions") {
  const SuiteReport report = run_overmeasurement_suite({2, 3}, 3, 20, 3, 3);
  CHECK(report.suite == "overmeasurement");
  REQUIRE(report.checks.size() == 2);
  for (const SuiteCheck& c : report.checks) CHECK(c.cases > 0);
  CHECK(report.all_passed());
}

TEST_CASE("reports render one line per check plus a verdict") {
  SuiteReport report;
  report.suite = "lattice";
  report.checks.push_back({"sample check", 10, 0});
  const std::string text = format_report(report);
  CHECK(text.find("suite: lattice") != std::string::npos);
  CHECK(text.find("sample check: 10/10") != std::string::npos);
  CHECK(text.find("result: PASS") != std::string::npos);

  report.checks.push_back({"failing check", 10, 3});
  const std::string bad = format_report(report);
  CHECK(bad.find("failing check: 7/10") != std::string::npos);
  CHECK(bad.find("result: FAIL") != std::string::npos);
}

}  // TEST_SUITE
