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

#include "ovm/verify.hpp"

#include <algorithm>
#include <sstream>

#include "ovm/compatibility.hpp"
#include "ovm/premeasurement.hpp"
#include "ovm/projector_lattice.hpp"

namespace ovm {

namespace {

// Surjective labelling of n elements by K labels: the first K slots get each
// label once, the rest are uniform, then everything is shuffled.
std::vector<std::size_t> random_surjective_labels(std::size_t n, std::size_t k,
                                                  Rng& rng) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i)
    labels[i] = (i < k) ? i : rng.below(k);
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t j = rng.below(i + 1);
    std::swap(labels[i], labels[j]);
  }
  return labels;
}

// K distinct integers in [-12, 12], ascending.
std::vector<double> random_distinct_values(std::size_t k, Rng& rng) {
  std::vector<int> pool;
  for (int v = -12; v <= 12; ++v) pool.push_back(v);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<double> vals(pool.begin(), pool.begin() + k);
  std::sort(vals.begin(), vals.end());
  return vals;
}

// Projector onto the span of the basis columns selected by `picks`.
ComplexMatrix columns_projector(const ComplexMatrix& basis,
                                const std::vector<std::size_t>& picks) {
  const std::size_t n = basis.rows();
  ComplexMatrix p(n, n);
  for (std::size_t idx : picks)
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vi = basis(i, idx);
      for (std::size_t j = 0; j < n; ++j)
        p(i, j) += vi * std::conj(basis(j, idx));
    }
  return p;
}

SpectralForm observable_from_labels(const ComplexMatrix& basis,
                                    const std::vector<std::size_t>& labels,
                                    std::size_t k, Rng& rng,
                                    const Tolerance& tol) {
  const std::vector<double> values = random_distinct_values(k, rng);
  std::vector<EigenTerm> terms(k);
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<std::size_t> picks;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == l) picks.push_back(i);
    terms[l].value = values[l];
    terms[l].projector = columns_projector(basis, picks);
  }
  return SpectralForm(basis.rows(), std::move(terms), tol);
}

}  // namespace

SpectralForm random_observable_in_basis(const ComplexMatrix& basis,
                                        std::size_t max_terms, Rng& rng,
                                        const Tolerance& tol) {
  const std::size_t dim = basis.rows();
  const std::size_t k = 1 + rng.below(std::min(dim, max_terms));
  return observable_from_labels(basis, random_surjective_labels(dim, k, rng),
                                k, rng, tol);
}

SpectralForm random_observable(std::size_t dim, std::size_t max_terms,
                               Rng& rng, const Tolerance& tol) {
  return random_observable_in_basis(random_unitary(dim, rng), max_terms, rng,
                                    tol);
}

std::pair<SpectralForm, SpectralForm> random_compatible_pair(
    std::size_t dim, std::size_t max_joint_terms, Rng& rng,
    const Tolerance& tol) {
  const ComplexMatrix basis = random_unitary(dim, rng);
  // Joint classes bound the term count of the maximal common refinement:
  // each observable's eigenspaces are unions of joint classes, so nonzero
  // projector products are unions of them too.
  const std::size_t joint = 1 + rng.below(std::min(dim, max_joint_terms));
  const std::vector<std::size_t> joint_labels =
      random_surjective_labels(dim, joint, rng);

  auto coarsen_labels = [&](std::size_t k) {
    const std::vector<std::size_t> grouping =
        random_surjective_labels(joint, k, rng);
    std::vector<std::size_t> labels(dim);
    for (std::size_t i = 0; i < dim; ++i)
      labels[i] = grouping[joint_labels[i]];
    return labels;
  };

  const std::size_t k1 = 1 + rng.below(joint);
  const std::size_t k2 = 1 + rng.below(joint);
  SpectralForm o1 =
      observable_from_labels(basis, coarsen_labels(k1), k1, rng, tol);
  SpectralForm o2 =
      observable_from_labels(basis, coarsen_labels(k2), k2, rng, tol);
  return {std::move(o1), std::move(o2)};
}

namespace {

std::vector<std::size_t> indices_with_label(
    const std::vector<std::size_t>& labels, std::size_t wanted) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == wanted) out.push_back(i);
  return out;
}

// Projector spanned by `count` random orthonormal combinations of the basis
// columns in `picks`.
ComplexMatrix random_subprojector(const ComplexMatrix& basis,
                                  const std::vector<std::size_t>& picks,
                                  std::size_t count, Rng& rng) {
  const std::size_t n = basis.rows();
  ComplexMatrix p(n, n);
  if (picks.empty() || count == 0) return p;
  const ComplexMatrix w = random_unitary(picks.size(), rng);
  for (std::size_t c = 0; c < count; ++c) {
    ComplexVector u(n);
    for (std::size_t r = 0; r < picks.size(); ++r) {
      const cplx wrc = w(r, c);
      for (std::size_t i = 0; i < n; ++i) u[i] += basis(i, picks[r]) * wrc;
    }
    p = p + outer(u, u);
  }
  return p;
}

}  // namespace

SuiteReport run_lattice_suite(const std::vector<std::size_t>& dims,
                              std::size_t cases_per_dim, std::uint64_t seed,
                              const Tolerance& tol) {
  SuiteReport report;
  report.suite = "lattice";
  report.checks = {
      {"glb of commuting pair equals subspace intersection", 0, 0},
      {"lub of orthogonal family equals span of ranges", 0, 0},
      {"projector below one of an orthogonal pair avoids the other", 0, 0},
      {"sum of dominated projectors stays below the dominating sum", 0, 0}};
  Rng rng(seed);

  for (std::size_t dim : dims) {
    for (std::size_t c = 0; c < cases_per_dim; ++c) {
      const ComplexMatrix basis = random_unitary(dim, rng);

      {  // glb against the intersection oracle, on a commuting pair
        std::vector<std::size_t> left, right;
        for (std::size_t i = 0; i < dim; ++i) {
          if (rng.below(2)) left.push_back(i);
          if (rng.below(2)) right.push_back(i);
        }
        const ComplexMatrix e = columns_projector(basis, left);
        const ComplexMatrix f = columns_projector(basis, right);
        report.checks[0].cases++;
        try {
          if (!approx_eq(glb_commuting(e, f, tol), brute_force_glb(e, f, tol),
                         tol))
            report.checks[0].failures++;
        } catch (const Error&) {
          report.checks[0].failures++;
        }
      }

      {  // lub against the span oracle, on an orthogonal family
        const std::size_t groups = 1 + rng.below(std::min<std::size_t>(dim, 4));
        std::vector<std::vector<std::size_t>> picks(groups);
        for (std::size_t i = 0; i < dim; ++i) {
          const std::size_t g = rng.below(groups + 1);
          if (g < groups) picks[g].push_back(i);
        }
        std::vector<ComplexMatrix> members;
        for (const auto& pk : picks)
          if (!pk.empty()) members.push_back(columns_projector(basis, pk));
        if (members.empty()) members.push_back(ComplexMatrix(dim, dim));
        const ProjectorSet family(dim, std::move(members), tol);
        report.checks[1].cases++;
        try {
          if (!approx_eq(lub_orthogonal(family, tol),
                         projector_onto_span(family, tol), tol))
            report.checks[1].failures++;
        } catch (const Error&) {
          report.checks[1].failures++;
        }
      }

      {  // orthogonality propagation through implication
        std::vector<std::size_t> se, sf;
        for (std::size_t i = 0; i < dim; ++i) {
          switch (rng.below(3)) {
            case 0: se.push_back(i); break;
            case 1: sf.push_back(i); break;
            default: break;
          }
        }
        const ComplexMatrix e = columns_projector(basis, se);
        const ComplexMatrix f = columns_projector(basis, sf);
        const std::size_t rank_g = se.empty() ? 0 : rng.below(se.size() + 1);
        const ComplexMatrix g = random_subprojector(basis, se, rank_g, rng);
        report.checks[2].cases++;
        try {
          if (!orthogonality_propagates(e, f, g, tol))
            report.checks[2].failures++;
        } catch (const Error&) {
          report.checks[2].failures++;
        }
      }

      {  // domination of sums
        const std::size_t groups = 1 + rng.below(std::min<std::size_t>(dim, 4));
        std::vector<std::vector<std::size_t>> picks;
        {
          std::vector<std::vector<std::size_t>> raw(groups);
          for (std::size_t i = 0; i < dim; ++i) {
            const std::size_t g = rng.below(groups + 1);
            if (g < groups) raw[g].push_back(i);
          }
          for (auto& pk : raw)
            if (!pk.empty()) picks.push_back(std::move(pk));
        }
        if (picks.empty()) picks.push_back({0});

        std::vector<ComplexMatrix> es;
        es.reserve(picks.size());
        for (const auto& pk : picks) es.push_back(columns_projector(basis, pk));

        std::vector<ComplexMatrix> gs;
        std::vector<std::size_t> assignment;
        for (std::size_t k = 0; k < picks.size(); ++k) {
          const std::size_t rank = picks[k].size();
          std::size_t fibers = rng.below(3);
          fibers = std::min(fibers, rank);
          if (fibers == 0) continue;
          const ComplexMatrix w = random_unitary(rank, rng);
          std::size_t next_col = 0;
          std::size_t remaining = rank;
          for (std::size_t fib = 0; fib < fibers; ++fib) {
            const std::size_t slack = remaining - (fibers - 1 - fib);
            const std::size_t size = 1 + rng.below(slack);
            remaining -= size;
            ComplexMatrix g(dim, dim);
            for (std::size_t c = 0; c < size; ++c, ++next_col) {
              ComplexVector u(dim);
              for (std::size_t r = 0; r < rank; ++r) {
                const cplx wrc = w(r, next_col);
                for (std::size_t i = 0; i < dim; ++i)
                  u[i] += basis(i, picks[k][r]) * wrc;
              }
              g = g + outer(u, u);
            }
            gs.push_back(std::move(g));
            assignment.push_back(k);
          }
        }
        if (gs.empty()) {
          gs.push_back(columns_projector(basis, {picks[0][0]}));
          assignment.push_back(0);
        }
        report.checks[3].cases++;
        try {
          if (!sum_dominates(ProjectorSet(dim, std::move(gs), tol),
                             ProjectorSet(dim, es, tol), assignment, tol))
            report.checks[3].failures++;
        } catch (const Error&) {
          report.checks[3].failures++;
        }
      }
    }
  }
  return report;
}

SuiteReport run_claims_suite(const std::vector<std::size_t>& dims,
                             std::size_t cases_per_dim, std::uint64_t seed,
                             const Tolerance& tol) {
  SuiteReport report;
  report.suite = "claims";
  report.checks = {
      {"constructed commuting operator passes all three commutation tests", 0,
       0},
      {"three commutation tests agree on generic operators", 0, 0},
      {"operator and projector commutation agree on commuting pairs", 0, 0},
      {"operator and projector commutation agree on generic pairs", 0, 0}};
  Rng rng(seed);

  auto gaussian_matrix = [&](std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.gaussian_complex();
    return m;
  };

  for (std::size_t dim : dims) {
    for (std::size_t c = 0; c < cases_per_dim; ++c) {
      {  // constructed commuting (observable, operator) pair
        const SpectralForm o = random_observable(dim, dim, rng, tol);
        const ComplexMatrix x = pinch(o, gaussian_matrix(dim), tol);
        report.checks[0].cases++;
        if (!commutation_witness(o, x, tol).all_hold())
          report.checks[0].failures++;
      }
      {  // generic (observable, operator) pair
        const SpectralForm o = random_observable(dim, dim, rng, tol);
        const ComplexMatrix x = gaussian_matrix(dim);
        report.checks[1].cases++;
        if (!commutation_witness(o, x, tol).all_agree())
          report.checks[1].failures++;
      }
      {  // commuting observable pair: both tests must come out true
        const ComplexMatrix basis = random_unitary(dim, rng);
        const SpectralForm o1 =
            random_observable_in_basis(basis, dim, rng, tol);
        const SpectralForm o2 =
            random_observable_in_basis(basis, dim, rng, tol);
        report.checks[2].cases++;
        if (!commutes(o1.matrix(), o2.matrix(), tol) ||
            !are_compatible(o1, o2, tol))
          report.checks[2].failures++;
      }
      {  // generic observable pair: the two tests must agree either way
        const SpectralForm o1 = random_observable(dim, dim, rng, tol);
        const SpectralForm o2 = random_observable(dim, dim, rng, tol);
        report.checks[3].cases++;
        if (commutes(o1.matrix(), o2.matrix(), tol) !=
            are_compatible(o1, o2, tol))
          report.checks[3].failures++;
      }
    }
  }
  return report;
}

SuiteReport run_overmeasurement_suite(const std::vector<std::size_t>& dims,
                                      std::size_t observables_per_dim,
                                      std::size_t sharp_inputs_per_coarsening,
                                      std::size_t states_per_coarsening,
                                      std::uint64_t seed,
                                      const Tolerance& tol) {
  SuiteReport report;
  report.suite = "overmeasurement";
  report.checks = {
      {"coarse calibration transfers to every coarsening", 0, 0},
      {"every nonzero collapse branch is sharp for its coarse class", 0, 0}};
  Rng rng(seed);

  for (std::size_t dim : dims) {
    for (std::size_t i = 0; i < observables_per_dim; ++i) {
      const SpectralForm o = random_observable(dim, 6, rng, tol);
      const PremeasurementSetup setup = build_premeasurement(o, tol);

      CoarseningEnumerator coarsenings(o, tol);
      while (std::optional<CoarseningEnumerator::Item> item =
                 coarsenings.next()) {
        const IndexSurjection s = item->partition.to_surjection();

        // Spread the sharp-input budget across the coarse indices.
        const std::size_t base = sharp_inputs_per_coarsening / s.coarse_count;
        const std::size_t extra = sharp_inputs_per_coarsening % s.coarse_count;
        for (std::size_t l = 0; l < s.coarse_count; ++l) {
          const std::size_t trials = base + (l < extra ? 1 : 0);
          report.checks[0].cases++;
          if (!check_coarse_calibration(setup, s, l, trials, rng.next_u64(),
                                        tol))
            report.checks[0].failures++;
        }

        for (std::size_t t = 0; t < states_per_coarsening; ++t) {
          ComplexVector psi = rng.gaussian_vector(dim);
          while (psi.norm() <= 1e-8) psi = rng.gaussian_vector(dim);
          psi = cplx(1.0 / psi.norm(), 0.0) * psi;
          const CompositeState evolved = evolve(setup, psi, tol);
          const std::vector<double> probs =
              branch_probabilities(setup, evolved);
          for (std::size_t k = 0; k < probs.size(); ++k) {
            if (probs[k] <= tol.eps_eq) continue;
            report.checks[1].cases++;
            if (!check_coarse_result_consistency(setup, s, evolved, k, tol))
              report.checks[1].failures++;
          }
        }
      }
    }
  }
  return report;
}

std::string format_report(const SuiteReport& report) {
  std::ostringstream out;
  out << "suite: " << report.suite << "\n";
  for (const SuiteCheck& c : report.checks)
    out << "  " << c.name << ": " << (c.cases - c.failures) << "/" << c.cases
        << "\n";
  out << "result: " << (report.all_passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace ovm
