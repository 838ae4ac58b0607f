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

#include "ovm/premeasurement.hpp"

#include <cmath>
#include <sstream>

#include "ovm/compatibility.hpp"

namespace ovm {

CompositeState::CompositeState(ComplexVector v, std::size_t obj_dim,
                               std::size_t ptr_dim, const Tolerance& tol)
    : vector(std::move(v)), object_dim(obj_dim), pointer_dim(ptr_dim) {
  if (vector.dim() != object_dim * pointer_dim) {
    std::ostringstream msg;
    msg << "composite vector has dimension " << vector.dim() << ", expected "
        << object_dim << " * " << pointer_dim;
    throw Error(ErrorKind::kDimMismatch, msg.str());
  }
  if (!vector.all_finite())
    throw Error(ErrorKind::kNonFinite, "state has non-finite entries");
  if (std::abs(vector.norm() - 1.0) > tol.eps_eq) {
    std::ostringstream msg;
    msg << "state norm " << vector.norm() << " is not 1 within eps_eq";
    throw Error(ErrorKind::kNotUnit, msg.str());
  }
}

PremeasurementSetup::PremeasurementSetup(SpectralForm object_obs,
                                         SpectralForm pointer_obs,
                                         ComplexVector initial_pointer,
                                         ComplexMatrix unitary,
                                         const Tolerance& tol)
    : object_obs_(std::move(object_obs)),
      pointer_obs_(std::move(pointer_obs)),
      initial_pointer_(std::move(initial_pointer)),
      unitary_(std::move(unitary)) {
  if (pointer_obs_.term_count() != object_obs_.term_count()) {
    std::ostringstream msg;
    msg << "pointer observable has " << pointer_obs_.term_count()
        << " outcomes, object observable has " << object_obs_.term_count();
    throw Error(ErrorKind::kCountMismatch, msg.str());
  }
  if (initial_pointer_.dim() != pointer_obs_.dim())
    throw Error(ErrorKind::kDimMismatch,
                "initial pointer state has the wrong dimension");
  if (!initial_pointer_.all_finite())
    throw Error(ErrorKind::kNonFinite, "initial pointer has non-finite entries");
  if (std::abs(initial_pointer_.norm() - 1.0) > tol.eps_eq)
    throw Error(ErrorKind::kNotUnit, "initial pointer state is not a unit vector");
  const std::size_t total = object_obs_.dim() * pointer_obs_.dim();
  if (!unitary_.square() || unitary_.rows() != total) {
    std::ostringstream msg;
    msg << "interaction must be " << total << "x" << total;
    throw Error(ErrorKind::kDimMismatch, msg.str());
  }
  const double defect =
      (unitary_.adjoint() * unitary_ - ComplexMatrix::identity(total))
          .frobenius_norm();
  if (defect > tol.eps_eq) {
    std::ostringstream msg;
    msg << "U^H U deviates from the identity by " << defect;
    throw Error(ErrorKind::kNotUnitary, msg.str());
  }
}

PremeasurementSetup PremeasurementSetup::with_unitary(
    ComplexMatrix unitary, const Tolerance& tol) const {
  return PremeasurementSetup(object_obs_, pointer_obs_, initial_pointer_,
                             std::move(unitary), tol);
}

PremeasurementSetup build_premeasurement(const SpectralForm& o,
                                         const Tolerance& tol) {
  const std::size_t K = o.term_count();
  const std::size_t d = o.dim();

  std::vector<EigenTerm> pointer_terms(K);
  for (std::size_t k = 0; k < K; ++k) {
    pointer_terms[k].value = static_cast<double>(k);
    pointer_terms[k].projector = ComplexMatrix(K, K);
    pointer_terms[k].projector(k, k) = 1.0;
  }
  SpectralForm pointer_obs(K, std::move(pointer_terms), tol);

  ComplexVector initial(K);
  initial[0] = 1.0;

  // U = sum_k E_k (x) S^k assembled entrywise: S^k maps |j> to |j+k mod K>,
  // so (S^k)(i, j) = [i == j + k mod K].
  ComplexMatrix u(d * K, d * K);
  for (std::size_t k = 0; k < K; ++k) {
    const ComplexMatrix& e = o.projector(k);
    for (std::size_t ia = 0; ia < d; ++ia)
      for (std::size_t ja = 0; ja < d; ++ja) {
        const cplx eij = e(ia, ja);
        if (eij == cplx(0.0, 0.0)) continue;
        for (std::size_t jb = 0; jb < K; ++jb)
          u(ia * K + (jb + k) % K, ja * K + jb) += eij;
      }
  }
  return PremeasurementSetup(o, std::move(pointer_obs), std::move(initial),
                             std::move(u), tol);
}

CompositeState evolve(const PremeasurementSetup& setup,
                      const ComplexVector& object_state, const Tolerance& tol) {
  if (object_state.dim() != setup.object_dim()) {
    std::ostringstream msg;
    msg << "object state has dimension " << object_state.dim() << ", expected "
        << setup.object_dim();
    throw Error(ErrorKind::kDimMismatch, msg.str());
  }
  if (!object_state.all_finite())
    throw Error(ErrorKind::kNonFinite, "object state has non-finite entries");
  if (std::abs(object_state.norm() - 1.0) > tol.eps_eq)
    throw Error(ErrorKind::kNotUnit, "object state is not a unit vector");
  ComplexVector joint = kron(object_state, setup.initial_pointer());
  return CompositeState(setup.unitary() * joint, setup.object_dim(),
                        setup.pointer_dim(), tol);
}

ComplexVector apply_pointer_operator(const CompositeState& state,
                                     const ComplexMatrix& f) {
  if (f.rows() != state.pointer_dim || f.cols() != state.pointer_dim)
    throw Error(ErrorKind::kDimMismatch,
                "pointer operator has the wrong dimension");
  const std::size_t da = state.object_dim;
  const std::size_t db = state.pointer_dim;
  ComplexVector out(da * db);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t i = 0; i < db; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < db; ++j)
        s += f(i, j) * state.vector[a * db + j];
      out[a * db + i] = s;
    }
  return out;
}

std::vector<double> branch_probabilities(const PremeasurementSetup& setup,
                                         const CompositeState& state) {
  if (state.object_dim != setup.object_dim() ||
      state.pointer_dim != setup.pointer_dim())
    throw Error(ErrorKind::kDimMismatch,
                "state does not match the setup's composite space");
  std::vector<double> probs(setup.outcome_count(), 0.0);
  for (std::size_t k = 0; k < setup.outcome_count(); ++k) {
    const ComplexVector branch =
        apply_pointer_operator(state, setup.pointer_observable().projector(k));
    const double n = branch.norm();
    probs[k] = n * n;
  }
  return probs;
}

bool check_calibration(const PremeasurementSetup& setup, std::size_t k,
                       std::size_t trials, std::uint64_t seed,
                       const Tolerance& tol) {
  if (k >= setup.outcome_count()) {
    std::ostringstream msg;
    msg << "outcome index " << k << " out of range "
        << setup.outcome_count();
    throw Error(ErrorKind::kIndexOutOfRange, msg.str());
  }
  Rng rng(seed);
  const ComplexMatrix& e = setup.object_observable().projector(k);
  const ComplexMatrix& f = setup.pointer_observable().projector(k);
  for (std::size_t t = 0; t < trials; ++t) {
    const ComplexVector psi = random_unit_in_range(e, rng);
    const CompositeState evolved = evolve(setup, psi, tol);
    const ComplexVector projected = apply_pointer_operator(evolved, f);
    if ((projected - evolved.vector).norm() > tol.eps_eq) return false;
  }
  return true;
}

SpectralForm coarse_pointer(const PremeasurementSetup& setup,
                            const IndexSurjection& s,
                            const std::vector<double>& coarse_values,
                            const Tolerance& tol) {
  return coarsen_by_map(setup.pointer_observable(), s, coarse_values, tol);
}

namespace {

// Sum of the projectors of `o` over the preimage of l under s.
ComplexMatrix class_projector(const SpectralForm& o, const IndexSurjection& s,
                              std::size_t l) {
  ComplexMatrix sum(o.dim(), o.dim());
  for (std::size_t k = 0; k < s.fine_count; ++k)
    if (s.image[k] == l) sum = sum + o.projector(k);
  return sum;
}

void require_surjection_matches(const PremeasurementSetup& setup,
                                const IndexSurjection& s) {
  if (s.fine_count != setup.outcome_count()) {
    std::ostringstream msg;
    msg << "surjection covers " << s.fine_count << " outcomes, setup has "
        << setup.outcome_count();
    throw Error(ErrorKind::kCountMismatch, msg.str());
  }
}

}  // namespace

bool check_coarse_calibration(const PremeasurementSetup& setup,
                              const IndexSurjection& s, std::size_t l,
                              std::size_t trials, std::uint64_t seed,
                              const Tolerance& tol) {
  require_surjection_matches(setup, s);
  if (l >= s.coarse_count) {
    std::ostringstream msg;
    msg << "coarse index " << l << " out of range " << s.coarse_count;
    throw Error(ErrorKind::kIndexOutOfRange, msg.str());
  }
  const ComplexMatrix e_coarse =
      class_projector(setup.object_observable(), s, l);
  const ComplexMatrix f_coarse =
      class_projector(setup.pointer_observable(), s, l);
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const ComplexVector psi = random_unit_in_range(e_coarse, rng);
    const CompositeState evolved = evolve(setup, psi, tol);
    const ComplexVector projected = apply_pointer_operator(evolved, f_coarse);
    if ((projected - evolved.vector).norm() > tol.eps_eq) return false;
  }
  return true;
}

std::optional<MeasurementOutcome> collapse(const CompositeState& state,
                                           const PremeasurementSetup& setup,
                                           std::size_t k, const Tolerance& tol) {
  if (state.object_dim != setup.object_dim() ||
      state.pointer_dim != setup.pointer_dim())
    throw Error(ErrorKind::kDimMismatch,
                "state does not match the setup's composite space");
  if (k >= setup.outcome_count()) {
    std::ostringstream msg;
    msg << "outcome index " << k << " out of range " << setup.outcome_count();
    throw Error(ErrorKind::kIndexOutOfRange, msg.str());
  }
  const ComplexVector branch =
      apply_pointer_operator(state, setup.pointer_observable().projector(k));
  const double n = branch.norm();
  const double p = n * n;
  if (p <= tol.eps_eq) return std::nullopt;

  MeasurementOutcome out;
  out.fine_index = k;
  out.fine_value = setup.object_observable().value(k);
  out.probability = p;
  out.post_state = CompositeState(cplx(1.0 / n, 0.0) * branch,
                                  state.object_dim, state.pointer_dim, tol);
  return out;
}

bool check_coarse_result_consistency(const PremeasurementSetup& setup,
                                     const IndexSurjection& s,
                                     const CompositeState& state,
                                     std::size_t k, const Tolerance& tol) {
  require_surjection_matches(setup, s);
  if (k >= setup.outcome_count()) {
    std::ostringstream msg;
    msg << "outcome index " << k << " out of range " << setup.outcome_count();
    throw Error(ErrorKind::kIndexOutOfRange, msg.str());
  }
  std::optional<MeasurementOutcome> fine = collapse(state, setup, k, tol);
  if (!fine) {
    std::ostringstream msg;
    msg << "branch " << k << " has zero probability; nothing to compare";
    throw Error(ErrorKind::kZeroProbabilityBranch, msg.str());
  }
  const ComplexMatrix f_coarse =
      class_projector(setup.pointer_observable(), s, s.image[k]);
  const ComplexVector projected =
      apply_pointer_operator(fine->post_state, f_coarse);
  return (projected - fine->post_state.vector).norm() <= tol.eps_eq;
}

SimultaneousOutcome simultaneous_measure(const SpectralForm& o1,
                                         const SpectralForm& o2,
                                         const ComplexVector& object_state,
                                         Rng& rng, const Tolerance& tol) {
  const CommonRefinement mcr = maximal_common_refinement(o1, o2, tol);
  const PremeasurementSetup setup = build_premeasurement(mcr.refined, tol);
  const CompositeState evolved = evolve(setup, object_state, tol);
  const std::vector<double> probs = branch_probabilities(setup, evolved);

  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t chosen = setup.outcome_count();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc && probs[k] > tol.eps_eq) {
      chosen = k;
      break;
    }
  }
  if (chosen == setup.outcome_count()) {
    // Rounding pushed u past the accumulated mass; take the last live branch.
    for (std::size_t k = probs.size(); k-- > 0;)
      if (probs[k] > tol.eps_eq) {
        chosen = k;
        break;
      }
  }

  std::optional<MeasurementOutcome> out = collapse(evolved, setup, chosen, tol);
  if (!out)
    throw Error(ErrorKind::kZeroProbabilityBranch,
                "sampled a branch with no weight; tolerances are inconsistent");
  SimultaneousOutcome result;
  result.outcome = std::move(*out);
  result.first_value = o1.value(mcr.onto_first.image[chosen]);
  result.second_value = o2.value(mcr.onto_second.image[chosen]);
  return result;
}

SimultaneousOutcome simultaneous_measure(const SpectralForm& o1,
                                         const SpectralForm& o2,
                                         const ComplexVector& object_state,
                                         std::uint64_t seed,
                                         const Tolerance& tol) {
  Rng rng(seed);
  return simultaneous_measure(o1, o2, object_state, rng, tol);
}

}  // namespace ovm
