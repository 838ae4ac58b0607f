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

#include "ovm/linalg.hpp"

namespace ovm {

// Deterministic seedable generator (SplitMix64). Sampling must reproduce
// bit-for-bit across platforms and runs, which rules out std::mt19937's
// distribution wrappers; the few distributions needed are implemented here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // Standard complex Gaussian (independent N(0, 1) real and imaginary
  // parts), via one Box-Muller pair.
  cplx gaussian_complex() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    return cplx(r * std::cos(theta), r * std::sin(theta));
  }

  double gaussian() { return gaussian_complex().real(); }

  ComplexVector gaussian_vector(std::size_t dim) {
    ComplexVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = gaussian_complex();
    return v;
  }

 private:
  std::uint64_t state_;
};

// Uniform unit vector in the range of a projector: project a Gaussian vector
// and normalize, redrawing on the measure-zero event of a negligible
// projection.
ComplexVector random_unit_in_range(const ComplexMatrix& projector, Rng& rng);

// Haar-like random unitary: Gram-Schmidt of a Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

}  // namespace ovm
