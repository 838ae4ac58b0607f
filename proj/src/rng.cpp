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

#include "ovm/rng.hpp"

#include <cmath>

namespace ovm {

ComplexVector random_unit_in_range(const ComplexMatrix& projector, Rng& rng) {
  if (!projector.square())
    throw Error(ErrorKind::kNotSquare, "projector must be square");
  for (int attempt = 0; attempt < 64; ++attempt) {
    ComplexVector w = projector * rng.gaussian_vector(projector.rows());
    const double n = w.norm();
    if (n > 1e-8) return (cplx(1.0 / n, 0.0)) * w;
  }
  throw Error(ErrorKind::kNotAProjector,
              "range sampling kept collapsing; projector is likely zero");
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  ComplexMatrix u(dim, dim);
  std::vector<ComplexVector> basis;
  basis.reserve(dim);
  while (basis.size() < dim) {
    ComplexVector v = rng.gaussian_vector(dim);
    for (const ComplexVector& b : basis) v = v - inner(b, v) * b;
    const double n = v.norm();
    if (n <= 1e-8) continue;  // dependent draw, retry
    basis.push_back(cplx(1.0 / n, 0.0) * v);
  }
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = basis[j][i];
  return u;
}

}  // namespace ovm
