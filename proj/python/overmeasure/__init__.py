# Copyright 2026 The Overmeasure Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Finite-dimensional observable algebra.

Spectral forms of Hermitian matrices, coarsening and refinement of
observables, compatibility tests, maximal common refinements, and seeded
simulation of simultaneous measurement.
"""

from ._core import (
    SpectralForm,
    Tolerance,
    are_compatible,
    coarsen_by_function,
    coarsen_by_map,
    complete_refinement,
    from_matrix,
    is_refinement,
    maximal_common_refinement,
    multi_common_refinement,
    simultaneous_measure,
    structural_eq,
)

__all__ = [
    "SpectralForm",
    "Tolerance",
    "are_compatible",
    "coarsen_by_function",
    "coarsen_by_map",
    "complete_refinement",
    "from_matrix",
    "is_refinement",
    "maximal_common_refinement",
    "multi_common_refinement",
    "simultaneous_measure",
    "structural_eq",
]

__version__ = "0.1.0"
