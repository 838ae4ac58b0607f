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

import numpy as np
import pytest

import overmeasure as ovm

Z = np.diag([1.0, -1.0]).astype(complex)
X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def test_spectral_form_of_pauli_z():
    o = ovm.from_matrix(Z)
    assert o.dim == 2
    assert o.term_count == 2
    assert o.values() == [-1.0, 1.0]
    np.testing.assert_allclose(o.projector(0), np.diag([0.0, 1.0]), atol=1e-12)
    np.testing.assert_allclose(o.matrix(), Z, atol=1e-12)


def test_rejects_non_hermitian_input():
    bad = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(ValueError, match="NotHermitian"):
        ovm.from_matrix(bad)


def test_compatibility():
    zi = ovm.from_matrix(np.kron(Z, I2))
    iz = ovm.from_matrix(np.kron(I2, Z))
    assert ovm.are_compatible(zi, iz)
    assert not ovm.are_compatible(ovm.from_matrix(Z), ovm.from_matrix(X))


def test_maximal_common_refinement_of_commuting_paulis():
    zi = ovm.from_matrix(np.kron(Z, I2))
    iz = ovm.from_matrix(np.kron(I2, Z))
    refined, onto_first, onto_second = ovm.maximal_common_refinement(zi, iz)
    assert refined.term_count == 4
    assert onto_first == [0, 0, 1, 1]
    assert onto_second == [0, 1, 0, 1]
    assert ovm.is_refinement(refined, zi) is not None
    assert ovm.is_refinement(refined, iz) is not None
    # Each refined projector has rank one.
    for k in range(4):
        p = refined.projector(k)
        assert abs(np.trace(p).real - 1.0) < 1e-9


def test_multi_refinement_matches_pairwise_fold():
    zi = ovm.from_matrix(np.kron(Z, I2))
    iz = ovm.from_matrix(np.kron(I2, Z))
    joint, maps = ovm.multi_common_refinement([zi, iz])
    pair, onto_first, onto_second = ovm.maximal_common_refinement(zi, iz)
    assert ovm.structural_eq(joint, pair)
    assert maps == [onto_first, onto_second]


def test_coarsening_by_square():
    o = ovm.from_matrix(np.diag([-1.0, 0.0, 1.0]).astype(complex))
    coarse, image = ovm.coarsen_by_function(o, lambda x: x * x)
    assert coarse.term_count == 2
    assert coarse.values() == [0.0, 1.0]
    assert image == [1, 0, 1]
    assert ovm.is_refinement(o, coarse) == [1, 0, 1]

    merged = ovm.coarsen_by_map(o, [0, 0, 1], [-5.0, 5.0])
    assert merged.values() == [-5.0, 5.0]
    np.testing.assert_allclose(
        merged.projector(0), np.diag([1.0, 1.0, 0.0]), atol=1e-12
    )


def test_complete_refinement_splits_degeneracies():
    o = ovm.from_matrix(np.diag([2.0, 2.0, 5.0]).astype(complex))
    fine = ovm.complete_refinement(o)
    assert fine.term_count == 3
    assert ovm.is_refinement(fine, o) is not None


def test_simultaneous_measurement_on_bell_state():
    zi = ovm.from_matrix(np.kron(Z, I2))
    iz = ovm.from_matrix(np.kron(I2, Z))
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1.0 / np.sqrt(2.0)

    outcomes = [
        ovm.simultaneous_measure(zi, iz, bell, seed=s) for s in range(200)
    ]
    for out in outcomes:
        # Perfect correlation: mixed signs never occur on this state.
        assert out["first_value"] == pytest.approx(out["second_value"])
        assert out["probability"] == pytest.approx(0.5, abs=1e-9)
        post = out["post_state"]
        assert np.linalg.norm(post) == pytest.approx(1.0, abs=1e-9)
    highs = sum(1 for out in outcomes if out["first_value"] > 0)
    assert 60 < highs < 140


def test_incompatible_pair_is_rejected():
    with pytest.raises(ValueError, match="NotCompatible"):
        ovm.simultaneous_measure(
            ovm.from_matrix(Z),
            ovm.from_matrix(X),
            np.array([1.0, 0.0], dtype=complex),
            seed=1,
        )
