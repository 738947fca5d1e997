# -*- coding: utf-8 -*-
"""
Tests for the group action, certificates and the Type classification.
"""

import pytest
from hypothesis import given, settings

from rcspaces.catalog import named, type_space
from rcspaces.equivalence import (
    are_affine_equivalent,
    are_equivalent,
    block_params,
    canonical_form,
    classify_type,
    cycle,
    default_generators,
    find_embedding,
    group_order,
    orbit,
    profile,
    stabilizer_count,
    transform,
    transvection,
)
from rcspaces.gf2core import BitMatrix, identity, inverse, matmul
from rcspaces.matspace import MatSubspace, span

from .strategies import acted_subspaces


@pytest.fixture(scope="module")
def shear():
    return BitMatrix.from_rows([[1, 0, 0], [1, 1, 0], [0, 1, 1]])


def _line(rows):
    M = BitMatrix.from_rows(rows)
    return span([M], *M.shape)


def test_generators():
    assert transvection(2) == BitMatrix.from_rows([[1, 1], [0, 1]])
    assert matmul(cycle(3), matmul(cycle(3), cycle(3))) == identity(3)
    assert len(default_generators(3, 1)) == 2
    assert default_generators(1, 1) == []


def test_transform_matrix(shear):
    M = BitMatrix.from_rows([[1, 0, 1], [0, 0, 1], [1, 1, 0]])
    result = transform(M, shear, identity(3))
    assert result == matmul(shear, M)
    assert transform(result, inverse(shear), identity(3)) == M


def test_transform_errors(shear):
    with pytest.raises(ValueError, match="do not act"):
        transform(MatSubspace.full(2, 2), shear, identity(2))


def test_trivial_orbits():
    assert len(orbit(MatSubspace.full(3, 3))) == 1
    assert len(orbit(MatSubspace.zero(2, 3))) == 1
    assert len(orbit(MatSubspace.full(1, 1))) == 1


def test_orbits_of_lines():
    """Lines of Mat_2 spanned by one matrix: nine of rank 1, six of rank 2."""
    assert len(orbit(_line([[1, 0], [0, 0]]))) == 9
    assert len(orbit(_line([[1, 0], [0, 1]]))) == 6


def test_orbit_stabilizer():
    S = _line([[1, 0], [0, 0]])
    assert len(orbit(S)) * stabilizer_count(S) == group_order(2, 2) == 36
    assert stabilizer_count(MatSubspace.full(2, 2)) == 36


def test_orbit_limit():
    with pytest.raises(ValueError, match="n\\*p <= 12"):
        orbit(MatSubspace.zero(4, 4))


def test_certificate_of_transformed_space(shear):
    S = named("V2")
    Q = BitMatrix.from_rows([[0, 1], [1, 1]])
    T = transform(S, shear, Q)
    certificate = are_equivalent(S, T)
    assert certificate is not None
    assert transform(S, *certificate) == T
    assert canonical_form(S) == canonical_form(T)


def test_inequivalent_spaces():
    assert are_equivalent(named("alt", r=3), named("U3")) is None
    assert are_equivalent(type_space(1, 1, 1), type_space(2)) is None


def test_known_equivalences():
    assert are_equivalent(named("H3perp"), named("U3")) is not None
    assert find_embedding(named("G3perp"), named("J3")) is not None
    assert find_embedding(named("alt", r=3), named("J3")) is None
    assert find_embedding(MatSubspace.full(2, 2), MatSubspace.zero(2, 2)) is None


def test_equivalence_errors():
    with pytest.raises(ValueError, match="shape mismatch"):
        are_equivalent(MatSubspace.full(2, 2), MatSubspace.full(2, 3))
    with pytest.raises(ValueError, match="n, p <= 4"):
        are_equivalent(MatSubspace.full(5, 1), MatSubspace.full(5, 1))


def test_affine_equivalence():
    C = named("affine-C")
    J = named("affine-J")
    assert are_affine_equivalent(C, J) is None
    P = BitMatrix.from_rows([[0, 1], [1, 1]])
    moved = transform(J, P, identity(2))
    certificate = are_affine_equivalent(J, moved)
    assert certificate is not None
    assert transform(J, *certificate) == moved


def test_profile():
    prof = profile(named("alt", r=3))
    assert prof.rank_counts() == {0: 1, 2: 7}
    assert prof.reduced_dims == (0, 3)
    assert profile(named("H3perp")) == profile(named("U3"))


@settings(max_examples=200, deadline=None)
@given(acted_subspaces(max_rows=3, max_cols=3))
def test_profile_invariant_under_action(triple):
    S, P, Q = triple
    assert profile(transform(S, P, Q)) == profile(S)


def test_block_params():
    assert block_params(1, 3, 3) == (1, 1)
    assert block_params(3, 3, 4) == (0, 2)
    assert block_params(7, 3, 4) == (0, 0)
    assert block_params(7, 3, 3) is None
    with pytest.raises(ValueError, match="unknown type"):
        block_params(8, 3, 3)


@pytest.mark.parametrize("type_id", [1, 2, 3, 4, 5, 6])
def test_classify_representatives(type_id):
    S = type_space(type_id, *block_params(type_id, 3, 3))
    report = classify_type(S)
    assert report.type_id == type_id
    assert report.label == f"Type {type_id}"
    assert transform(S, *report.certificate) == S


def test_classify_h4():
    report = classify_type(named("H4"))
    assert report.type_id == 7
    assert report.is_special


def test_classify_non_special():
    report = classify_type(MatSubspace.full(3, 3))
    assert not report.is_special
    assert report.label == "NonSpecial"
    assert report.reason == "codimension precondition"
