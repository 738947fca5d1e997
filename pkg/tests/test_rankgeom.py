# -*- coding: utf-8 -*-
"""
Tests for ranks, primitivity and the census of affine spaces with lower-rank 2.
"""

import pytest
from hypothesis import given, settings

from rcspaces.catalog import named
from rcspaces.equivalence import transform
from rcspaces.gf2core import BitMatrix
from rcspaces.matspace import MatSubspace, span
from rcspaces.rankgeom import (
    check_uniqueness_prop,
    classify_affine_lrk2,
    column_compressions,
    has_corner_compression,
    i_np,
    is_primitive,
    lower_rank,
    row_compressions,
    tilde,
    upper_rank,
)

from .strategies import acted_affine_spaces


def test_upper_rank():
    assert upper_rank(named("alt", r=3)) == 2
    assert upper_rank(named("I3perp")) == 3
    assert upper_rank(MatSubspace.full(2, 3)) == 2
    assert upper_rank(MatSubspace.zero(3, 3)) == 0
    with pytest.raises(ValueError, match="dim <= 14"):
        upper_rank(MatSubspace.full(4, 4))


def test_lower_rank():
    assert lower_rank(named("F3-affine")) == 2
    assert lower_rank(named("affine-C")) == 2
    assert lower_rank(named("affine-J")) == 2
    assert lower_rank(named("V2")) == 0


@settings(max_examples=200, deadline=None)
@given(acted_affine_spaces(max_rows=3, max_cols=3))
def test_lower_rank_invariant_under_action(triple):
    A, P, Q = triple
    assert lower_rank(transform(A, P, Q)) == lower_rank(A)


def test_corner_constructions():
    sym2 = named("sym", r=2)
    padded = tilde(sym2, 3, 4)
    assert padded.shape == (3, 4)
    assert padded.dim == sym2.dim
    with pytest.raises(ValueError, match="does not fit"):
        tilde(sym2, 1, 4)
    embedded = i_np(named("affine-C"), 3, 3)
    assert embedded.codim == 3
    assert lower_rank(embedded) == 2
    assert i_np(sym2, 3, 3).codim == sym2.codim


def test_compressions():
    S = named("U3")
    assert len(row_compressions(S)) == 7
    assert len(column_compressions(S)) == 7
    assert all(T.shape == (2, 3) for T in row_compressions(S))


def test_primitivity():
    assert is_primitive(named("U3"))
    assert is_primitive(named("alt", r=3))
    assert not is_primitive(named("V2"))
    assert not is_primitive(MatSubspace.zero(2, 2))
    with pytest.raises(ValueError, match="n, p <= 4"):
        is_primitive(MatSubspace.full(5, 1))


def test_corner_compression():
    """Matrices supported on the first row and column map a hyperplane into a line."""
    cross = span(
        [
            BitMatrix.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
            BitMatrix.from_rows([[0, 1, 1], [0, 0, 0], [0, 0, 0]]),
            BitMatrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 0, 0]]),
            BitMatrix.from_rows([[0, 0, 0], [0, 0, 0], [1, 0, 0]]),
        ],
        3,
        3,
    )
    assert has_corner_compression(cross)
    assert not has_corner_compression(MatSubspace.full(3, 3))


def test_census_mat2():
    """Mat_2 has two classes: nine pairs differing by a transvection, six by an order-3 element."""
    report = classify_affine_lrk2(2, 2)
    assert report.passed
    assert report.class_count == 2
    sizes = dict(zip(report.classes["name"], report.classes["orbit_size"]))
    assert sizes == {"affine-C": 6, "affine-J": 9}
    assert report.survivors == 15
    assert report.unmatched == 0
    assert all(text.startswith("affmatspace 2 2 1") for text in report.classes["representative"])


def test_census_mat23():
    report = classify_affine_lrk2(2, 3)
    assert report.passed
    assert report.class_count == 3


def test_census_shard_is_partial():
    report = classify_affine_lrk2(2, 2, shard=0, shards=2)
    assert not report.complete
    assert report.unmatched == 0
    assert report.survivors <= 15


def test_census_shapes():
    with pytest.raises(ValueError, match="supports shapes"):
        classify_affine_lrk2(4, 4)


@pytest.mark.slow
def test_census_mat3():
    report = classify_affine_lrk2(3, 3)
    assert report.passed
    assert report.class_count == 5


def test_uniqueness():
    assert check_uniqueness_prop(2, 2)
    assert check_uniqueness_prop(2, 3)
    with pytest.raises(ValueError, match="2 <= n, p <= 3"):
        check_uniqueness_prop(4, 2)
