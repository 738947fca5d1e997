# -*- coding: utf-8 -*-
"""
Tests for reflexive closures.
"""

import pytest
from hypothesis import given, settings

from rcspaces.catalog import named
from rcspaces.matspace import MatSubspace, hat, orthogonal, subspace_count, transpose_space
from rcspaces.rangecompat import rc_defect
from rcspaces.reflexivity import (
    TWO_DIM_COLUMNS,
    check_2dim_theorem,
    is_reflexive,
    rank_one_span,
    reflexive_closure,
    reflexivity_defect,
)

from .strategies import subspaces


def test_closure_of_e2():
    E2 = named("E2")
    closure = reflexive_closure(E2)
    assert closure.dim == 3
    assert all(closure.contains_word(w) for w in E2.words)


@pytest.mark.parametrize("name", ["E2", "E3", "E2T"])
def test_exceptional_defects(name):
    assert reflexivity_defect(named(name)) == 1
    assert not is_reflexive(named(name))


def test_reflexive_spaces():
    assert is_reflexive(MatSubspace.full(2, 3))
    assert is_reflexive(MatSubspace.zero(3, 2))
    assert reflexive_closure(named("sym", r=2)) == MatSubspace.full(2, 2)


def test_column_limit():
    with pytest.raises(ValueError, match="p <= 20"):
        reflexive_closure(MatSubspace.zero(1, 21))


def test_rank_one_span():
    assert rank_one_span(MatSubspace.full(2, 2)) == MatSubspace.full(2, 2)
    assert rank_one_span(named("alt", r=2)).dim == 0


def test_orthogonal_of_alternating():
    """dim V - dim V(1) for V = Mata_2 matches the defect of its orthogonal."""
    V = named("alt", r=2)
    assert orthogonal(V) == named("sym", r=2)
    assert reflexivity_defect(orthogonal(V)) == V.dim - rank_one_span(V).dim == 1


def test_hat_duality_on_e2():
    assert rc_defect(hat(named("E2"))) == reflexivity_defect(named("E2")) == 1


def test_two_dim_classification_small():
    """Every 2-dimensional space of Mat_2 and Mat_2,3 falls in the case of its reduction."""
    square = check_2dim_theorem(2, 2)
    assert square.passed
    assert square.counts.get("i", 0) > 0
    wide = check_2dim_theorem(2, 3)
    assert wide.passed
    assert wide.counts.get("ii", 0) > 0
    assert list(wide.table.columns) == TWO_DIM_COLUMNS


@pytest.mark.parametrize("shape", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_two_dim_classification_covers_every_space(shape):
    """Non-reduced spaces are reduced and classified instead of being dropped."""
    n, p = shape
    report = check_2dim_theorem(n, p)
    assert len(report.table) == subspace_count(n, p, 2)
    assert report.reductions == int(report.table["reduced"].sum())
    assert report.passed


def test_two_dim_classification_reduces_wide_spaces():
    report = check_2dim_theorem(2, 3)
    assert len(report.table) == 651
    assert report.reductions == 231
    reduced_rows = report.table[report.table["reduced"]]
    assert set(reduced_rows["reduced_shape"]) <= {(1, 2), (2, 1), (2, 2)}
    assert (reduced_rows["case"] == "i").any()


def test_two_dim_classification_bounds():
    with pytest.raises(ValueError, match="1 <= n, p <= 3"):
        check_2dim_theorem(4, 1)


@pytest.mark.slow
def test_two_dim_classification_square_three():
    report = check_2dim_theorem(3, 3)
    assert report.passed
    assert report.counts.get("iii", 0) > 0


@settings(max_examples=25, deadline=None)
@given(subspaces(max_rows=3, max_cols=3))
def test_defect_equals_hat_defect(S):
    assert reflexivity_defect(S) == rc_defect(hat(S))


@settings(max_examples=25, deadline=None)
@given(subspaces(max_rows=3, max_cols=3))
def test_defect_invariant_under_transposition(S):
    assert reflexivity_defect(S) == reflexivity_defect(transpose_space(S))
