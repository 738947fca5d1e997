# -*- coding: utf-8 -*-
"""
Tests for the bit-packed linear algebra kernels.
"""

import numpy as np
import pytest
from hypothesis import given, settings

from rcspaces.gf2core import (
    BitMatrix,
    BitVector,
    enumerate_gl,
    express,
    gl_elements,
    gl_order,
    identity,
    inverse,
    left_kernel,
    matmul,
    matvec,
    nullspace,
    rank,
    rank_table,
    row_dependencies,
    rref,
    solve,
    transpose,
)

from .strategies import bit_matrices


@pytest.fixture(scope="module")
def lower_triangular():
    return BitMatrix.from_rows([[1, 0, 0], [1, 1, 0], [0, 1, 1]])


def test_bitmatrix_layout():
    """Column j of a row lives in bit j."""
    M = BitMatrix.from_rows([[0, 1, 1], [1, 0, 0]])
    assert M.rows == (6, 1)
    assert M.flat == 6 | (1 << 3)
    assert BitMatrix.from_flat(M.flat, 2, 3) == M
    assert str(M) == "011\n100"
    assert M.column(0) == BitVector(2, 2)


def test_bitmatrix_validation():
    """Row words wider than the column count are rejected."""
    with pytest.raises(ValueError, match="does not fit"):
        BitMatrix(1, 2, (4,))
    with pytest.raises(ValueError, match="expected 2 row words"):
        BitMatrix(2, 2, (1,))
    with pytest.raises(ValueError, match="do not fit"):
        BitVector(2, 4)


def test_array_conversion():
    array = np.array([[1, 0], [1, 1], [0, 1]], dtype=np.uint8)
    M = BitMatrix.from_array(array)
    assert M.shape == (3, 2)
    assert np.array_equal(M.to_array(), array)


def test_rank(lower_triangular):
    assert rank(lower_triangular) == 3
    assert rank(BitMatrix.from_rows([[1, 1], [1, 1]])) == 1
    assert rank(BitMatrix.zeros(3, 4)) == 0


def test_rref_transform(lower_triangular):
    """The returned transform maps the matrix onto its reduced form."""
    M = BitMatrix.from_rows([[0, 1, 1], [1, 1, 0], [1, 0, 1]])
    reduced, pivots, transform = rref(M)
    assert matmul(transform, M) == reduced
    assert pivots == [0, 1]
    assert reduced.rows[2] == 0


def test_inverse(lower_triangular):
    inv = inverse(lower_triangular)
    assert matmul(inv, lower_triangular) == identity(3)
    assert matmul(lower_triangular, inv) == identity(3)


def test_inverse_errors():
    with pytest.raises(ValueError, match="singular"):
        inverse(BitMatrix.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(ValueError, match="square"):
        inverse(BitMatrix.zeros(2, 3))


def test_gl_orders():
    """Group orders of GL_1, GL_2 and GL_3 over F2."""
    assert [gl_order(n) for n in (1, 2, 3)] == [1, 6, 168]
    for n in (1, 2, 3):
        elements = list(enumerate_gl(n))
        assert len(elements) == gl_order(n)
        assert len(set(elements)) == gl_order(n)
        assert all(rank(M) == n for M in elements)


def test_enumerate_gl_order():
    """Invertible matrices come in lexicographic order of their row words."""
    rows = [M.rows for M in enumerate_gl(3)]
    assert rows == sorted(rows)


def test_enumerate_gl_bounds():
    with pytest.raises(ValueError, match="1 <= n <= 5"):
        next(enumerate_gl(0))
    with pytest.raises(ValueError, match="1 <= n <= 5"):
        next(enumerate_gl(6))
    with pytest.raises(ValueError):
        gl_elements(5)


def test_solve():
    M = BitMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    b = BitVector.from_list([1, 0])
    x = solve(M, b)
    assert x is not None
    assert matvec(M, x) == b
    assert solve(BitMatrix.from_rows([[1, 1], [1, 1]]), BitVector.from_list([1, 0])) is None
    with pytest.raises(ValueError, match="right-hand side"):
        solve(M, BitVector(3, 0))


def test_kernels():
    M = BitMatrix.from_rows([[1, 1, 0], [1, 1, 0], [0, 0, 1]])
    kernel = nullspace(M)
    assert len(kernel) == 3 - rank(M)
    assert all(not matvec(M, x) for x in kernel)
    assert [y.bits for y in left_kernel(M)] == [0b011]
    assert row_dependencies([1, 2, 3]) == [0b111]


def test_express():
    assert express([1, 2], [3, 4, 0]) == [0b11, None, 0]


def test_rank_table():
    """Mat_2 has one zero matrix, nine of rank 1 and six invertible ones."""
    table = rank_table(2, 2)
    assert np.bincount(table).tolist() == [1, 9, 6]
    assert not table.flags.writeable
    with pytest.raises(ValueError, match="n\\*p <= 16"):
        rank_table(5, 4)


@settings(max_examples=50, deadline=None)
@given(bit_matrices())
def test_transpose_preserves_rank(M):
    assert transpose(transpose(M)) == M
    assert rank(M) == rank(M.T)
    assert rank(M) <= min(M.shape)
