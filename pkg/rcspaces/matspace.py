# -*- coding: utf-8 -*-
"""
Linear and affine subspaces of ``Mat_{n,p}(F2)``.

A matrix is identified with its row-major flattening (entry ``(i, j)`` in bit ``i * p + j``)
and a subspace is stored as the reduced echelon basis of the flattened generators, sorted by
pivot. Two :class:`MatSubspace` values are therefore equal exactly when they describe the same
subspace, which makes them usable as dictionary keys in orbit searches and censuses.

The trace pairing ``<A, B> = tr(B A)`` identifies the dual of ``Mat_{n,p}`` with
``Mat_{p,n}``; :func:`orthogonal` returns the orthogonal for that pairing.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .gf2core import (
    BitMatrix,
    BitVector,
    echelon,
    lowest_bit,
    nullspace_words,
    parity,
    reduce_against,
    transpose,
)

logger = logging.getLogger(__name__)

MAX_ELEMENT_DIM = 30
MAX_ENUM_AMBIENT = 12


@dataclass(frozen=True)
class MatSubspace:
    """
    A linear subspace of ``Mat_{n,p}(F2)`` in canonical form.

    The direct constructor trusts ``words`` to be a reduced echelon basis sorted by pivot;
    use :func:`span` or :meth:`from_words` for arbitrary generators.

    :param ambient_rows: ``n``
    :type ambient_rows: int

    :param ambient_cols: ``p``
    :type ambient_cols: int

    :param words: Flattened basis in reduced echelon form.
    :type words: tuple
    """

    ambient_rows: int
    ambient_cols: int
    words: Tuple[int, ...] = ()

    @classmethod
    def from_words(cls, n: int, p: int, words: Iterable[int]) -> "MatSubspace":
        return cls(n, p, echelon(words))

    @classmethod
    def zero(cls, n: int, p: int) -> "MatSubspace":
        return cls(n, p, ())

    @classmethod
    def full(cls, n: int, p: int) -> "MatSubspace":
        return cls(n, p, tuple(1 << i for i in range(n * p)))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.ambient_rows, self.ambient_cols)

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def codim(self) -> int:
        return self.ambient_rows * self.ambient_cols - len(self.words)

    @property
    def basis(self) -> Tuple[BitMatrix, ...]:
        return tuple(
            BitMatrix.from_flat(w, self.ambient_rows, self.ambient_cols) for w in self.words
        )

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(lowest_bit(w) for w in self.words)

    @cached_property
    def basis_map(self) -> Dict[int, int]:
        return {w & -w: w for w in self.words}

    def reduce_word(self, word: int) -> int:
        """Canonical representative of a flattened matrix modulo this subspace."""
        return reduce_against(self.basis_map, word)

    def contains_word(self, word: int) -> bool:
        return reduce_against(self.basis_map, word) == 0

    def contains(self, M: BitMatrix) -> bool:
        _check_shape(M, self.ambient_rows, self.ambient_cols)
        return self.contains_word(M.flat)

    def __contains__(self, M: BitMatrix) -> bool:
        return self.contains(M)

    def coordinates(self, M: BitMatrix) -> BitVector:
        """
        Coordinates of ``M`` in the stored basis.

        :raises ValueError: if ``M`` does not belong to the subspace.
        """
        if not self.contains(M):
            raise ValueError("matrix does not belong to the subspace")
        word = M.flat
        bits = 0
        for k, pivot in enumerate(self.pivots):
            bits |= ((word >> pivot) & 1) << k
        return BitVector(self.dim, bits)

    def element_words(self) -> Iterator[int]:
        return gray_words(self.words)

    def elements(self) -> Iterator[BitMatrix]:
        return enumerate_elements(self)

    def transpose(self) -> "MatSubspace":
        return transpose_space(self)

    def __str__(self) -> str:
        return (
            f"MatSubspace(shape={self.ambient_rows}x{self.ambient_cols}, "
            f"dim={self.dim}, codim={self.codim})"
        )


@dataclass(frozen=True)
class AffineMatSpace:
    """
    An affine subspace ``offset + direction`` of ``Mat_{n,p}(F2)``.

    ``offset_word`` is the canonical coset representative: its flattening is zero at every
    pivot of ``direction``. Build instances with :func:`affine`.
    """

    direction: MatSubspace
    offset_word: int = 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.direction.shape

    @property
    def offset(self) -> BitMatrix:
        return BitMatrix.from_flat(self.offset_word, *self.direction.shape)

    @property
    def dim(self) -> int:
        return self.direction.dim

    @property
    def codim(self) -> int:
        return self.direction.codim

    @property
    def contains_zero(self) -> bool:
        return self.offset_word == 0

    def contains(self, M: BitMatrix) -> bool:
        _check_shape(M, *self.direction.shape)
        return self.direction.reduce_word(M.flat) == self.offset_word

    def element_words(self) -> Iterator[int]:
        for word in gray_words(self.direction.words):
            yield word ^ self.offset_word

    def elements(self) -> Iterator[BitMatrix]:
        n, p = self.direction.shape
        for word in self.element_words():
            yield BitMatrix.from_flat(word, n, p)

    def span(self) -> MatSubspace:
        """The linear span ``direction + F2 * offset``."""
        n, p = self.direction.shape
        return MatSubspace.from_words(n, p, self.direction.words + (self.offset_word,))

    def __str__(self) -> str:
        n, p = self.direction.shape
        return f"AffineMatSpace(shape={n}x{p}, dim={self.dim}, codim={self.codim})"


def _check_shape(M: BitMatrix, n: int, p: int) -> None:
    if M.shape != (n, p):
        raise ValueError(f"matrix has shape {M.shape}, expected {(n, p)}")


def _column_word(rows: Sequence[int], j: int) -> int:
    word = 0
    for i, row in enumerate(rows):
        word |= ((row >> j) & 1) << i
    return word


def _rows_of(word: int, n: int, p: int) -> List[int]:
    mask = (1 << p) - 1
    return [(word >> (i * p)) & mask for i in range(n)]


def _flatten(rows: Sequence[int], p: int) -> int:
    word = 0
    for i, row in enumerate(rows):
        word |= row << (i * p)
    return word


def _place(
    word: int, n: int, p: int, n_total: int, p_total: int, row_off: int, col_off: int
) -> int:
    placed = 0
    for i, row in enumerate(_rows_of(word, n, p)):
        placed |= (row << col_off) << ((i + row_off) * p_total)
    return placed


def transpose_word(word: int, n: int, p: int) -> int:
    """Flattening of the transpose of the ``n x p`` matrix flattened as ``word``."""
    out = 0
    for i, row in enumerate(_rows_of(word, n, p)):
        j = 0
        while row:
            if row & 1:
                out |= 1 << (j * n + i)
            row >>= 1
            j += 1
    return out


def gray_words(basis: Sequence[int]) -> Iterator[int]:
    """Yields every combination of ``basis`` once, consecutive values differing by one generator."""
    current = 0
    yield current
    for i in range(1, 1 << len(basis)):
        current ^= basis[lowest_bit(i)]
        yield current


def gaussian_binomial(n: int, k: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F2^n``."""
    if k < 0 or k > n:
        return 0
    numerator = 1
    denominator = 1
    for i in range(k):
        numerator *= (1 << (n - i)) - 1
        denominator *= (1 << (i + 1)) - 1
    return numerator // denominator


def subspace_count(n: int, p: int, k: int) -> int:
    return gaussian_binomial(n * p, k)


def span(mats: Sequence[BitMatrix], n: int, p: int) -> MatSubspace:
    """
    Smallest subspace of ``Mat_{n,p}`` containing ``mats``.

    :raises ValueError: if a matrix does not have shape ``(n, p)``.

    Example:
        >>> from rcspaces.gf2core import BitMatrix
        >>> sym = span([BitMatrix.from_rows([[1, 0], [0, 0]]),
        ...             BitMatrix.from_rows([[0, 1], [1, 0]]),
        ...             BitMatrix.from_rows([[0, 0], [0, 1]])], 2, 2)
        >>> sym.dim
        3
    """
    for M in mats:
        _check_shape(M, n, p)
    return MatSubspace.from_words(n, p, (M.flat for M in mats))


def subspace_sum(A: MatSubspace, B: MatSubspace) -> MatSubspace:
    if A.shape != B.shape:
        raise ValueError(f"cannot add subspaces of shapes {A.shape} and {B.shape}")
    return MatSubspace.from_words(A.ambient_rows, A.ambient_cols, A.words + B.words)


def intersect(A: MatSubspace, B: MatSubspace) -> MatSubspace:
    if A.shape != B.shape:
        raise ValueError(f"cannot intersect subspaces of shapes {A.shape} and {B.shape}")
    n_bits = A.ambient_rows * A.ambient_cols
    dual = nullspace_words(A.words, n_bits) + nullspace_words(B.words, n_bits)
    return MatSubspace.from_words(A.ambient_rows, A.ambient_cols, nullspace_words(dual, n_bits))


def contains(S: MatSubspace, M: BitMatrix) -> bool:
    return S.contains(M)


def transpose_space(S: MatSubspace) -> MatSubspace:
    n, p = S.shape
    return MatSubspace.from_words(p, n, (transpose_word(w, n, p) for w in S.words))


def orthogonal(S: MatSubspace) -> MatSubspace:
    """
    Orthogonal of ``S`` for the trace pairing.

    The result lives in ``Mat_{p,n}`` and consists of all ``B`` with ``tr(B A) = 0`` for every
    ``A`` in ``S``; ``dim S + dim S^perp = n p``.
    """
    n, p = S.shape
    dual = nullspace_words(S.words, n * p)
    return MatSubspace.from_words(p, n, (transpose_word(w, n, p) for w in dual))


def vee(A: MatSubspace, B: MatSubspace) -> MatSubspace:
    """
    The space of block matrices ``[[a, c], [0, b]]`` with ``a`` in ``A``, ``b`` in ``B`` and
    ``c`` arbitrary.
    """
    m, p = A.shape
    n, q = B.shape
    n_total, p_total = m + n, p + q
    words = [_place(w, m, p, n_total, p_total, 0, 0) for w in A.words]
    words += [_place(w, n, q, n_total, p_total, m, p) for w in B.words]
    words += [1 << (i * p_total + p + j) for i in range(m) for j in range(q)]
    return MatSubspace.from_words(n_total, p_total, words)


def coprod(A: MatSubspace, B: MatSubspace) -> MatSubspace:
    """
    The space of juxtapositions ``[a b]`` with ``a`` in ``A`` and ``b`` in ``B``.

    :raises ValueError: if the row counts differ.
    """
    if A.ambient_rows != B.ambient_rows:
        raise ValueError(
            f"coprod requires equal row counts, got {A.ambient_rows} and {B.ambient_rows}"
        )
    n, p = A.shape
    q = B.ambient_cols
    words = [_place(w, n, p, n, p + q, 0, 0) for w in A.words]
    words += [_place(w, n, q, n, p + q, 0, p) for w in B.words]
    return MatSubspace.from_words(n, p + q, words)


def apply(S: MatSubspace, x: BitVector) -> MatSubspace:
    """
    The subspace ``S x`` of ``F2^n``, as a space of ``n x 1`` matrices.

    :raises ValueError: if ``x`` does not have ``p`` coordinates.
    """
    n, p = S.shape
    if x.length != p:
        raise ValueError(f"vector has length {x.length}, expected {p}")
    return MatSubspace.from_words(n, 1, (_apply_word(w, n, p, x.bits) for w in S.words))


def _apply_word(word: int, n: int, p: int, x: int) -> int:
    image = 0
    for i, row in enumerate(_rows_of(word, n, p)):
        image |= parity(row & x) << i
    return image


def common_kernel(S: MatSubspace) -> MatSubspace:
    """Intersection of the kernels of the elements of ``S``, as ``p x 1`` matrices."""
    n, p = S.shape
    rows = [row for w in S.words for row in _rows_of(w, n, p)]
    return MatSubspace.from_words(p, 1, nullspace_words(rows, p))


def total_image(S: MatSubspace) -> MatSubspace:
    """Sum of the ranges of the elements of ``S``, as ``n x 1`` matrices."""
    n, p = S.shape
    cols = [_column_word(_rows_of(w, n, p), j) for w in S.words for j in range(p)]
    return MatSubspace.from_words(n, 1, cols)


def is_reduced(S: MatSubspace) -> bool:
    n, p = S.shape
    return common_kernel(S).dim == 0 and total_image(S).dim == n


def reduce(S: MatSubspace) -> Tuple[MatSubspace, int, int]:
    """
    Reduced operator space associated with ``S``.

    Columns are restricted to the standard coordinates that are not pivots of the common
    kernel; ranges are expressed in the echelon basis of the total image.

    :return: ``(reduced, u0_dim, v0_dim)``
    :rtype: tuple

    Example:
        >>> from rcspaces.catalog import named
        >>> reduced, u0, v0 = reduce(named("sym", r=2))
        >>> (reduced.shape, u0, v0)
        ((2, 2), 0, 2)
    """
    n, p = S.shape
    kernel = common_kernel(S)
    kernel_pivots = 0
    for pivot in kernel.pivots:
        kernel_pivots |= 1 << pivot
    kept = [j for j in range(p) if not (kernel_pivots >> j) & 1]
    image = total_image(S)
    image_pivots = image.pivots
    n_red, p_red = len(image_pivots), len(kept)
    words = []
    for w in S.words:
        rows = _rows_of(w, n, p)
        columns = [_column_word(rows, j) for j in kept]
        new_rows = []
        for pivot in image_pivots:
            row = 0
            for idx, col in enumerate(columns):
                row |= ((col >> pivot) & 1) << idx
            new_rows.append(row)
        words.append(_flatten(new_rows, p_red))
    reduced = MatSubspace.from_words(n_red, p_red, words)
    return reduced, kernel.dim, image.dim


def hat(S: MatSubspace) -> MatSubspace:
    """
    The space of evaluation maps ``s -> s x`` written as ``n x d`` coefficient matrices.

    For each standard vector ``e_k`` of ``F2^p`` the generator has ``s_j e_k`` as ``j``-th
    column, ``(s_1, ..., s_d)`` being the stored basis of ``S``.
    """
    n, p = S.shape
    d = S.dim
    all_rows = [_rows_of(w, n, p) for w in S.words]
    words = []
    for k in range(p):
        word = 0
        for j, rows in enumerate(all_rows):
            for i, row in enumerate(rows):
                if (row >> k) & 1:
                    word |= 1 << (i * d + j)
        words.append(word)
    return MatSubspace.from_words(n, d, words)


def quotient_word(word: int, n: int, p: int, y: int) -> int:
    """
    Flattening of ``pi o s`` for ``pi : F2^n -> F2^n / F2 y``, dropping the pivot row of ``y``.
    """
    j0 = lowest_bit(y)
    rows = _rows_of(word, n, p)
    pivot_row = rows[j0]
    kept = [row ^ pivot_row if (y >> i) & 1 else row for i, row in enumerate(rows) if i != j0]
    return _flatten(kept, p)


def quotient_vector(v: int, y: int) -> int:
    """Coordinates of ``v mod F2 y`` in the complement basis used by :func:`quotient_mod`."""
    j0 = lowest_bit(y)
    if (v >> j0) & 1:
        v ^= y
    low = v & ((1 << j0) - 1)
    return low | ((v >> (j0 + 1)) << j0)


def quotient_mod(S: MatSubspace, y: BitVector) -> MatSubspace:
    """
    The space ``S mod F2 y`` of operators into ``F2^n / F2 y``.

    The quotient is identified with the standard coordinates other than the lowest set bit
    ``j0`` of ``y``, through ``v -> v + v_{j0} y``.

    :raises ValueError: if ``y`` is zero or has the wrong length.
    """
    n, p = S.shape
    if y.length != n:
        raise ValueError(f"vector has length {y.length}, expected {n}")
    if not y.bits:
        raise ValueError("quotient_mod requires a non-zero vector")
    return MatSubspace.from_words(n - 1, p, (quotient_word(w, n, p, y.bits) for w in S.words))


def enumerate_elements(S: MatSubspace) -> Iterator[BitMatrix]:
    """
    Yields all ``2^dim`` elements of ``S`` in Gray-code order.

    :raises ValueError: if ``dim S`` exceeds 30.
    """
    if S.dim > MAX_ELEMENT_DIM:
        raise ValueError(f"enumerate_elements requires dim <= {MAX_ELEMENT_DIM}, got {S.dim}")
    n, p = S.shape
    for word in gray_words(S.words):
        yield BitMatrix.from_flat(word, n, p)


def echelon_forms(
    n_bits: int, k: int, start: int = 0, stop: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """
    Reduced echelon bases of the ``k``-dimensional subspaces of ``F2^n_bits``, in canonical
    order, restricted to the index range ``[start, stop)``.

    Pivot sets are visited in lexicographic order; within a pivot set the free entries are
    read off the bits of a counter.
    """
    index = 0
    for pivots in combinations(range(n_bits), k):
        if stop is not None and index >= stop:
            return
        pivot_mask = 0
        for c in pivots:
            pivot_mask |= 1 << c
        free = [[j for j in range(c + 1, n_bits) if not (pivot_mask >> j) & 1] for c in pivots]
        block = 1 << sum(len(cols) for cols in free)
        if index + block <= start:
            index += block
            continue
        lo = max(start - index, 0)
        hi = block if stop is None else min(stop - index, block)
        for counter in range(lo, hi):
            bits = counter
            words = []
            for c, cols in zip(pivots, free):
                word = 1 << c
                for j in cols:
                    if bits & 1:
                        word |= 1 << j
                    bits >>= 1
                words.append(word)
            yield tuple(words)
        index += block


def shard_range(total: int, shard: int, shards: int) -> Tuple[int, int]:
    """Contiguous index range covered by ``shard`` out of ``shards``."""
    if shards < 1 or not 0 <= shard < shards:
        raise ValueError(f"invalid shard {shard} of {shards}")
    return shard * total // shards, (shard + 1) * total // shards


def enumerate_subspaces(
    n: int, p: int, k: int, shard: int = 0, shards: int = 1
) -> Iterator[MatSubspace]:
    """
    Yields every ``k``-dimensional subspace of ``Mat_{n,p}(F2)`` exactly once.

    With ``shards > 1`` only the ``shard``-th contiguous slice of the canonical order is
    produced; the slices of all shards partition the full enumeration.

    :raises ValueError: if ``n * p`` exceeds 12 or ``k`` is out of range.

    Example:
        >>> sum(1 for _ in enumerate_subspaces(2, 2, 2))
        35
    """
    n_bits = n * p
    if n_bits > MAX_ENUM_AMBIENT:
        raise ValueError(f"enumerate_subspaces requires n*p <= {MAX_ENUM_AMBIENT}, got {n_bits}")
    if not 0 <= k <= n_bits:
        raise ValueError(f"dimension k={k} out of range [0, {n_bits}]")
    start, stop = shard_range(gaussian_binomial(n_bits, k), shard, shards)
    logger.debug("enumerating %d-dim subspaces of Mat_%d,%d range [%d, %d)", k, n, p, start, stop)
    for words in echelon_forms(n_bits, k, start, stop):
        yield MatSubspace(n, p, words)


def affine(offset: BitMatrix, direction: MatSubspace) -> AffineMatSpace:
    """Affine space ``offset + direction`` with its offset normalised modulo ``direction``."""
    _check_shape(offset, *direction.shape)
    return AffineMatSpace(direction, direction.reduce_word(offset.flat))


def affine_from_words(
    n: int, p: int, offset_word: int, direction_words: Iterable[int]
) -> AffineMatSpace:
    direction = MatSubspace.from_words(n, p, direction_words)
    return AffineMatSpace(direction, direction.reduce_word(offset_word))
