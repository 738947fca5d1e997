# -*- coding: utf-8 -*-
"""
Bit-packed exact linear algebra over the two-element field.

Rows are stored as Python integers, column ``j`` living in bit ``j``. Every higher module
of ``rcspaces`` works on these words directly, so the integer-level kernels
(:func:`xor_basis`, :func:`reduce_against`, :func:`row_dependencies`) are public as well as
the matrix-level operations.

Example:
    >>> from rcspaces.gf2core import BitMatrix, rank
    >>> M = BitMatrix.from_rows([[1, 0, 0], [0, 1, 0], [1, 1, 1]])
    >>> rank(M)
    3
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

MAX_COLS = 64
MAX_GL_DIM = 5
MAX_TABLE_BITS = 16


def _mask(n_bits: int) -> int:
    return (1 << n_bits) - 1


def parity(word: int) -> int:
    """Returns the XOR of the bits of ``word``."""
    return word.bit_count() & 1


def lowest_bit(word: int) -> int:
    """Index of the lowest set bit of a non-zero word."""
    return (word & -word).bit_length() - 1


@dataclass(frozen=True)
class BitVector:
    """
    A vector of ``F2^length`` packed in one word (coordinate ``i`` in bit ``i``).

    :param length: Number of coordinates (at most 64).
    :type length: int

    :param bits: Packed coordinates.
    :type bits: int
    """

    length: int
    bits: int = 0

    def __post_init__(self):
        if not 0 <= self.length <= MAX_COLS:
            raise ValueError(f"BitVector length must lie in [0, {MAX_COLS}], got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(
                f"BitVector bits {self.bits:#x} do not fit in length {self.length}"
            )

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> "BitVector":
        bits = 0
        for i, value in enumerate(entries):
            if value & 1:
                bits |= 1 << i
        return cls(len(entries), bits)

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVector":
        if not 0 <= index < length:
            raise ValueError(f"unit vector index {index} out of range for length {length}")
        return cls(length, 1 << index)

    def to_list(self) -> List[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __add__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError(f"cannot add vectors of lengths {self.length} and {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


@dataclass(frozen=True)
class BitMatrix:
    """
    A dense ``n_rows x n_cols`` matrix over F2, one word per row.

    Zero-dimensional matrices are legal and behave as empty blocks.

    :param n_rows: Number of rows.
    :type n_rows: int

    :param n_cols: Number of columns (at most 64).
    :type n_cols: int

    :param rows: Row words, column ``j`` stored in bit ``j``.
    :type rows: tuple

    Example:
        >>> M = BitMatrix.from_rows([[0, 1], [1, 0]])
        >>> M.rows
        (2, 1)
        >>> print(M.transpose())
        01
        10
    """

    n_rows: int
    n_cols: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n_cols <= MAX_COLS:
            raise ValueError(f"BitMatrix n_cols must lie in [0, {MAX_COLS}], got {self.n_cols}")
        if self.n_rows < 0:
            raise ValueError(f"BitMatrix n_rows must be non-negative, got {self.n_rows}")
        if len(self.rows) != self.n_rows:
            raise ValueError(f"expected {self.n_rows} row words, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if row < 0 or row >> self.n_cols:
                raise ValueError(f"row {i} word {row:#x} does not fit in {self.n_cols} columns")

    # Constructors
    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def from_rows(
        cls, entries: Sequence[Sequence[int]], n_cols: Optional[int] = None
    ) -> "BitMatrix":
        """
        Builds a matrix from nested lists of 0/1 entries.

        :param entries: Rows of the matrix.
        :type entries: list

        :param n_cols: Column count, only needed when ``entries`` is empty.
        :type n_cols: int, optional
        """
        if n_cols is None:
            n_cols = len(entries[0]) if entries else 0
        words = []
        for i, row in enumerate(entries):
            if len(row) != n_cols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n_cols}")
            word = 0
            for j, value in enumerate(row):
                if value & 1:
                    word |= 1 << j
            words.append(word)
        return cls(len(entries), n_cols, tuple(words))

    @classmethod
    def from_array(cls, array: np.ndarray) -> "BitMatrix":
        array = np.asarray(array, dtype=np.uint8) & 1
        n_rows, n_cols = array.shape
        return cls.from_rows(array.tolist(), n_cols=n_cols)

    @classmethod
    def from_flat(cls, flat: int, n_rows: int, n_cols: int) -> "BitMatrix":
        """Inverse of :meth:`flat`: entry ``(i, j)`` is bit ``i * n_cols + j``."""
        mask = _mask(n_cols)
        return cls(n_rows, n_cols, tuple((flat >> (i * n_cols)) & mask for i in range(n_rows)))

    # Views
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def flat(self) -> int:
        """Row-major flattening of the matrix into one integer."""
        word = 0
        for i, row in enumerate(self.rows):
            word |= row << (i * self.n_cols)
        return word

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> BitVector:
        bits = 0
        for i, row in enumerate(self.rows):
            bits |= ((row >> j) & 1) << i
        return BitVector(self.n_rows, bits)

    def to_list(self) -> List[List[int]]:
        return [[(row >> j) & 1 for j in range(self.n_cols)] for row in self.rows]

    def to_array(self) -> np.ndarray:
        return np.array(self.to_list(), dtype=np.uint8).reshape(self.n_rows, self.n_cols)

    def is_zero(self) -> bool:
        return not any(self.rows)

    # Arithmetic
    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        return add(self, other)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return matmul(self, other)

    def transpose(self) -> "BitMatrix":
        return transpose(self)

    @property
    def T(self) -> "BitMatrix":
        return transpose(self)

    def rank(self) -> int:
        return rank(self)

    def __str__(self) -> str:
        return "\n".join(
            "".join(str((row >> j) & 1) for j in range(self.n_cols)) for row in self.rows
        )


# ---------------------------------------------------------------------------
# Integer-level kernels


def xor_basis(words) -> Dict[int, int]:
    """
    Fully reduced echelon basis of the span of ``words``.

    The result maps each pivot (the lowest set bit, as a power of two) to the basis word
    owning it; every basis word is zero at all other pivots.

    :param words: Iterable of integers.

    :return: ``{pivot_bit: word}``
    :rtype: dict
    """
    basis: Dict[int, int] = {}
    for word in words:
        insert_reduced(basis, word)
    return basis


def insert_reduced(basis: Dict[int, int], word: int) -> bool:
    """Adds ``word`` to a fully reduced basis in place. Returns ``False`` if it was dependent."""
    for pivot, vec in basis.items():
        if word & pivot:
            word ^= vec
    if not word:
        return False
    low = word & -word
    for pivot, vec in basis.items():
        if vec & low:
            basis[pivot] = vec ^ word
    basis[low] = word
    return True


def reduce_against(basis: Dict[int, int], word: int) -> int:
    """Canonical representative of ``word`` modulo the span of a fully reduced basis."""
    for pivot, vec in basis.items():
        if word & pivot:
            word ^= vec
    return word


def echelon(words) -> Tuple[int, ...]:
    """Reduced echelon basis of the span of ``words``, sorted by increasing pivot."""
    basis = xor_basis(words)
    return tuple(basis[pivot] for pivot in sorted(basis))


def rank_of_words(words) -> int:
    basis: Dict[int, int] = {}
    for word in words:
        while word:
            low = word & -word
            vec = basis.get(low)
            if vec is None:
                basis[low] = word
                break
            word ^= vec
    return len(basis)


def row_dependencies(rows: Sequence[int]) -> List[int]:
    """
    Basis of the linear relations between ``rows``: words ``k`` with ``XOR_{i in k} rows[i] = 0``.

    This is the left kernel of the matrix whose rows are ``rows``.
    """
    basis: Dict[int, Tuple[int, int]] = {}
    dependencies = []
    for i, word in enumerate(rows):
        combo = 1 << i
        while word:
            low = word & -word
            entry = basis.get(low)
            if entry is None:
                basis[low] = (word, combo)
                break
            word ^= entry[0]
            combo ^= entry[1]
        if not word:
            dependencies.append(combo)
    return dependencies


def express(words: Sequence[int], targets: Sequence[int]) -> List[Optional[int]]:
    """
    Writes each target as a combination of ``words``.

    :return: for every target, a word ``c`` with ``XOR_{i in c} words[i] = target``,
        or ``None`` when the target is outside the span.
    :rtype: list
    """
    basis: Dict[int, Tuple[int, int]] = {}
    for i, word in enumerate(words):
        combo = 1 << i
        while word:
            low = word & -word
            entry = basis.get(low)
            if entry is None:
                basis[low] = (word, combo)
                break
            word ^= entry[0]
            combo ^= entry[1]
    result: List[Optional[int]] = []
    for target in targets:
        combo = 0
        while target:
            entry = basis.get(target & -target)
            if entry is None:
                break
            target ^= entry[0]
            combo ^= entry[1]
        result.append(None if target else combo)
    return result


def nullspace_words(rows: Sequence[int], n_cols: int) -> List[int]:
    """Basis of ``{x : parity(row & x) = 0 for every row}``, one vector per free column."""
    basis = xor_basis(rows)
    pivots = 0
    for pivot in basis:
        pivots |= pivot
    solutions = []
    for col in range(n_cols):
        bit = 1 << col
        if pivots & bit:
            continue
        x = bit
        for pivot, vec in basis.items():
            if vec & bit:
                x |= pivot
        solutions.append(x)
    return solutions


def solve_words(rows: Sequence[int], rhs: int, n_cols: int) -> Optional[int]:
    """One solution ``x`` of ``parity(rows[i] & x) = rhs_i`` for all ``i``, or ``None``."""
    augmented = [row | (((rhs >> i) & 1) << n_cols) for i, row in enumerate(rows)]
    basis = xor_basis(augmented)
    if (1 << n_cols) in basis:
        return None
    x = 0
    for pivot, vec in basis.items():
        if vec >> n_cols:
            x |= pivot
    return x


# ---------------------------------------------------------------------------
# Matrix-level operations


def rank(M: BitMatrix) -> int:
    """
    F2 rank of ``M``.

    :param M: Any matrix.
    :type M: BitMatrix

    :return: rank, between 0 and ``min(n_rows, n_cols)``
    :rtype: int
    """
    return rank_of_words(M.rows)


def rref(M: BitMatrix) -> Tuple[BitMatrix, List[int], BitMatrix]:
    """
    Reduced row-echelon form of ``M``.

    :return: ``(reduced, pivot_cols, row_transform)`` with ``row_transform @ M == reduced``
    :rtype: tuple
    """
    work = list(M.rows)
    transform = [1 << i for i in range(M.n_rows)]
    pivots: List[int] = []
    r = 0
    for col in range(M.n_cols):
        if r == len(work):
            break
        bit = 1 << col
        found = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if found is None:
            continue
        work[r], work[found] = work[found], work[r]
        transform[r], transform[found] = transform[found], transform[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
                transform[i] ^= transform[r]
        pivots.append(col)
        r += 1
    reduced = BitMatrix(M.n_rows, M.n_cols, tuple(work))
    return reduced, pivots, BitMatrix(M.n_rows, M.n_rows, tuple(transform))


def nullspace(M: BitMatrix) -> List[BitVector]:
    """Basis of ``{x : M x = 0}``; its size is ``n_cols - rank(M)``."""
    return [BitVector(M.n_cols, x) for x in nullspace_words(M.rows, M.n_cols)]


def left_kernel(M: BitMatrix) -> List[BitVector]:
    """Basis of ``{y : y^T M = 0}``."""
    return [BitVector(M.n_rows, y) for y in row_dependencies(M.rows)]


def solve(M: BitMatrix, b: BitVector) -> Optional[BitVector]:
    """
    One solution of ``M x = b``.

    :raises ValueError: if ``b`` does not have ``n_rows`` coordinates.
    """
    if b.length != M.n_rows:
        raise ValueError(f"right-hand side has length {b.length}, expected {M.n_rows}")
    x = solve_words(M.rows, b.bits, M.n_cols)
    return None if x is None else BitVector(M.n_cols, x)


def add(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    if A.shape != B.shape:
        raise ValueError(f"cannot add matrices of shapes {A.shape} and {B.shape}")
    return BitMatrix(A.n_rows, A.n_cols, tuple(a ^ b for a, b in zip(A.rows, B.rows)))


def matmul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    if A.n_cols != B.n_rows:
        raise ValueError(f"cannot multiply matrices of shapes {A.shape} and {B.shape}")
    rows = []
    for a in A.rows:
        acc = 0
        k = 0
        while a:
            if a & 1:
                acc ^= B.rows[k]
            a >>= 1
            k += 1
        rows.append(acc)
    return BitMatrix(A.n_rows, B.n_cols, tuple(rows))


def transpose(M: BitMatrix) -> BitMatrix:
    rows = [0] * M.n_cols
    for i, row in enumerate(M.rows):
        j = 0
        while row:
            if row & 1:
                rows[j] |= 1 << i
            row >>= 1
            j += 1
    return BitMatrix(M.n_cols, M.n_rows, tuple(rows))


def matvec(M: BitMatrix, v: BitVector) -> BitVector:
    if v.length != M.n_cols:
        raise ValueError(f"vector of length {v.length} cannot multiply shape {M.shape}")
    bits = 0
    for i, row in enumerate(M.rows):
        bits |= parity(row & v.bits) << i
    return BitVector(M.n_rows, bits)


def identity(n: int) -> BitMatrix:
    return BitMatrix(n, n, tuple(1 << i for i in range(n)))


def from_bits(flat: int, n: int, p: int) -> BitMatrix:
    return BitMatrix.from_flat(flat, n, p)


def to_bits(M: BitMatrix) -> int:
    return M.flat


def inverse(M: BitMatrix) -> BitMatrix:
    """
    Inverse of a square matrix.

    :raises ValueError: if ``M`` is not square or is singular.
    """
    if M.n_rows != M.n_cols:
        raise ValueError(f"only square matrices have inverses, got shape {M.shape}")
    reduced, pivots, transform = rref(M)
    if len(pivots) != M.n_rows:
        raise ValueError(f"matrix is singular (rank {len(pivots)} < {M.n_rows})")
    return transform


def gl_order(n: int) -> int:
    """Order of ``GL_n(F2)``."""
    order = 1
    for i in range(n):
        order *= (1 << n) - (1 << i)
    return order


def enumerate_gl(n: int) -> Iterator[BitMatrix]:
    """
    Yields every invertible ``n x n`` matrix exactly once.

    Matrices come in lexicographic order of their row words ``(row_0, row_1, ...)``.

    :param n: Size, between 1 and 5.
    :type n: int

    :raises ValueError: if ``n`` is outside ``[1, 5]``.
    """
    if not 1 <= n <= MAX_GL_DIM:
        raise ValueError(f"enumerate_gl requires 1 <= n <= {MAX_GL_DIM}, got n={n}")
    for rows in _gl_rows(n):
        yield BitMatrix(n, n, rows)


def _gl_rows(n: int) -> Iterator[Tuple[int, ...]]:
    size = 1 << n
    chosen: List[int] = []
    spans: List[set] = [{0}]

    def extend(depth):
        if depth == n:
            yield tuple(chosen)
            return
        span = spans[-1]
        for row in range(1, size):
            if row in span:
                continue
            chosen.append(row)
            spans.append(span | {v ^ row for v in span})
            yield from extend(depth + 1)
            spans.pop()
            chosen.pop()

    yield from extend(0)


@lru_cache(maxsize=None)
def gl_elements(n: int) -> Tuple[BitMatrix, ...]:
    """Cached tuple of :func:`enumerate_gl` for ``n <= 4``."""
    if not 1 <= n <= 4:
        raise ValueError(f"gl_elements caches GL_n only for 1 <= n <= 4, got n={n}")
    return tuple(enumerate_gl(n))


@lru_cache(maxsize=None)
def rank_table(n: int, p: int) -> np.ndarray:
    """
    Ranks of all ``2^(n p)`` matrices of shape ``n x p``, indexed by row-major flattening.

    :raises ValueError: if ``n * p`` exceeds 16.
    """
    n_bits = n * p
    if n_bits > MAX_TABLE_BITS:
        raise ValueError(f"rank_table supports n*p <= {MAX_TABLE_BITS}, got n*p={n_bits}")
    mask = _mask(p)
    table = np.fromiter(
        (
            rank_of_words([(flat >> (i * p)) & mask for i in range(n)])
            for flat in range(1 << n_bits)
        ),
        dtype=np.uint8,
        count=1 << n_bits,
    )
    table.setflags(write=False)
    return table
