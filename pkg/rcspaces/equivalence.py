# -*- coding: utf-8 -*-
"""
Equivalence of matrix spaces under ``(P, Q) . V = P V Q^-1``.

Certificate search fixes an element of the smaller of ``GL_n`` and ``GL_p``; the remaining
condition ``P X R in T`` (``R = Q^-1``) is then linear in the other matrix and is solved
exactly, after which an invertible solution is looked up in the solution space. Invariant
profiles reject most inequivalent pairs before any search.

Orbits are computed by breadth-first search from a transvection and a cyclic permutation of
each factor, which generate ``GL_n(F2) x GL_p(F2)``.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from .gf2core import (
    MAX_TABLE_BITS,
    BitMatrix,
    BitVector,
    gl_elements,
    gl_order,
    identity,
    inverse,
    lowest_bit,
    matmul,
    nullspace_words,
    parity,
    rank_of_words,
    rank_table,
    transpose,
)
from .matspace import (
    AffineMatSpace,
    MatSubspace,
    _rows_of,
    _flatten,
    apply,
    gray_words,
    orthogonal,
    reduce,
    transpose_space,
    transpose_word,
)

logger = logging.getLogger(__name__)

MAX_EQUIV_SIZE = 4
MAX_ORBIT_AMBIENT = 12
MAX_PROFILE_DIM = 14

Certificate = Tuple[BitMatrix, BitMatrix]
Space = Union[MatSubspace, AffineMatSpace]


@dataclass(frozen=True)
class InvariantProfile:
    """
    Fingerprint of a matrix space that is invariant under equivalence.

    ``rank_multiset[r]`` counts elements of rank ``r``; ``col_profile[k]`` counts non-zero
    ``x`` with ``dim S x = k``; ``row_profile`` is the same for ``S^T``; ``dual_profile[k]``
    counts non-zero ``y`` with ``dim S^perp y = k``.
    """

    dim: int
    rank_multiset: Tuple[int, ...]
    col_profile: Tuple[int, ...]
    row_profile: Tuple[int, ...]
    dual_profile: Tuple[int, ...]
    reduced_dims: Tuple[int, int]

    def rank_counts(self) -> dict:
        return {r: c for r, c in enumerate(self.rank_multiset) if c}


@dataclass(frozen=True)
class TypeReport:
    """
    Outcome of :func:`classify_type`.

    ``type_id`` is ``None`` for a non-special space. When set, the certificate ``(P, Q)``
    maps the space onto ``type_space(type_id, *block_params)``.
    """

    type_id: Optional[int]
    block_params: Optional[Tuple[int, int]] = None
    certificate: Optional[Certificate] = None
    reason: str = ""

    @property
    def is_special(self) -> bool:
        return self.type_id is not None

    @property
    def label(self) -> str:
        return f"Type {self.type_id}" if self.type_id is not None else "NonSpecial"


# ---------------------------------------------------------------------------
# Group action


def _check_square_pair(P: BitMatrix, Q: BitMatrix, n: int, p: int) -> None:
    if P.shape != (n, n) or Q.shape != (p, p):
        raise ValueError(
            f"certificate shapes {P.shape} and {Q.shape} do not act on {n}x{p} matrices"
        )


def _product_word(word: int, n: int, p: int, left: Sequence[int], right: Sequence[int]) -> int:
    """Flattening of ``L M R`` for ``M`` flattened as ``word`` (``L`` n x n, ``R`` p x p)."""
    rows = _rows_of(word, n, p)
    out = 0
    for i, lrow in enumerate(left):
        acc = 0
        k = 0
        while lrow:
            if lrow & 1:
                acc ^= rows[k]
            lrow >>= 1
            k += 1
        prod = 0
        k = 0
        while acc:
            if acc & 1:
                prod ^= right[k]
            acc >>= 1
            k += 1
        out |= prod << (i * p)
    return out


def word_action(P: BitMatrix, Q: BitMatrix, n: int, p: int) -> Callable[[int], int]:
    """
    The linear map ``M -> P M Q^-1`` on flattened ``n x p`` matrices.

    Small ambients use a lookup table built from the images of the unit matrices.
    """
    _check_square_pair(P, Q, n, p)
    left = P.rows
    right = inverse(Q).rows
    n_bits = n * p
    units = [_product_word(1 << b, n, p, left, right) for b in range(n_bits)]
    if n_bits <= MAX_ORBIT_AMBIENT:
        table = [0] * (1 << n_bits)
        for w in range(1, 1 << n_bits):
            table[w] = table[w & (w - 1)] ^ units[lowest_bit(w)]
        return table.__getitem__

    def apply_word(word: int) -> int:
        out = 0
        while word:
            low = word & -word
            out ^= units[low.bit_length() - 1]
            word ^= low
        return out

    return apply_word


def _act(X: Space, action: Callable[[int], int]) -> Space:
    if isinstance(X, AffineMatSpace):
        direction = _act(X.direction, action)
        return AffineMatSpace(direction, direction.reduce_word(action(X.offset_word)))
    return MatSubspace.from_words(X.ambient_rows, X.ambient_cols, (action(w) for w in X.words))


def transform(X: Union[Space, BitMatrix], P: BitMatrix, Q: BitMatrix):
    """
    ``P X Q^-1`` for a matrix, a linear space or an affine space.

    Affine offsets are renormalised after the transformation.
    """
    if isinstance(X, BitMatrix):
        return matmul(matmul(P, X), inverse(Q))
    n, p = X.shape
    _check_square_pair(P, Q, n, p)
    left = P.rows
    right = inverse(Q).rows
    return _act(X, lambda w: _product_word(w, n, p, left, right))


def transvection(n: int) -> BitMatrix:
    """``I + E_{0,1}``."""
    rows = [1 << i for i in range(n)]
    rows[0] |= 1 << 1
    return BitMatrix(n, n, tuple(rows))


def cycle(n: int) -> BitMatrix:
    """Permutation matrix sending ``e_j`` to ``e_{j+1 mod n}``."""
    return BitMatrix(n, n, tuple(1 << ((i - 1) % n) for i in range(n)))


def default_generators(n: int, p: int) -> List[Certificate]:
    """Pairs ``(P, Q)`` generating ``GL_n(F2) x GL_p(F2)``."""
    generators = []
    if n >= 2:
        generators += [(transvection(n), identity(p)), (cycle(n), identity(p))]
    if p >= 2:
        generators += [(identity(n), transvection(p)), (identity(n), cycle(p))]
    return generators


def orbit(X: Space, generators: Optional[Sequence[Certificate]] = None) -> Set[Space]:
    """
    Orbit of ``X`` under the group generated by ``generators`` (default: all of
    ``GL_n x GL_p``), by breadth-first search.

    :raises ValueError: if ``n * p`` exceeds 12.

    Example:
        >>> from rcspaces.matspace import MatSubspace
        >>> len(orbit(MatSubspace.full(3, 3)))
        1
    """
    n, p = X.shape
    if n * p > MAX_ORBIT_AMBIENT:
        raise ValueError(f"orbit requires n*p <= {MAX_ORBIT_AMBIENT}, got n*p={n * p}")
    if generators is None:
        generators = default_generators(n, p)
    actions = [word_action(P, Q, n, p) for P, Q in generators]
    seen = {X}
    frontier = [X]
    while frontier:
        discovered = []
        for Y in frontier:
            for action in actions:
                Z = _act(Y, action)
                if Z not in seen:
                    seen.add(Z)
                    discovered.append(Z)
        frontier = discovered
        logger.debug("orbit BFS: %d found, frontier %d", len(seen), len(frontier))
    return seen


def canonical_form(X: Space) -> Space:
    """Smallest element of the orbit of ``X`` for the order of its flattened data."""
    if isinstance(X, AffineMatSpace):
        return min(orbit(X), key=lambda A: (A.direction.words, A.offset_word))
    return min(orbit(X), key=lambda S: S.words)


# ---------------------------------------------------------------------------
# Invariants


@lru_cache(maxsize=1024)
def profile(S: MatSubspace) -> InvariantProfile:
    """
    Equivalence-invariant fingerprint of ``S``.

    :raises ValueError: if ``dim S`` exceeds 14.

    Example:
        >>> from rcspaces.catalog import named
        >>> profile(named("alt", r=3)).rank_counts()
        {0: 1, 2: 7}
    """
    if S.dim > MAX_PROFILE_DIM:
        raise ValueError(f"profile requires dim <= {MAX_PROFILE_DIM}, got {S.dim}")
    n, p = S.shape
    words = list(S.element_words())
    if n * p <= MAX_TABLE_BITS:
        ranks = rank_table(n, p)[np.array(words, dtype=np.int64)]
    else:
        ranks = np.array([rank_of_words(_rows_of(w, n, p)) for w in words], dtype=np.int64)
    rank_multiset = tuple(int(c) for c in np.bincount(ranks, minlength=min(n, p) + 1))
    _, u0, v0 = reduce(S)
    return InvariantProfile(
        dim=S.dim,
        rank_multiset=rank_multiset,
        col_profile=_image_profile(S),
        row_profile=_image_profile(transpose_space(S)),
        dual_profile=_image_profile(orthogonal(S)),
        reduced_dims=(u0, v0),
    )


def _image_profile(S: MatSubspace) -> Tuple[int, ...]:
    n, p = S.shape
    counts = [0] * (n + 1)
    for x in range(1, 1 << p):
        counts[apply(S, BitVector(p, x)).dim] += 1
    return tuple(counts)


# ---------------------------------------------------------------------------
# Certificate search


def _left_multipliers(
    pairs: Sequence[Tuple[Sequence[int], MatSubspace]], n: int, p: int, right: Sequence[int]
) -> List[int]:
    """
    Basis of ``{P in Mat_n : P X R in T for every (X, T) in pairs}`` with ``R`` fixed.

    The condition ``<w, P X R> = 0`` for ``w`` orthogonal to ``T`` has coefficient
    ``parity(w_a & (X R)_b)`` on the entry ``P[a][b]``.
    """
    rows = []
    ident = tuple(1 << i for i in range(n))
    for sources, duals in pairs:
        for word in sources:
            xr = _rows_of(_product_word(word, n, p, ident, right), n, p)
            for dual_rows in duals:
                row = 0
                for a, wa in enumerate(dual_rows):
                    if not wa:
                        continue
                    for b, xb in enumerate(xr):
                        if parity(wa & xb):
                            row |= 1 << (a * n + b)
                if row:
                    rows.append(row)
    return nullspace_words(rows, n * n)


def _invertible_in(basis: Sequence[int], n: int) -> Iterator[int]:
    for word in gray_words(basis):
        if rank_of_words(_rows_of(word, n, n)) == n:
            yield word


def _prepared(pairs: Sequence[Tuple[Sequence[int], MatSubspace]], n: int, p: int):
    prepared = []
    for sources, target in pairs:
        duals = nullspace_words(target.words, n * p)
        prepared.append((tuple(sources), [_rows_of(w, n, p) for w in duals]))
    return prepared


def _search(
    pairs: Sequence[Tuple[Sequence[int], MatSubspace]], n: int, p: int
) -> Iterator[Tuple[BitMatrix, BitMatrix]]:
    """
    Yields pairs ``(P, R)`` of invertible matrices with ``P X R in T`` for every pair,
    one ``P`` per ``R`` (all ``R`` in ``GL_p`` are tried).
    """
    prepared = _prepared(pairs, n, p)
    for R in gl_elements(p):
        basis = _left_multipliers(prepared, n, p, R.rows)
        for word in _invertible_in(basis, n):
            yield BitMatrix.from_flat(word, n, n), R
            break


def _transposed_pairs(pairs, n: int, p: int):
    return [
        (tuple(transpose_word(w, n, p) for w in sources), transpose_space(target))
        for sources, target in pairs
    ]


def _find(
    pairs: Sequence[Tuple[Sequence[int], MatSubspace]], n: int, p: int
) -> Optional[Certificate]:
    if n > MAX_EQUIV_SIZE or p > MAX_EQUIV_SIZE:
        raise ValueError(
            f"equivalence search requires n, p <= {MAX_EQUIV_SIZE}, got ({n}, {p})"
        )
    if p <= n:
        for P, R in _search(pairs, n, p):
            return P, inverse(R)
        return None
    # transposed problem: R^T X^T P^T in T^T, iterating over GL_n
    for P_t, R_t in _search(_transposed_pairs(pairs, n, p), p, n):
        return transpose(R_t), inverse(transpose(P_t))
    return None


def find_embedding(S: MatSubspace, T: MatSubspace) -> Optional[Certificate]:
    """
    A certificate ``(P, Q)`` with ``P S Q^-1`` contained in ``T``, or ``None``.

    :raises ValueError: on a shape mismatch or when ``n`` or ``p`` exceeds 4.
    """
    if S.shape != T.shape:
        raise ValueError(f"shape mismatch: {S.shape} vs {T.shape}")
    if S.dim > T.dim:
        return None
    return _find([(S.words, T)], *S.shape)


def are_equivalent(S: MatSubspace, T: MatSubspace) -> Optional[Certificate]:
    """
    A certificate ``(P, Q)`` with ``P S Q^-1 = T``, or ``None`` when the spaces are
    inequivalent.

    :raises ValueError: on a shape mismatch or when ``n`` or ``p`` exceeds 4.

    Example:
        >>> from rcspaces.catalog import named
        >>> are_equivalent(named("alt", r=3), named("U3")) is None
        True
    """
    if S.shape != T.shape:
        raise ValueError(f"shape mismatch: {S.shape} vs {T.shape}")
    n, p = S.shape
    if n > MAX_EQUIV_SIZE or p > MAX_EQUIV_SIZE:
        raise ValueError(f"equivalence search requires n, p <= {MAX_EQUIV_SIZE}, got ({n}, {p})")
    if S == T:
        return identity(n), identity(p)
    if S.dim != T.dim or profile(S) != profile(T):
        return None
    certificate = _find([(S.words, T)], n, p)
    if certificate is not None and transform(S, *certificate) != T:
        raise RuntimeError("equivalence certificate failed verification")
    return certificate


def are_affine_equivalent(A: AffineMatSpace, B: AffineMatSpace) -> Optional[Certificate]:
    """
    A certificate ``(P, Q)`` with ``P A Q^-1 = B`` for affine spaces, or ``None``.

    For spaces avoiding zero this amounts to ``P W Q^-1 = W'`` together with
    ``P span(A) Q^-1 = span(B)``, both linear in ``P`` once ``Q`` is fixed.
    """
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {B.shape}")
    if A.dim != B.dim or A.contains_zero != B.contains_zero:
        return None
    if A.contains_zero:
        return are_equivalent(A.direction, B.direction)
    n, p = A.shape
    if profile(A.direction) != profile(B.direction) or profile(A.span()) != profile(B.span()):
        return None
    certificate = _find([(A.direction.words, B.direction), ((A.offset_word,), B.span())], n, p)
    if certificate is not None and transform(A, *certificate) != B:
        raise RuntimeError("affine equivalence certificate failed verification")
    return certificate


def stabilizer_count(S: MatSubspace) -> int:
    """Number of pairs ``(P, Q)`` with ``P S Q^-1 = S``, counted directly."""
    n, p = S.shape
    if n > MAX_EQUIV_SIZE or p > MAX_EQUIV_SIZE:
        raise ValueError(f"stabilizer_count requires n, p <= {MAX_EQUIV_SIZE}, got ({n}, {p})")
    prepared = _prepared([(S.words, S)], n, p)
    total = 0
    for R in gl_elements(p):
        basis = _left_multipliers(prepared, n, p, R.rows)
        total += sum(1 for _ in _invertible_in(basis, n))
    return total


def group_order(n: int, p: int) -> int:
    return gl_order(n) * gl_order(p)


# ---------------------------------------------------------------------------
# Types


def block_params(type_id: int, n: int, p: int) -> Optional[Tuple[int, int]]:
    """
    Free block sizes of the Type ``type_id`` representative with ambient shape ``(n, p)``, or
    ``None`` when no non-negative solution exists.
    """
    if type_id == 1:
        return (n - 2, p - 2) if n >= 2 and p >= 2 else None
    if type_id == 3:
        return (n - 3, p - 2) if n >= 3 and p >= 2 else None
    if type_id in (2, 4, 5, 6):
        return (0, p - 3) if n == 3 and p >= 3 else None
    if type_id == 7:
        return (0, p - 4) if n == 3 and p >= 4 else None
    raise ValueError(f"unknown type {type_id}, expected 1..7")


def classify_type(S: MatSubspace) -> TypeReport:
    """
    Type 1-7 of a space of codimension ``2n - 3``, or non-special.

    :raises ValueError: if ``n`` or ``p`` exceeds 4.

    Example:
        >>> from rcspaces.catalog import named
        >>> classify_type(named("H4")).type_id
        7
    """
    from .catalog import type_space

    n, p = S.shape
    if S.codim != 2 * n - 3:
        return TypeReport(None, reason="codimension precondition")
    if n > MAX_EQUIV_SIZE or p > MAX_EQUIV_SIZE:
        raise ValueError(f"classify_type requires n, p <= {MAX_EQUIV_SIZE}, got ({n}, {p})")
    for type_id in range(1, 8):
        params = block_params(type_id, n, p)
        if params is None:
            continue
        representative = type_space(type_id, *params)
        certificate = are_equivalent(S, representative)
        if certificate is not None:
            logger.debug("space classified as Type %d with blocks %s", type_id, params)
            return TypeReport(type_id, params, certificate)
    return TypeReport(None, reason="inequivalent to every type representative")
