# -*- coding: utf-8 -*-
"""
Upper and lower ranks, primitivity, and the census of affine spaces with lower-rank 2.

The census at shape ``(n, p)`` walks every direction ``D`` of codimension 3. A coset
``v + D`` has lower-rank at least 2 exactly when the class of ``v`` modulo ``D`` differs from
the classes of all matrices of rank at most 1, so each direction only costs one reduction
per small-rank matrix; the exact lower rank of the survivors is then read off the rank table.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from .gf2core import MAX_TABLE_BITS, BitVector, rank_of_words, rank_table, reduce_against
from .matspace import (
    AffineMatSpace,
    MatSubspace,
    _rows_of,
    _place,
    affine_from_words,
    enumerate_subspaces,
    gaussian_binomial,
    is_reduced,
    quotient_mod,
    total_image,
    transpose_space,
)

logger = logging.getLogger(__name__)

MAX_RANK_DIM = 14
MAX_PRIMITIVE_SIZE = 4
CENSUS_SHAPES = ((2, 2), (2, 3), (3, 2), (3, 3))

# Representatives of the affine classes of codimension 3 and lower-rank 2, per shape.
CENSUS_CLASSES: Dict[Tuple[int, int], Tuple[str, ...]] = {
    (2, 2): ("affine-C", "affine-J"),
    (2, 3): ("affine-C", "affine-J", "F2-affine"),
    (3, 2): ("affine-C", "affine-J", "F2T-affine"),
    (3, 3): ("affine-C", "affine-J", "F2-affine", "F2T-affine", "F3-affine"),
}


def _ranks_of(words, n: int, p: int) -> np.ndarray:
    words = list(words)
    if n * p <= MAX_TABLE_BITS:
        return rank_table(n, p)[np.array(words, dtype=np.int64)]
    return np.array([rank_of_words(_rows_of(w, n, p)) for w in words], dtype=np.int64)


def upper_rank(S: MatSubspace) -> int:
    """
    Largest rank of an element of ``S``.

    :raises ValueError: if ``dim S`` exceeds 14.
    """
    if S.dim > MAX_RANK_DIM:
        raise ValueError(f"upper_rank requires dim <= {MAX_RANK_DIM}, got {S.dim}")
    return int(_ranks_of(S.element_words(), *S.shape).max())


def lower_rank(A: Union[AffineMatSpace, MatSubspace]) -> int:
    """
    Smallest rank of an element of an affine space.

    :raises ValueError: if the direction has dimension above 14.
    """
    if isinstance(A, MatSubspace):
        return 0
    if A.dim > MAX_RANK_DIM:
        raise ValueError(f"lower_rank requires dim <= {MAX_RANK_DIM}, got {A.dim}")
    if A.contains_zero:
        return 0
    return int(_ranks_of(A.element_words(), *A.shape).min())


def _check_corner(shape: Tuple[int, int], n: int, p: int) -> None:
    if shape[0] > n or shape[1] > p:
        raise ValueError(f"a {shape[0]}x{shape[1]} space does not fit in the corner of {n}x{p}")


def tilde(X: MatSubspace, n: int, p: int) -> MatSubspace:
    """``X`` placed in the upper-left corner of ``Mat_{n,p}``, other entries zero."""
    _check_corner(X.shape, n, p)
    n0, p0 = X.shape
    return MatSubspace.from_words(n, p, (_place(w, n0, p0, n, p, 0, 0) for w in X.words))


def i_np(X: Union[AffineMatSpace, MatSubspace], n: int, p: int):
    """
    Matrices of ``Mat_{n,p}`` whose upper-left block ranges over ``X``, other entries free.

    Codimension is preserved; so is the lower rank of an affine ``X``.
    """
    _check_corner(X.shape, n, p)
    n0, p0 = X.shape
    direction = X.direction if isinstance(X, AffineMatSpace) else X
    words = [_place(w, n0, p0, n, p, 0, 0) for w in direction.words]
    words += [1 << (i * p + j) for i in range(n) for j in range(p) if i >= n0 or j >= p0]
    if isinstance(X, AffineMatSpace):
        return affine_from_words(n, p, _place(X.offset_word, n0, p0, n, p, 0, 0), words)
    return MatSubspace.from_words(n, p, words)


# ---------------------------------------------------------------------------
# Primitivity


def row_compressions(S: MatSubspace) -> List[MatSubspace]:
    """The spaces ``S mod y`` for every non-zero ``y``."""
    n = S.ambient_rows
    return [quotient_mod(S, BitVector(n, y)) for y in range(1, 1 << n)]


def column_compressions(S: MatSubspace) -> List[MatSubspace]:
    """
    Transposed restrictions of ``S`` to every hyperplane of ``F2^p``.

    The restriction to ``ker h`` has the same upper rank as ``S^T mod h``.
    """
    p = S.ambient_cols
    transposed = transpose_space(S)
    return [quotient_mod(transposed, BitVector(p, h)) for h in range(1, 1 << p)]


def is_primitive(S: MatSubspace) -> bool:
    """
    Whether ``S`` is reduced and no row or column compression lowers its upper rank.

    :raises ValueError: if ``n`` or ``p`` exceeds 4.

    Example:
        >>> from rcspaces.catalog import named
        >>> is_primitive(named("U3")), is_primitive(named("V2"))
        (True, False)
    """
    n, p = S.shape
    if n > MAX_PRIMITIVE_SIZE or p > MAX_PRIMITIVE_SIZE:
        raise ValueError(f"is_primitive requires n, p <= {MAX_PRIMITIVE_SIZE}, got ({n}, {p})")
    if not is_reduced(S):
        return False
    r = upper_rank(S)
    for compressed in column_compressions(S) + row_compressions(S):
        if upper_rank(compressed) < r:
            return False
    return True


def has_corner_compression(S: MatSubspace) -> bool:
    """
    Whether some hyperplane ``H`` of ``F2^p`` is mapped by every element of ``S`` into a
    common line, i.e. ``S`` is equivalent to a space of matrices vanishing outside the first
    row and the first column.
    """
    n, p = S.shape
    transposed = transpose_space(S)
    for h in range(1, 1 << p):
        # restriction to ker h, transposed back: S^T mod h has rows spanning images of H
        restricted = transpose_space(quotient_mod(transposed, BitVector(p, h)))
        if total_image(restricted).dim <= 1:
            return True
    return False


# ---------------------------------------------------------------------------
# Census


@dataclass
class CensusReport:
    """
    Result of :func:`classify_affine_lrk2`.

    ``classes`` has one row per listed representative with its orbit size; ``survivors`` is
    the number of codimension-3 affine spaces with lower-rank 2 found by enumeration in the
    shard range, and ``unmatched`` counts survivors outside every listed orbit.
    """

    n: int
    p: int
    classes: pd.DataFrame
    survivors: int
    unmatched: int
    directions: int
    shard: int = 0
    shards: int = 1
    representatives: Dict[str, AffineMatSpace] = field(default_factory=dict)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def orbit_total(self) -> int:
        return int(self.classes["orbit_size"].sum())

    @property
    def complete(self) -> bool:
        return self.shards == 1

    @property
    def passed(self) -> bool:
        if self.unmatched:
            return False
        return self.survivors == self.orbit_total if self.complete else True


def census_orbits(n: int, p: int) -> Dict[str, set]:
    """Orbits of the listed representatives at shape ``(n, p)``."""
    from .catalog import named
    from .equivalence import orbit

    orbits = {}
    for name in CENSUS_CLASSES[(n, p)]:
        orbits[name] = orbit(i_np(named(name), n, p))
        logger.info("orbit of %s in Mat_%d,%d has %d elements", name, n, p, len(orbits[name]))
    return orbits


def lrk2_survivors(n: int, p: int, shard: int = 0, shards: int = 1):
    """
    Yields the codimension-3 affine subspaces of ``Mat_{n,p}`` with lower-rank 2 whose
    direction lies in the given shard.
    """
    n_bits = n * p
    table = rank_table(n, p)
    small = [int(w) for w in np.flatnonzero(table <= 1)]
    for direction in enumerate_subspaces(n, p, n_bits - 3, shard, shards):
        basis = direction.basis_map
        hit = {reduce_against(basis, w) for w in small}
        free = [b for b in range(n_bits) if (1 << b) not in basis]
        for combo in range(1, 8):
            offset = 0
            for k in range(3):
                if (combo >> k) & 1:
                    offset |= 1 << free[k]
            if offset in hit:
                continue
            space = AffineMatSpace(direction, offset)
            if int(table[np.array(list(space.element_words()), dtype=np.int64)].min()) == 2:
                yield space


def classify_affine_lrk2(n: int, p: int, shard: int = 0, shards: int = 1) -> CensusReport:
    """
    Census of the affine subspaces of ``Mat_{n,p}(F2)`` with codimension 3 and lower-rank 2.

    Survivors of the enumeration are matched against the orbits of the listed
    representatives; the full run passes when every survivor is matched and their number
    equals the sum of the orbit sizes.

    :raises ValueError: for shapes other than (2,2), (2,3), (3,2), (3,3).
    """
    if (n, p) not in CENSUS_SHAPES:
        raise ValueError(f"classify_affine_lrk2 supports shapes {CENSUS_SHAPES}, got {(n, p)}")
    from .catalog import named
    from .utils import emit_space

    orbits = census_orbits(n, p)
    representatives = {name: i_np(named(name), n, p) for name in orbits}
    owner = {}
    for name, members in orbits.items():
        for member in members:
            owner[member] = name
    found = {name: 0 for name in orbits}
    survivors = 0
    unmatched = 0
    for space in lrk2_survivors(n, p, shard, shards):
        survivors += 1
        name = owner.get(space)
        if name is None:
            unmatched += 1
            logger.warning("affine space outside the listed orbits: %s", space)
        else:
            found[name] += 1
    classes = pd.DataFrame(
        {
            "name": list(orbits),
            "orbit_size": [len(orbits[name]) for name in orbits],
            "found": [found[name] for name in orbits],
            "representative": [emit_space(representatives[name]) for name in orbits],
        }
    )
    directions = gaussian_binomial(n * p, n * p - 3)
    logger.info(
        "census Mat_%d,%d shard %d/%d: %d survivors, %d unmatched", n, p, shard, shards,
        survivors, unmatched,
    )
    return CensusReport(
        n,
        p,
        classes,
        survivors,
        unmatched,
        directions,
        shard,
        shards,
        representatives,
    )


def check_uniqueness_prop(n: int, p: int) -> bool:
    """
    Whether ``i_np(I2 + F2 C)`` and ``i_np(I2 + F2 J)`` are inequivalent while each one is
    fixed by some non-identity pair ``(P, Q)``.

    :raises ValueError: if ``n`` or ``p`` is below 2 or above 3.
    """
    if not (2 <= n <= 3 and 2 <= p <= 3):
        raise ValueError(f"check_uniqueness_prop requires 2 <= n, p <= 3, got ({n}, {p})")
    from .catalog import named
    from .equivalence import are_affine_equivalent, group_order, orbit

    first = i_np(named("affine-C"), n, p)
    second = i_np(named("affine-J"), n, p)
    if are_affine_equivalent(first, second) is not None:
        return False
    order = group_order(n, p)
    return all(len(orbit(space)) < order for space in (first, second))
