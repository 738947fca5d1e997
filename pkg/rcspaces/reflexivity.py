# -*- coding: utf-8 -*-
"""
Reflexive closures and reflexivity defects.

The reflexive closure ``R(S)`` of ``S`` is the space of all ``g`` with ``g x`` in ``S x`` for
every vector ``x``. It is computed by linear solving: for each non-zero ``x`` and each ``k``
in the left kernel of a basis of ``S x``, the constraint ``k^T g x = 0`` is linear in ``g``.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import pandas as pd

from .gf2core import BitVector, insert_reduced, nullspace_words, row_dependencies
from .matspace import MatSubspace, _apply_word, enumerate_subspaces, reduce
from .rangecompat import MAX_RC_DIM

logger = logging.getLogger(__name__)

MAX_REFLEXIVE_COLS = 20
MAX_THEOREM_SIZE = 3
TWO_DIM_COLUMNS = ["words", "reduced_shape", "reduced", "case", "defect", "consistent"]


def _outer_word(k: int, x: int, p: int) -> int:
    word = 0
    i = 0
    while k:
        if k & 1:
            word |= x << (i * p)
        k >>= 1
        i += 1
    return word


def reflexive_closure(S: MatSubspace) -> MatSubspace:
    """
    ``{g : g x in S x for every x}``.

    :raises ValueError: if ``S`` has more than 20 columns.

    Example:
        >>> from rcspaces.catalog import named
        >>> reflexive_closure(named("E2")).dim
        3
    """
    n, p = S.shape
    if p > MAX_REFLEXIVE_COLS:
        raise ValueError(f"reflexive_closure requires p <= {MAX_REFLEXIVE_COLS}, got p={p}")
    constraints: Dict[int, int] = {}
    full_rank = n * p - S.dim
    for x in range(1, 1 << p):
        images = [_apply_word(w, n, p, x) for w in S.words]
        # left kernel of the n x d matrix whose columns are the images
        columns_as_rows = []
        for i in range(n):
            row = 0
            for j, image in enumerate(images):
                row |= ((image >> i) & 1) << j
            columns_as_rows.append(row)
        for k in row_dependencies(columns_as_rows):
            insert_reduced(constraints, _outer_word(k, x, p))
        if len(constraints) == full_rank:
            break
    return MatSubspace.from_words(n, p, nullspace_words(list(constraints.values()), n * p))


def reflexivity_defect(S: MatSubspace) -> int:
    """``dim R(S) - dim S``."""
    return reflexive_closure(S).dim - S.dim


def is_reflexive(S: MatSubspace) -> bool:
    return reflexivity_defect(S) == 0


def rank_one_span(V: MatSubspace) -> MatSubspace:
    """
    Span of the rank-1 elements of ``V``.

    :raises ValueError: if ``dim V`` exceeds 14.
    """
    if V.dim > MAX_RC_DIM:
        raise ValueError(f"rank_one_span requires dim <= {MAX_RC_DIM}, got {V.dim}")
    n, p = V.shape
    rank_one = [
        w for w in V.element_words() if w and _is_rank_one(w, n, p)
    ]
    return MatSubspace.from_words(n, p, rank_one)


def _is_rank_one(word: int, n: int, p: int) -> bool:
    mask = (1 << p) - 1
    row_value = 0
    for i in range(n):
        row = (word >> (i * p)) & mask
        if not row:
            continue
        if row_value and row != row_value:
            return False
        row_value = row
    return row_value != 0


@dataclass
class TwoDimReport:
    """
    Outcome of the exhaustive check of the non-reflexive 2-dimensional spaces.

    ``table`` has one row per 2-dimensional space with the columns of ``TWO_DIM_COLUMNS``;
    ``case`` is ``reflexive``, ``i``, ``ii``, ``iii`` or ``iv`` and refers to the reduced
    space, ``reduced`` flags the spaces that had to be reduced first. ``reductions`` counts them.
    """

    n: int
    p: int
    table: pd.DataFrame
    reductions: int = 0
    counts: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.table["consistent"].all()) if len(self.table) else True

    @property
    def case_i_defects(self) -> List[int]:
        return sorted(set(self.table.loc[self.table["case"] == "i", "defect"].tolist()))


def _exceptional_orbits(n: int, p: int):
    from .catalog import named
    from .equivalence import orbit

    candidates = {"ii": "E2", "iii": "E3", "iv": "E2T"}
    orbits = {}
    for case, name in candidates.items():
        rep = named(name)
        if rep.shape == (n, p):
            orbits[case] = orbit(rep)
    return orbits


def check_2dim_theorem(n: int, p: int) -> TwoDimReport:
    """
    Checks, over every 2-dimensional subspace of ``Mat_{n,p}(F2)``, that its reduced space is
    non-reflexive exactly when

    (i) the reduced space lies in ``Mat_2(F2)`` and its rank-1 elements lie in a
    1-dimensional subspace, or
    (ii)-(iv) it is equivalent to ``E2``, ``E3`` or ``E2^T``,

    and that the defect is 1 in cases (ii)-(iv). Case (i) defects are recorded only.
    Non-reduced spaces are reduced first and classified in the reduced shape.

    :raises ValueError: if ``n`` or ``p`` exceeds 3.
    """
    if not (1 <= n <= MAX_THEOREM_SIZE and 1 <= p <= MAX_THEOREM_SIZE):
        raise ValueError(
            f"check_2dim_theorem requires 1 <= n, p <= {MAX_THEOREM_SIZE}, got ({n}, {p})"
        )
    orbits_by_shape: Dict[tuple, dict] = {}
    records = []
    reductions = 0
    for S in enumerate_subspaces(n, p, 2):
        reduced, u0, v0 = reduce(S)
        non_reduced = bool(u0 or v0 != n)
        if non_reduced:
            reductions += 1
        shape = reduced.shape
        if shape not in orbits_by_shape:
            orbits_by_shape[shape] = _exceptional_orbits(*shape)
        defect = reflexivity_defect(reduced)
        case = _theorem_case(reduced, orbits_by_shape[shape])
        if case is None:
            consistent = defect == 0
            case = "reflexive"
        elif case == "i":
            consistent = defect > 0
        else:
            consistent = defect == 1
        records.append(
            {
                "words": S.words,
                "reduced_shape": shape,
                "reduced": non_reduced,
                "case": case,
                "defect": defect,
                "consistent": consistent,
            }
        )
    table = pd.DataFrame.from_records(records, columns=TWO_DIM_COLUMNS)
    counts = table["case"].value_counts().to_dict() if len(table) else {}
    logger.info(
        "2-dim reflexivity check at (%d, %d): %s, %d reduced", n, p, counts, reductions
    )
    return TwoDimReport(n, p, table, reductions, {str(k): int(v) for k, v in counts.items()})


def _theorem_case(S: MatSubspace, orbits) -> Optional[str]:
    n, p = S.shape
    if n == 2 and p == 2:
        rank_one = [w for w in S.element_words() if w and _is_rank_one(w, n, p)]
        if len(rank_one) <= 1:
            return "i"
    for case, members in orbits.items():
        if S in members:
            return case
    return None
