# -*- coding: utf-8 -*-
"""
Named matrix spaces.

Every fixed entry is a matrix pattern whose cells are sums of parameters ``a, b, c, ...``
and of the constant ``1``. Generators follow the alphabetical order of the parameters, so
the ``k``-th generator is the pattern with the ``k``-th parameter set to 1 and the others to
0; the constant part, when present, is the offset of an affine space.

Example:
    >>> from rcspaces.catalog import named, generators
    >>> named("V2").dim, named("V2").codim
    (3, 3)
    >>> print(generators("V2")[1])
    01
    10
    00
"""

from typing import Callable, Dict, List, Sequence, Tuple, Union

from .gf2core import BitMatrix, BitVector
from .matspace import AffineMatSpace, MatSubspace, affine_from_words, coprod, vee

PATTERNS: Dict[str, Tuple[Tuple[str, ...], ...]] = {
    # codimension-3 spaces with a non-local range-compatible map
    "V2": (("a", "b"), ("b", "c"), ("c", "0")),
    "G3": (("a", "c", "b"), ("0", "b+c", "e"), ("b", "d", "f")),
    "H3": (("a", "b", "c"), ("b", "d", "f"), ("c", "e", "b+c+d")),
    "I3": (("a", "d", "e"), ("b", "c", "f"), ("c", "a", "a+c+e+f")),
    "H4": (("a", "b+c", "f", "h"), ("b", "d", "a+c", "i"), ("c", "e", "g", "a+b")),
    # reduced duals
    "V2perp": (("0", "a", "b"), ("a", "b", "c")),
    "G3perp": (("0", "a", "b+c"), ("b", "b", "0"), ("c", "0", "0")),
    "H3perp": (("0", "a+b", "c"), ("b", "a", "0"), ("a+c", "0", "a")),
    "I3perp": (("a+c", "0", "b"), ("0", "b+c", "a"), ("c", "c", "c")),
    "H4perp": (("b+c", "a+c", "a+b"), ("a", "0", "0"), ("0", "b", "0"), ("0", "0", "c")),
    "I3perp-hat": (("a", "b", "a"), ("b", "c", "c"), ("0", "0", "a+b+c")),
    # primitive spaces of upper-rank 2
    "U3": (("0", "a", "a+c"), ("a", "0", "b"), ("a+b", "c", "0")),
    "J3": (("a", "b", "c"), ("0", "d", "e"), ("0", "0", "a+d")),
    "M1": (("a", "0", "c"), ("0", "a+b", "0"), ("0", "0", "b")),
    "M2": (("a", "c", "0"), ("0", "a+b", "a"), ("0", "0", "b")),
    "M3": (("a", "b", "0"), ("0", "a+b", "c"), ("0", "0", "b")),
    "M4": (("a", "c", "0"), ("0", "a+b", "c"), ("0", "0", "b")),
    # non-reflexive 2-dimensional spaces and their duals
    "E2": (("a", "b", "0"), ("0", "a", "b")),
    "E3": (("a", "b", "0"), ("0", "a", "b"), ("0", "0", "a")),
    "E2T": (("a", "0"), ("b", "a"), ("0", "b")),
    "E2perp": (("a", "d"), ("b", "a"), ("c", "b")),
    "E3perp": (("a", "e", "f"), ("c", "a+b", "g"), ("d", "c", "b")),
    # affine spaces of codimension 3 with lower-rank 2
    "affine-C": (("1", "a"), ("a", "1+a")),
    "affine-J": (("1", "a"), ("0", "1")),
    "F2-affine": (("a+1", "a", "c"), ("d", "a+1", "a")),
    "F2T-affine": (("a+1", "d"), ("a", "a+1"), ("c", "a")),
    "F3-affine": (("a", "d", "e"), ("a+b+1", "a+b", "f"), ("c", "a+b+1", "b")),
}

PARAMETRIZED = {
    "sym": ("r",),
    "alt": ("r",),
    "full": ("n", "p"),
    "zero": ("n", "p"),
}


def names() -> List[str]:
    """All catalog names."""
    return sorted(PATTERNS) + sorted(PARAMETRIZED)


def _parse_cell(cell: str) -> Tuple[int, frozenset]:
    constant = 0
    parameters = set()
    for term in cell.replace(" ", "").split("+"):
        if term == "0":
            continue
        if term == "1":
            constant ^= 1
        elif len(term) == 1 and term.isalpha():
            parameters ^= {term}
        else:
            raise ValueError(f"invalid pattern term {term!r}")
    return constant, frozenset(parameters)


def pattern_generators(pattern: Sequence[Sequence[str]]) -> Tuple[BitMatrix, List[BitMatrix]]:
    """
    Offset and generators of a pattern, generators in alphabetical parameter order.

    :return: ``(offset, generators)``
    :rtype: tuple
    """
    n = len(pattern)
    p = len(pattern[0]) if n else 0
    cells = [[_parse_cell(cell) for cell in row] for row in pattern]
    parameters = sorted({v for row in cells for _, params in row for v in params})
    offset = BitMatrix.from_rows([[c for c, _ in row] for row in cells], n_cols=p)
    gens = [
        BitMatrix.from_rows([[int(v in params) for _, params in row] for row in cells], n_cols=p)
        for v in parameters
    ]
    return offset, gens


def generators(name: str) -> List[BitMatrix]:
    """Generators of a fixed catalog entry in parameter order ``a, b, c, ...``."""
    if name not in PATTERNS:
        raise KeyError(f"unknown catalog space {name!r}; choose from {sorted(PATTERNS)}")
    return pattern_generators(PATTERNS[name])[1]


def _symmetric(r: int) -> MatSubspace:
    words = []
    for i in range(r):
        for j in range(i, r):
            words.append((1 << (i * r + j)) | (1 << (j * r + i)))
    return MatSubspace.from_words(r, r, words)


def _alternating(r: int) -> MatSubspace:
    words = [
        (1 << (i * r + j)) | (1 << (j * r + i)) for i in range(r) for j in range(i + 1, r)
    ]
    return MatSubspace.from_words(r, r, words)


def _require(value: int, label: str) -> int:
    if not isinstance(value, int) or value < 0:
        raise ValueError(f"parameter {label} must be a non-negative integer, got {value!r}")
    return value


def named(name: str, **params) -> Union[MatSubspace, AffineMatSpace]:
    """
    A named space.

    Fixed entries take no parameters; ``sym`` and ``alt`` take ``r``, ``full`` and ``zero``
    take ``n`` and ``p``.

    :raises KeyError: for an unknown name.
    :raises ValueError: for missing, unexpected or negative parameters.

    Example:
        >>> named("sym", r=2).dim
        3
    """
    if name in PARAMETRIZED:
        expected = PARAMETRIZED[name]
        if set(params) != set(expected):
            raise ValueError(f"{name} expects parameters {expected}, got {tuple(params)}")
        values = {k: _require(v, k) for k, v in params.items()}
        if name == "sym":
            return _symmetric(values["r"])
        if name == "alt":
            return _alternating(values["r"])
        if name == "full":
            return MatSubspace.full(values["n"], values["p"])
        return MatSubspace.zero(values["n"], values["p"])
    if name not in PATTERNS:
        raise KeyError(f"unknown catalog space {name!r}; choose from {names()}")
    if params:
        raise ValueError(f"{name} takes no parameters, got {tuple(params)}")
    offset, gens = pattern_generators(PATTERNS[name])
    n, p = offset.shape
    if offset.is_zero():
        return MatSubspace.from_words(n, p, (g.flat for g in gens))
    return affine_from_words(n, p, offset.flat, (g.flat for g in gens))


def type_space(type_id: int, n_block: int = 0, p_block: int = 0) -> MatSubspace:
    """
    Representative of Type ``type_id``.

    Types 1 and 3 are ``Mats_2 v Mat_{n,p}`` and ``V2 v Mat_{n,p}``; the other types are
    ``X || Mat_{3,p}`` for ``X`` in ``Mats_3, G3, H3, I3, H4`` and only use ``p_block``.

    :raises ValueError: for an unknown type or negative block sizes.

    Example:
        >>> S = type_space(1, 1, 1)
        >>> S.shape, S.dim
        ((3, 3), 6)
    """
    _require(n_block, "n_block")
    _require(p_block, "p_block")
    full = MatSubspace.full
    if type_id == 1:
        return vee(_symmetric(2), full(n_block, p_block))
    if type_id == 3:
        return vee(named("V2"), full(n_block, p_block))
    heads = {2: _symmetric(3), 4: named("G3"), 5: named("H3"), 6: named("I3"), 7: named("H4")}
    if type_id not in heads:
        raise ValueError(f"unknown type {type_id}, expected 1..7")
    return coprod(heads[type_id], full(3, p_block))


def _entry(M: BitMatrix, i: int, j: int) -> int:
    return M.entry(i, j)


WITNESS_FORMULAS: Dict[int, Callable[[BitMatrix], Tuple[int, ...]]] = {
    1: lambda M: (_entry(M, 0, 0), _entry(M, 1, 1)),
    2: lambda M: (_entry(M, 0, 0), _entry(M, 1, 1), _entry(M, 2, 2)),
    3: lambda M: (0, _entry(M, 1, 0) ^ _entry(M, 1, 1), 0),
    4: lambda M: (_entry(M, 0, 0) ^ _entry(M, 0, 2), 0, 0),
    5: lambda M: (_entry(M, 0, 0), _entry(M, 1, 1), _entry(M, 2, 2)),
    6: lambda M: (0, 0, _entry(M, 0, 0) ^ _entry(M, 2, 0)),
    7: lambda M: (_entry(M, 0, 0) ^ _entry(M, 1, 0) ^ _entry(M, 2, 0),) * 3,
}


def witness_vector(type_id: int, M: BitMatrix) -> BitVector:
    """
    Value at ``M`` of the non-local range-compatible map listed for Type ``type_id``; the
    coordinates beyond the listed ones are zero.
    """
    if type_id not in WITNESS_FORMULAS:
        raise ValueError(f"unknown type {type_id}, expected 1..7")
    head = WITNESS_FORMULAS[type_id](M)
    return BitVector.from_list(list(head) + [0] * (M.n_rows - len(head)))


def witness_map(type_id: int, S: MatSubspace):
    """The listed witness of Type ``type_id`` as a map on ``S``."""
    from .rangecompat import MapOnSpace

    return MapOnSpace.from_function(S, lambda M: witness_vector(type_id, M))
