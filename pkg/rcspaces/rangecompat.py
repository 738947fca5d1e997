# -*- coding: utf-8 -*-
"""
Range-compatible and local linear maps on spaces of matrices.

A linear map ``F : S -> F2^n`` is stored through its ``n x d`` coefficient matrix ``G``
relative to the stored basis ``(s_1, ..., s_d)`` of ``S``: the ``j``-th column of ``G`` is
``F(s_j)``. ``F`` is range-compatible when ``F(s)`` lies in the range of ``s`` for every
``s`` in ``S``, and local when ``F(s) = s x`` for a fixed vector ``x``.

Range-compatibility is not decided by a basis, so :func:`rc_space` writes one block of
linear constraints on ``G`` per element of ``S``: for every ``k`` in the left kernel of ``s``,
``k^T G c(s) = 0`` where ``c(s)`` is the coordinate vector of ``s``.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional, Tuple

from .gf2core import (
    BitMatrix,
    BitVector,
    express,
    insert_reduced,
    lowest_bit,
    nullspace_words,
    parity,
    row_dependencies,
    solve_words,
)
from .matspace import (
    MatSubspace,
    _rows_of,
    apply,
    common_kernel,
    hat,
    quotient_mod,
    quotient_vector,
    quotient_word,
)

logger = logging.getLogger(__name__)

MAX_RC_DIM = 14
MAX_CHECK_DIM = 20


@dataclass(frozen=True)
class MapOnSpace:
    """
    A linear map ``F : S -> F2^n`` given by the images of the stored basis of ``S``.

    :param domain: The space ``S``.
    :type domain: MatSubspace

    :param images: ``F(s_1), ..., F(s_d)`` as ``n``-bit words.
    :type images: tuple
    """

    domain: MatSubspace
    images: Tuple[int, ...]

    def __post_init__(self):
        n = self.domain.ambient_rows
        if len(self.images) != self.domain.dim:
            raise ValueError(
                f"expected {self.domain.dim} images for a {self.domain.dim}-dim domain, "
                f"got {len(self.images)}"
            )
        for j, image in enumerate(self.images):
            if image < 0 or image >> n:
                raise ValueError(f"image {j} does not fit in {n} coordinates")

    @classmethod
    def from_coefficients(cls, domain: MatSubspace, G: BitMatrix) -> "MapOnSpace":
        """Map whose coefficient matrix (``n x d``) is ``G``."""
        if G.shape != (domain.ambient_rows, domain.dim):
            raise ValueError(
                f"coefficient matrix has shape {G.shape}, "
                f"expected {(domain.ambient_rows, domain.dim)}"
            )
        return cls(domain, tuple(G.column(j).bits for j in range(domain.dim)))

    @classmethod
    def from_coefficient_word(cls, domain: MatSubspace, word: int) -> "MapOnSpace":
        return cls.from_coefficients(
            domain, BitMatrix.from_flat(word, domain.ambient_rows, domain.dim)
        )

    @classmethod
    def from_function(
        cls, domain: MatSubspace, func: Callable[[BitMatrix], BitVector]
    ) -> "MapOnSpace":
        """
        Map agreeing with ``func`` on the stored basis of ``domain``.

        ``func`` is assumed linear; its values on the basis determine the map.
        """
        images = []
        for s in domain.basis:
            value = func(s)
            if value.length != domain.ambient_rows:
                raise ValueError(
                    f"function returned a vector of length {value.length}, "
                    f"expected {domain.ambient_rows}"
                )
            images.append(value.bits)
        return cls(domain, tuple(images))

    @classmethod
    def zero(cls, domain: MatSubspace) -> "MapOnSpace":
        return cls(domain, (0,) * domain.dim)

    @classmethod
    def local(cls, domain: MatSubspace, x: BitVector) -> "MapOnSpace":
        """The evaluation map ``s -> s x``."""
        n, p = domain.shape
        if x.length != p:
            raise ValueError(f"vector has length {x.length}, expected {p}")
        images = []
        for w in domain.words:
            image = 0
            for i, row in enumerate(_rows_of(w, n, p)):
                image |= parity(row & x.bits) << i
            images.append(image)
        return cls(domain, tuple(images))

    @property
    def coefficients(self) -> BitMatrix:
        n, d = self.domain.ambient_rows, self.domain.dim
        rows = []
        for i in range(n):
            row = 0
            for j, image in enumerate(self.images):
                row |= ((image >> i) & 1) << j
            rows.append(row)
        return BitMatrix(n, d, tuple(rows))

    @property
    def coefficient_word(self) -> int:
        return self.coefficients.flat

    def evaluate_coordinates(self, coords: int) -> int:
        value = 0
        j = 0
        while coords:
            if coords & 1:
                value ^= self.images[j]
            coords >>= 1
            j += 1
        return value

    def __call__(self, M: BitMatrix) -> BitVector:
        coords = self.domain.coordinates(M)
        return BitVector(self.domain.ambient_rows, self.evaluate_coordinates(coords.bits))

    def __add__(self, other: "MapOnSpace") -> "MapOnSpace":
        if self.domain != other.domain:
            raise ValueError("cannot add maps defined on different spaces")
        return MapOnSpace(self.domain, tuple(a ^ b for a, b in zip(self.images, other.images)))


@dataclass(frozen=True)
class RcAnalysis:
    """Range-compatible maps, local maps and the defect of one space."""

    rc: MatSubspace
    loc: MatSubspace
    defect: int


def _check_rc_dim(S: MatSubspace, bound: int = MAX_RC_DIM) -> None:
    if S.dim > bound:
        raise ValueError(f"range-compatibility analysis requires dim S <= {bound}, got {S.dim}")


def _check_domain(S: MatSubspace, F: MapOnSpace) -> None:
    if F.domain != S:
        raise ValueError("map is not defined on the given space")


@lru_cache(maxsize=1 << 16)
def _kernel_of_word(word: int, n: int, p: int) -> Tuple[int, ...]:
    return tuple(row_dependencies(_rows_of(word, n, p)))


def _element_coordinates(S: MatSubspace) -> Iterator[Tuple[int, int]]:
    """Yields ``(flattened element, coordinate word)`` pairs in Gray-code order."""
    word = 0
    coords = 0
    yield word, coords
    for i in range(1, 1 << S.dim):
        k = lowest_bit(i)
        word ^= S.words[k]
        coords ^= 1 << k
        yield word, coords


def _constraints(S: MatSubspace, stop_rank: Optional[int] = None) -> dict:
    """Reduced basis of the constraints on the coefficient matrix (``n * d`` bits)."""
    n, p = S.shape
    d = S.dim
    basis: dict = {}
    for word, coords in _element_coordinates(S):
        for k in _kernel_of_word(word, n, p):
            vector = 0
            i = 0
            while k:
                if k & 1:
                    vector |= coords << (i * d)
                k >>= 1
                i += 1
            if insert_reduced(basis, vector) and stop_rank is not None and len(basis) >= stop_rank:
                return basis
    return basis


def rc_space(S: MatSubspace) -> MatSubspace:
    """
    All range-compatible linear maps on ``S``, as ``n x d`` coefficient matrices.

    :raises ValueError: if ``dim S`` exceeds 14.

    Example:
        >>> from rcspaces.catalog import named
        >>> rc_space(named("sym", r=2)).dim
        3
    """
    _check_rc_dim(S)
    n, d = S.ambient_rows, S.dim
    constraints = _constraints(S)
    return MatSubspace.from_words(n, d, nullspace_words(list(constraints.values()), n * d))


def loc_space(S: MatSubspace) -> MatSubspace:
    """All local maps on ``S``; its dimension is ``p - dim(common kernel)``."""
    return hat(S)


def rc_defect(S: MatSubspace) -> int:
    """
    ``dim rc_space(S) - dim loc_space(S)``.

    Only the rank of the constraint system is needed; the elimination stops as soon as the
    constraints leave room for the local maps alone.
    """
    _check_rc_dim(S)
    n, p = S.shape
    d = S.dim
    loc_dim = p - common_kernel(S).dim
    ceiling = n * d - loc_dim
    constraints = _constraints(S, stop_rank=ceiling)
    return ceiling - len(constraints)


def analyze(S: MatSubspace) -> RcAnalysis:
    rc = rc_space(S)
    loc = loc_space(S)
    return RcAnalysis(rc, loc, rc.dim - loc.dim)


def is_range_compatible(S: MatSubspace, F: MapOnSpace) -> bool:
    """
    Whether ``F(s)`` lies in the range of ``s`` for every element ``s``.

    :raises ValueError: on a domain mismatch or when ``dim S`` exceeds 20.
    """
    _check_domain(S, F)
    _check_rc_dim(S, MAX_CHECK_DIM)
    n, p = S.shape
    for word, coords in _element_coordinates(S):
        value = F.evaluate_coordinates(coords)
        if not value:
            continue
        for k in _kernel_of_word(word, n, p):
            if parity(k & value):
                logger.debug("range condition fails at element %#x", word)
                return False
    return True


def is_local(S: MatSubspace, F: MapOnSpace) -> Optional[BitVector]:
    """
    A vector ``x`` with ``F(s) = s x`` for all ``s`` in ``S``, or ``None``.

    :raises ValueError: on a domain mismatch.
    """
    _check_domain(S, F)
    n, p = S.shape
    rows = []
    rhs = 0
    for w, image in zip(S.words, F.images):
        for i, row in enumerate(_rows_of(w, n, p)):
            rhs |= ((image >> i) & 1) << len(rows)
            rows.append(row)
    x = solve_words(rows, rhs, p)
    return None if x is None else BitVector(p, x)


def normalize_map(S: MatSubspace, F: MapOnSpace) -> MapOnSpace:
    """Canonical representative of ``F`` modulo the local maps."""
    _check_domain(S, F)
    loc = loc_space(S)
    return MapOnSpace.from_coefficient_word(S, loc.reduce_word(F.coefficient_word))


def witness_nonlocal(S: MatSubspace) -> Optional[MapOnSpace]:
    """
    A non-local range-compatible map on ``S``, normalised modulo the local maps, or ``None``
    when every range-compatible map is local.
    """
    rc = rc_space(S)
    loc = loc_space(S)
    if rc.dim == loc.dim:
        return None
    for word in rc.words:
        reduced = loc.reduce_word(word)
        if reduced:
            return MapOnSpace.from_coefficient_word(S, reduced)
    raise RuntimeError("range-compatible space larger than local space but no witness found")


def project_map(S: MatSubspace, F: MapOnSpace, y: BitVector) -> MapOnSpace:
    """
    The map ``F mod y`` on ``quotient_mod(S, y)``, defined by ``(F mod y)(pi s) = pi(F(s))``.

    ``F`` must be range-compatible for the result to be well defined.
    """
    _check_domain(S, F)
    n, p = S.shape
    quotient = quotient_mod(S, y)
    projected = [quotient_word(w, n, p, y.bits) for w in S.words]
    combos = express(projected, quotient.words)
    images = []
    for combo in combos:
        images.append(quotient_vector(F.evaluate_coordinates(combo), y.bits))
    return MapOnSpace(quotient, tuple(images))


def has_small_direction(S: MatSubspace) -> bool:
    """Whether some non-zero ``x`` satisfies ``dim S x <= 1``."""
    p = S.ambient_cols
    return any(apply(S, BitVector(p, x)).dim <= 1 for x in range(1, 1 << p))
