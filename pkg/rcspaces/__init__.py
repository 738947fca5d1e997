# -*- coding: utf-8 -*-
"""
Range-compatible linear maps, algebraic reflexivity and affine spaces of matrices with
lower-rank 2, computed exactly over the two-element field.
"""

from .catalog import generators, named, names, type_space, witness_map
from .equivalence import (
    InvariantProfile,
    TypeReport,
    are_affine_equivalent,
    are_equivalent,
    canonical_form,
    classify_type,
    find_embedding,
    orbit,
    profile,
    stabilizer_count,
    transform,
)
from .gf2core import BitMatrix, BitVector, enumerate_gl, gl_order, rank, rref
from .harness import SuiteReport, Verification, list_suites, verify
from .matspace import (
    AffineMatSpace,
    MatSubspace,
    coprod,
    enumerate_subspaces,
    gaussian_binomial,
    hat,
    orthogonal,
    quotient_mod,
    reduce,
    span,
    vee,
)
from .rangecompat import (
    MapOnSpace,
    RcAnalysis,
    analyze,
    is_local,
    is_range_compatible,
    loc_space,
    rc_defect,
    rc_space,
    witness_nonlocal,
)
from .rankgeom import (
    CensusReport,
    classify_affine_lrk2,
    i_np,
    is_primitive,
    lower_rank,
    tilde,
    upper_rank,
)
from .reflexivity import TwoDimReport, check_2dim_theorem, reflexive_closure, reflexivity_defect
from .utils import SpaceFormatError, emit_space, parse_map, parse_space

__all__ = [
    "AffineMatSpace",
    "BitMatrix",
    "BitVector",
    "CensusReport",
    "InvariantProfile",
    "MapOnSpace",
    "MatSubspace",
    "RcAnalysis",
    "SpaceFormatError",
    "SuiteReport",
    "TwoDimReport",
    "TypeReport",
    "Verification",
    "analyze",
    "are_affine_equivalent",
    "are_equivalent",
    "canonical_form",
    "check_2dim_theorem",
    "classify_affine_lrk2",
    "classify_type",
    "coprod",
    "emit_space",
    "enumerate_gl",
    "enumerate_subspaces",
    "find_embedding",
    "gaussian_binomial",
    "generators",
    "gl_order",
    "hat",
    "i_np",
    "is_local",
    "is_primitive",
    "is_range_compatible",
    "list_suites",
    "loc_space",
    "lower_rank",
    "named",
    "names",
    "orbit",
    "orthogonal",
    "parse_map",
    "parse_space",
    "profile",
    "quotient_mod",
    "rank",
    "rc_defect",
    "rc_space",
    "reduce",
    "reflexive_closure",
    "reflexivity_defect",
    "rref",
    "span",
    "stabilizer_count",
    "tilde",
    "transform",
    "type_space",
    "upper_rank",
    "vee",
    "verify",
    "witness_map",
    "witness_nonlocal",
]

__version__ = "1.0.0"
