# -*- coding: utf-8 -*-
"""
Named verification suites.

Each suite binds one classification statement or identity about range-compatible maps,
reflexivity or lower-rank affine spaces to an executable check and returns a
:class:`SuiteReport`. Long suites split their enumeration into contiguous shards that run in
a process pool; partial reports merge associatively and whole-run bookkeeping checks are
added once every shard is present.

Example:
    >>> from rcspaces.harness import Verification
    >>> report = Verification("n2-hyperplanes").run()
    >>> report.passed
    True
"""

import json
import logging
import multiprocessing as mp
import warnings
import zlib
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .catalog import named, type_space, witness_map
from .equivalence import (
    are_equivalent,
    block_params,
    classify_type,
    find_embedding,
    orbit,
    profile,
)
from .gf2core import BitVector, rank
from .matspace import (
    MatSubspace,
    apply,
    coprod,
    echelon_forms,
    enumerate_subspaces,
    gaussian_binomial,
    hat,
    is_reduced,
    orthogonal,
    quotient_mod,
    reduce,
    subspace_sum,
    total_image,
    transpose_space,
    vee,
)
from .rangecompat import (
    MapOnSpace,
    has_small_direction,
    is_local,
    is_range_compatible,
    loc_space,
    normalize_map,
    project_map,
    rc_defect,
    rc_space,
    witness_nonlocal,
)
from .rankgeom import (
    CENSUS_CLASSES,
    CENSUS_SHAPES,
    classify_affine_lrk2,
    check_uniqueness_prop,
    has_corner_compression,
    is_primitive,
    lower_rank,
    tilde,
    upper_rank,
)
from .reflexivity import check_2dim_theorem, rank_one_span, reflexivity_defect

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 1000
SAMPLE_DEFAULTS = {"class-3x4-sampled": 10000, "azoff": 500, "nonprimitive": 1000}
CHECK_COLUMNS = ["check", "expected", "observed", "passed"]


@dataclass
class SuiteReport:
    """
    Outcome of one suite (or of one shard of it).

    :param suite: Suite name.
    :param checks: One row per check with columns ``check``, ``expected``, ``observed`` and
        ``passed``.
    :param totals: Counters summed over shards.
    :param invariants: Values that every shard computes identically (e.g. orbit sizes).
    :param shard_ids: Shards covered by the report.
    :param shards: Shard count of the layout.
    """

    suite: str
    checks: pd.DataFrame
    totals: Dict[str, int] = field(default_factory=dict)
    invariants: Dict[str, int] = field(default_factory=dict)
    shard_ids: Tuple[int, ...] = (0,)
    shards: int = 1
    seed: int = 0

    @property
    def passed(self) -> bool:
        return bool(self.checks["passed"].all()) if len(self.checks) else True

    @property
    def complete(self) -> bool:
        return set(self.shard_ids) == set(range(self.shards))

    @property
    def failures(self) -> pd.DataFrame:
        return self.checks[~self.checks["passed"]]

    @classmethod
    def merge(cls, reports: Sequence["SuiteReport"]) -> "SuiteReport":
        """
        Merges shard reports of one suite; the result does not depend on their order.

        :raises ValueError: if the reports disagree on the suite, layout or invariants, or
            cover a shard twice.
        """
        if not reports:
            raise ValueError("nothing to merge")
        reports = sorted(reports, key=lambda r: r.shard_ids)
        first = reports[0]
        shard_ids: List[int] = []
        totals: Dict[str, int] = {}
        for report in reports:
            layout = (report.suite, report.shards, report.seed)
            if layout != (first.suite, first.shards, first.seed):
                raise ValueError("cannot merge reports of different suites or shard layouts")
            if report.invariants != first.invariants:
                raise ValueError(f"shard invariants disagree for suite {first.suite}")
            if set(shard_ids) & set(report.shard_ids):
                raise ValueError("a shard is covered twice")
            shard_ids += list(report.shard_ids)
            for key, value in report.totals.items():
                totals[key] = totals.get(key, 0) + value
        checks = pd.concat([r.checks for r in reports], ignore_index=True)
        return cls(
            first.suite,
            checks,
            totals,
            dict(first.invariants),
            tuple(sorted(shard_ids)),
            first.shards,
            first.seed,
        )

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "complete": self.complete,
            "seed": self.seed,
            "shards": self.shards,
            "shard_ids": list(self.shard_ids),
            "totals": self.totals,
            "invariants": self.invariants,
            "checks": json.loads(self.checks.to_json(orient="records")),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        if not self.complete:
            lines.append(f"  partial: shards {list(self.shard_ids)} of {self.shards}")
        for key, value in sorted(self.totals.items()):
            lines.append(f"  {key}: {value}")
        for key, value in sorted(self.invariants.items()):
            lines.append(f"  {key}: {value}")
        for row in self.checks.itertuples(index=False):
            status = "ok" if row.passed else "FAILED"
            lines.append(f"  [{status}] {row.check}: expected {row.expected}, got {row.observed}")
        return "\n".join(lines)


class _Checks:
    def __init__(self):
        self.rows: List[dict] = []
        self.totals: Dict[str, int] = {}
        self.invariants: Dict[str, int] = {}

    def add(self, check: str, expected, observed, passed: Optional[bool] = None) -> None:
        if passed is None:
            passed = expected == observed
        self.rows.append(
            {
                "check": check,
                "expected": str(expected),
                "observed": str(observed),
                "passed": bool(passed),
            }
        )

    def count(self, key: str, amount: int = 1) -> None:
        self.totals[key] = self.totals.get(key, 0) + amount

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=CHECK_COLUMNS)


@dataclass
class _Context:
    suite: str
    seed: int
    samples: int
    shard: int
    shards: int
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        # one stream per (suite, worker seed)
        self.rng = np.random.default_rng([self.seed, zlib.crc32(self.suite.encode())])

    @property
    def first_shard(self) -> bool:
        return self.shard == 0


# ---------------------------------------------------------------------------
# Random objects


def random_subspace(rng: np.random.Generator, n: int, p: int, k: int) -> MatSubspace:
    """A random ``k``-dimensional subspace of ``Mat_{n,p}``."""
    n_bits = n * p
    if not 0 <= k <= n_bits:
        raise ValueError(f"dimension {k} out of range for {n}x{p} matrices")
    words: List[int] = []
    S = MatSubspace.zero(n, p)
    while S.dim < k:
        word = int(rng.integers(0, 1 << n_bits))
        if not S.contains_word(word):
            words.append(word)
            S = MatSubspace.from_words(n, p, words)
    return S


# ---------------------------------------------------------------------------
# Suites


def _suite_symmetric_f2(ctx: _Context, out: _Checks) -> None:
    for r in (2, 3):
        for n_block, p_block in ((0, 0), (1, 0), (0, 1), (1, 1)):
            S = vee(named("sym", r=r), MatSubspace.full(n_block, p_block))
            rows = S.ambient_rows
            diagonal = MapOnSpace.from_function(
                S,
                lambda M, r=r, rows=rows: BitVector.from_list(
                    [M.entry(i, i) for i in range(r)] + [0] * (rows - r)
                ),
            )
            label = f"Mats_{r} v Mat_{n_block},{p_block}"
            generated = subspace_sum(
                loc_space(S), MatSubspace.from_words(rows, S.dim, [diagonal.coefficient_word])
            )
            out.add(
                f"{label}: rc generated by local maps and the diagonal",
                True,
                rc_space(S) == generated,
            )
            out.add(f"{label}: diagonal map is non-local", True, is_local(S, diagonal) is None)


def _special_shapes():
    for type_id in range(1, 8):
        two_blocks = type_id in (1, 3)
        yield type_id, (0, 0)
        yield type_id, (1, 1) if two_blocks else (0, 1)


def _suite_special_types(ctx: _Context, out: _Checks) -> None:
    for type_id, params in _special_shapes():
        S = type_space(type_id, *params)
        label = f"Type {type_id} blocks {params}"
        out.add(f"{label}: defect", 1, rc_defect(S))
        table = witness_map(type_id, S)
        out.add(f"{label}: listed map is range-compatible", True, is_range_compatible(S, table))
        out.add(f"{label}: listed map is non-local", True, is_local(S, table) is None)
        witness = witness_nonlocal(S)
        out.add(
            f"{label}: witness congruent to listed map",
            True,
            witness is not None and normalize_map(S, table) == witness,
        )


def _type_orbits(n: int, p: int, type_ids: Sequence[int]) -> Dict[MatSubspace, int]:
    owner: Dict[MatSubspace, int] = {}
    for type_id in type_ids:
        for member in orbit(type_space(type_id, *block_params(type_id, n, p))):
            owner[member] = type_id
    return owner


def _suite_class_3x3(ctx: _Context, out: _Checks) -> None:
    type_ids = range(1, 7)
    sizes = {}
    owner: Dict[MatSubspace, int] = {}
    for type_id in type_ids:
        members = orbit(type_space(type_id, *block_params(type_id, 3, 3)))
        sizes[type_id] = len(members)
        for member in members:
            owner[member] = type_id
    for type_id, size in sizes.items():
        out.invariants[f"orbit_size_type_{type_id}"] = size
    out.invariants["orbit_total"] = sum(sizes.values())
    out.add("type orbits pairwise disjoint", sum(sizes.values()), len(owner))
    mismatches = 0
    for index, S in enumerate(enumerate_subspaces(3, 3, 6, ctx.shard, ctx.shards)):
        defect = rc_defect(S)
        out.count("subspaces")
        out.count(f"defect_{defect}")
        if (defect == 1) != (S in owner):
            mismatches += 1
            logger.warning("defect %d disagrees with orbit membership for %s", defect, S.words)
        if index % 100000 == 0 and index:
            logger.info("class-3x3 shard %d: %d subspaces processed", ctx.shard, index)
    totals = out.totals
    others = totals.get("subspaces", 0) - totals.get("defect_0", 0) - totals.get("defect_1", 0)
    out.add("defect in {0, 1}", 0, others)
    out.add("defect 1 exactly on type orbits", 0, mismatches)


def _finalize_class_3x3(report: SuiteReport, out: _Checks) -> None:
    out.add("subspace count", gaussian_binomial(9, 6), report.totals.get("subspaces", 0))
    out.add(
        "defect-1 count equals orbit total",
        report.invariants["orbit_total"],
        report.totals.get("defect_1", 0),
    )


def _suite_n2_hyperplanes(ctx: _Context, out: _Checks) -> None:
    for p, expected in ((2, 6), (3, 42)):
        total = 0
        rank_two = 0
        consistent = True
        for S in enumerate_subspaces(2, p, 2 * p - 1):
            total += 1
            B = orthogonal(S).basis[0]
            is_rank_two = rank(B) == 2
            rank_two += is_rank_two
            consistent &= rc_defect(S) == int(is_rank_two)
        out.add(f"hyperplanes of Mat_2,{p}", 2 ** (2 * p) - 1, total)
        out.add(f"Mat_2,{p}: orthogonal of rank 2", expected, rank_two)
        out.add(f"Mat_2,{p}: defect 1 exactly for rank-2 orthogonal", True, consistent)


def _suite_class_3x4_sampled(ctx: _Context, out: _Checks) -> None:
    reps = {i: type_space(i, *block_params(i, 3, 4)) for i in range(1, 8)}
    if ctx.first_shard:
        for type_id, S in reps.items():
            out.add(f"Type {type_id} in Mat_3,4: defect", 1, rc_defect(S))
        out.add("type representatives pairwise inequivalent", True, _pairwise_inequivalent(reps))
    rng = ctx.rng
    inconsistent = 0
    for _ in range(ctx.samples):
        S = random_subspace(rng, 3, 4, 9)
        defect = rc_defect(S)
        report = classify_type(S)
        out.count(f"defect_{defect}")
        if report.is_special:
            out.count("special")
        else:
            out.count("non_special_defect_0" if defect == 0 else "non_special_defect_other")
        if (defect == 1) != report.is_special or defect > 1:
            inconsistent += 1
    out.add("sampled: defect 1 exactly for special types", 0, inconsistent)


def _pairwise_inequivalent(reps: Dict[int, MatSubspace]) -> bool:
    for (i, S), (j, T) in combinations(reps.items(), 2):
        if are_equivalent(S, T) is not None:
            logger.warning("Types %d and %d are equivalent", i, j)
            return False
    return True


def _suite_inequivalence(ctx: _Context, out: _Checks) -> None:
    in_mat3 = {i: type_space(i, *block_params(i, 3, 3)) for i in range(1, 7)}
    in_mat34 = {i: type_space(i, *block_params(i, 3, 4)) for i in range(1, 8)}
    out.add("Types 1-6 in Mat_3 pairwise inequivalent", True, _pairwise_inequivalent(in_mat3))
    out.add("Types 1-7 in Mat_3,4 pairwise inequivalent", True, _pairwise_inequivalent(in_mat34))
    embedding = find_embedding(named("G3perp"), named("J3"))
    out.add("G3perp equivalent to a subspace of J3", True, embedding is not None)
    certificate = are_equivalent(named("H3perp"), named("U3"))
    out.add("H3perp equivalent to U3", True, certificate is not None)
    for label, S, expected in (
        ("Mata_3", named("alt", r=3), 2),
        ("G3perp", named("G3perp"), 2),
        ("H3perp", named("H3perp"), 2),
        ("I3perp", named("I3perp"), 3),
    ):
        out.add(f"{label}: upper-rank", expected, upper_rank(S))


def _suite_dual_table(ctx: _Context, out: _Checks) -> None:
    heads = {
        2: ("sym", named("alt", r=3)),
        4: ("G3", named("G3perp")),
        5: ("H3", named("H3perp")),
        6: ("I3", named("I3perp")),
        7: ("H4", named("H4perp")),
    }
    for type_id, (name, expected) in heads.items():
        head = named("sym", r=3) if name == "sym" else named(name)
        out.add(f"reduced orthogonal of {name}", True, reduce(orthogonal(head))[0] == expected)
        for p_block in (1, 2):
            S = type_space(type_id, 0, p_block)
            dual = reduce(orthogonal(S))[0]
            label = f"Type {type_id} with {p_block} extra columns"
            out.add(f"{label}: reduced orthogonal", True, dual == expected)
    for n_block in (0, 1, 2):
        S = type_space(1, n_block, 1)
        n = S.ambient_rows
        expected = coprod(named("alt", r=2), MatSubspace.full(2, n - 2))
        dual = reduce(orthogonal(S))[0]
        found = are_equivalent(dual, expected) is not None
        out.add(f"Type 1 with {n} rows: reduced orthogonal", True, found)
    for n_block in (0, 1):
        S = type_space(3, n_block, 1)
        n = S.ambient_rows
        expected = coprod(named("V2perp"), MatSubspace.full(2, n - 3))
        dual = reduce(orthogonal(S))[0]
        found = are_equivalent(dual, expected) is not None
        out.add(f"Type 3 with {n} rows: reduced orthogonal", True, found)


def _small_directions(S: MatSubspace) -> List[int]:
    p = S.ambient_cols
    return [x for x in range(1, 1 << p) if apply(S, BitVector(p, x)).dim <= 1]


def _suite_special_type_lemma(ctx: _Context, out: _Checks) -> None:
    spaces = {
        "Mata_3": named("alt", r=3),
        "G3perp": named("G3perp"),
        "H3perp": named("H3perp"),
        "I3perp": named("I3perp"),
        "H4perp": named("H4perp"),
    }
    for label, S in spaces.items():
        small = _small_directions(S)
        out.add(f"{label}: vectors x with dim Sx <= 1", 1 if label == "G3perp" else 0, len(small))
        out.add(f"{label}: dim of total image >= 3", True, total_image(S).dim >= 3)
    exceptional = BitVector(3, _small_directions(spaces["G3perp"])[0])
    out.add("G3perp: exceptional vector", "001", str(exceptional))
    rank_counts = profile(spaces["Mata_3"]).rank_counts()
    out.add("Mata_3: every non-zero element has rank 2", {0: 1, 2: 7}, rank_counts)


def _suite_self_duality(ctx: _Context, out: _Checks) -> None:
    for label, S in (
        ("Mata_3", named("alt", r=3)),
        ("G3perp", named("G3perp")),
        ("H3perp", named("H3perp")),
        ("H4perp", named("H4perp")),
    ):
        out.add(f"hat of {label} equivalent to itself", True, are_equivalent(hat(S), S) is not None)
    out.add(
        "hat of I3perp represented by the listed space",
        True,
        are_equivalent(hat(named("I3perp")), named("I3perp-hat")) is not None,
    )


def _suite_reflexivity_2dim(ctx: _Context, out: _Checks) -> None:
    for name in ("E2", "E3", "E2T"):
        out.add(f"{name}: reflexivity defect", 1, reflexivity_defect(named(name)))
    for n in (1, 2, 3):
        for p in (1, 2, 3):
            report = check_2dim_theorem(n, p)
            out.add(f"Mat_{n},{p}: non-reflexive exactly in the listed cases", True, report.passed)
            for case, count in report.counts.items():
                out.count(f"Mat_{n},{p}_case_{case}", count)
            if report.case_i_defects:
                out.invariants[f"Mat_{n},{p}_case_i_max_defect"] = max(report.case_i_defects)
    for case, name, shape in (("ii", "E2", (2, 3)), ("iii", "E3", (3, 3)), ("iv", "E2T", (3, 2))):
        key = f"Mat_{shape[0]},{shape[1]}_case_{case}"
        out.add(f"{name} flagged as case ({case})", True, out.totals.get(key, 0) > 0)


def _sample_shapes(rng: np.random.Generator, max_n: int = 4, max_p: int = 4, max_dim: int = 10):
    n = int(rng.integers(1, max_n + 1))
    p = int(rng.integers(1, max_p + 1))
    k = int(rng.integers(0, min(n * p, max_dim) + 1))
    return n, p, k


def _suite_duality_identity(ctx: _Context, out: _Checks) -> None:
    rng = ctx.rng
    failures = 0
    for _ in range(ctx.samples):
        S = random_subspace(rng, *_sample_shapes(rng))
        if reflexivity_defect(S) != rc_defect(hat(S)):
            failures += 1
    out.count("samples", ctx.samples)
    out.add("reflexivity defect equals defect of the hat space", 0, failures)


def _suite_transpose_invariance(ctx: _Context, out: _Checks) -> None:
    rng = ctx.rng
    failures = 0
    for _ in range(ctx.samples):
        S = random_subspace(rng, *_sample_shapes(rng))
        if reflexivity_defect(S) != reflexivity_defect(transpose_space(S)):
            failures += 1
    out.count("samples", ctx.samples)
    out.add("reflexivity defect invariant under transposition", 0, failures)


def _suite_azoff(ctx: _Context, out: _Checks) -> None:
    rng = ctx.rng
    failures = 0
    for _ in range(ctx.samples):
        V = random_subspace(rng, *_sample_shapes(rng))
        if reflexivity_defect(orthogonal(V)) != V.dim - rank_one_span(V).dim:
            failures += 1
    out.count("samples", ctx.samples)
    out.add("defect of the orthogonal equals dim V - dim V(1)", 0, failures)


def _suite_affine_lrk2(ctx: _Context, out: _Checks) -> None:
    for n, p in CENSUS_SHAPES:
        sharded = (n, p) == (3, 3)
        if not sharded and not ctx.first_shard:
            continue
        report = classify_affine_lrk2(n, p, *((ctx.shard, ctx.shards) if sharded else (0, 1)))
        tag = f"Mat_{n},{p}"
        out.invariants[f"{tag}_classes"] = report.class_count
        for row in report.classes.itertuples(index=False):
            out.invariants[f"{tag}_orbit_{row.name}"] = int(row.orbit_size)
            out.count(f"{tag}_found_{row.name}", int(row.found))
        out.invariants[f"{tag}_orbit_total"] = report.orbit_total
        out.count(f"{tag}_survivors", report.survivors)
        out.add(f"{tag}: survivors inside listed orbits", 0, report.unmatched)
        for name, space in report.representatives.items():
            observed = (lower_rank(space), space.codim)
            out.add(f"{tag}: {name} has lower-rank 2 and codimension 3", (2, 3), observed)


def _finalize_affine_lrk2(report: SuiteReport, out: _Checks) -> None:
    occurring = []
    for n, p in CENSUS_SHAPES:
        tag = f"Mat_{n},{p}"
        out.add(
            f"{tag}: survivors equal the union of listed orbits",
            report.invariants[f"{tag}_orbit_total"],
            report.totals.get(f"{tag}_survivors", 0),
        )
        present = sum(
            1
            for name in CENSUS_CLASSES[(n, p)]
            if report.totals.get(f"{tag}_found_{name}", 0) > 0
        )
        out.add(f"{tag}: every listed class occurs", report.invariants[f"{tag}_classes"], present)
        occurring.append(present)
    out.add("class counts", (2, 3, 3, 5), tuple(occurring))


def _suite_uniqueness(ctx: _Context, out: _Checks) -> None:
    for n, p in CENSUS_SHAPES:
        out.add(
            f"Mat_{n},{p}: C and J classes distinct, both with non-trivial stabilizers",
            True,
            check_uniqueness_prop(n, p),
        )


def _suite_maintheolin_f2(ctx: _Context, out: _Checks) -> None:
    rng = ctx.rng
    shapes = [(3, 2), (3, 3), (3, 4), (4, 2), (4, 3)]
    failures = 0
    for _ in range(ctx.samples):
        n, p = shapes[int(rng.integers(len(shapes)))]
        codim = int(rng.integers(0, 2 * n - 4 + 1))
        S = random_subspace(rng, n, p, n * p - codim)
        if rc_defect(S):
            failures += 1
        out.count(f"samples_{n}x{p}")
    out.add("codim <= 2n - 4 implies every range-compatible map is local", 0, failures)


def _suite_properties(ctx: _Context, out: _Checks) -> None:
    rng = ctx.rng
    # double orthogonality
    exhaustive = all(
        orthogonal(orthogonal(S)) == S for k in range(5) for S in enumerate_subspaces(2, 2, k)
    )
    out.add("double orthogonal on all subspaces of Mat_2", True, exhaustive)
    failures = 0
    for _ in range(ctx.samples):
        S = random_subspace(rng, *_sample_shapes(rng, max_dim=16))
        failures += orthogonal(orthogonal(S)) != S
    out.add("double orthogonal on random subspaces", 0, failures)
    # quotient codimension identity
    failures = 0
    for _ in range(100):
        n = int(rng.integers(2, 5))
        p = int(rng.integers(1, 5))
        S = random_subspace(rng, n, p, int(rng.integers(0, n * p + 1)))
        dual = orthogonal(S)
        for y in range(1, 1 << n):
            vector = BitVector(n, y)
            failures += quotient_mod(S, vector).codim != S.codim - apply(dual, vector).dim
    out.add("codim(S mod y) = codim S - dim S^perp y", 0, failures)
    # splitting
    failures = 0
    for _ in range(200):
        n = int(rng.integers(1, 4))
        blocks = []
        for _side in range(2):
            cols = int(rng.integers(1, 3))
            blocks.append(random_subspace(rng, n, cols, int(rng.integers(0, n * cols + 1))))
        A, B = blocks
        failures += rc_defect(coprod(A, B)) != rc_defect(A) + rc_defect(B)
    out.add("defect additive under juxtaposition", 0, failures)
    out.add(
        "full matrix spaces have defect 0",
        0,
        sum(rc_defect(MatSubspace.full(n, p)) for n in range(1, 4) for p in range(1, 4)),
    )
    # embedding, row-wise structure, projection
    embed_failures = 0
    row_failures = 0
    projection_failures = 0
    for _ in range(100):
        n, p, k = _sample_shapes(rng, max_n=3, max_p=3, max_dim=7)
        S = random_subspace(rng, n, p, k)
        padded = tilde(S, n + 1, p)
        rc_padded = rc_space(padded)
        last_row = ((1 << S.dim) - 1) << (n * S.dim)
        embed_failures += rc_defect(padded) != rc_defect(S)
        embed_failures += any(w & last_row for w in rc_padded.words)
        row_failures += not _row_wise(S)
        projection_failures += not _projection_compatible(S)
    out.add("padding rows keeps the defect and zero padded coordinates", 0, embed_failures)
    out.add("range-compatible maps act row by row", 0, row_failures)
    out.add("projected maps are range-compatible", 0, projection_failures)
    # one column
    failures = sum(
        rc_defect(S)
        for n in range(1, 5)
        for k in range(n + 1)
        for S in enumerate_subspaces(n, 1, k)
    )
    out.add("dim U = 1 implies defect 0", 0, failures)
    # a small direction forces localness
    failures = 0
    checked = 0
    for _ in range(ctx.samples):
        n = int(rng.integers(2, 4))
        p = int(rng.integers(1, 4))
        codim = int(rng.integers(0, 2 * n - 3 + 1))
        S = random_subspace(rng, n, p, max(n * p - codim, 0))
        if has_small_direction(S):
            checked += 1
            failures += rc_defect(S) != 0
    out.count("small_direction_samples", checked)
    out.add("dim Sx <= 1 for some x forces defect 0", 0, failures)
    # enumeration counts
    mismatched = []
    for n_bits in range(10):
        for k in range(n_bits + 1):
            if sum(1 for _ in echelon_forms(n_bits, k)) != gaussian_binomial(n_bits, k):
                mismatched.append((n_bits, k))
    out.add("echelon enumeration counts match Gaussian binomials", [], mismatched)


def _row_wise(S: MatSubspace) -> bool:
    n, p = S.shape
    rc = rc_space(S)
    for word in rc.words:
        F = MapOnSpace.from_coefficient_word(S, word)
        for M in S.elements():
            value = F(M).bits
            for i in range(n):
                if not M.rows[i] and (value >> i) & 1:
                    return False
    return True


def _projection_compatible(S: MatSubspace) -> bool:
    n = S.ambient_rows
    if n < 2:
        return True
    rc = rc_space(S)
    for word in rc.words:
        F = MapOnSpace.from_coefficient_word(S, word)
        for y in range(1, 1 << n):
            vector = BitVector(n, y)
            if not is_range_compatible(quotient_mod(S, vector), project_map(S, F, vector)):
                return False
    return True


def _suite_primitivity(ctx: _Context, out: _Checks) -> None:
    for label, S in (("Mata_3", named("alt", r=3)), ("U3", named("U3"))):
        out.add(f"{label}: primitive", True, is_primitive(S))
        out.add(f"{label}: dimension", 3, S.dim)
        out.add(f"{label}: non-zero elements all of rank 2", {0: 1, 2: 7}, profile(S).rank_counts())
    inequivalent = are_equivalent(named("alt", r=3), named("U3")) is None
    out.add("Mata_3 and U3 inequivalent", True, inequivalent)
    J3 = named("J3")
    embedding = find_embedding(named("alt", r=3), J3)
    out.add("Mata_3 not equivalent to a subspace of J3", True, embedding is None)
    out.add("U3 not equivalent to a subspace of J3", True, find_embedding(named("U3"), J3) is None)
    spaces = {name: named(name) for name in ("M1", "M2", "M3", "M4")}
    for name, S in spaces.items():
        observed = (is_primitive(S), S.dim, upper_rank(S))
        out.add(f"{name}: primitive of dimension 3 and upper-rank 2", (True, 3, 2), observed)
        line_direction = any(apply(S, BitVector(3, x)).dim == 1 for x in range(1, 8))
        out.add(f"{name}: some x with dim Vx = 1", True, line_direction)
    for (a, S), (b, T) in combinations(spaces.items(), 2):
        out.invariants[f"{a}~{b}"] = int(are_equivalent(S, T) is not None)
    V2 = named("V2")
    out.add("V2 is not primitive", False, is_primitive(V2))
    # primitive spaces of upper-rank 2 only occur in 3 x 3
    offenders = 0
    for n, p in ((2, 2), (2, 3), (3, 2)):
        for k in range(1, n * p + 1):
            for S in enumerate_subspaces(n, p, k):
                if upper_rank(S) == 2 and is_primitive(S):
                    offenders += 1
    out.add("primitive of upper-rank 2 outside 3x3", 0, offenders)
    # non-primitive reduced spaces of upper-rank <= 2 admit a corner compression
    failures = 0
    checked = 0
    candidates = list(enumerate_subspaces(3, 3, 2))
    rng = ctx.rng
    candidates += [random_subspace(rng, 3, 3, int(rng.integers(3, 6))) for _ in range(ctx.samples)]
    for S in candidates:
        if not is_reduced(S) or upper_rank(S) > 2 or is_primitive(S):
            continue
        checked += 1
        failures += not has_corner_compression(S)
    out.count("non_primitive_checked", checked)
    out.add(
        "non-primitive reduced 3x3 spaces of upper-rank <= 2 have a corner compression",
        0,
        failures,
    )


SUITES: Dict[str, Callable[[_Context, _Checks], None]] = {
    "symmetric-f2": _suite_symmetric_f2,
    "special-types": _suite_special_types,
    "class-3x3": _suite_class_3x3,
    "n2-hyperplanes": _suite_n2_hyperplanes,
    "class-3x4-sampled": _suite_class_3x4_sampled,
    "inequivalence": _suite_inequivalence,
    "dual-table": _suite_dual_table,
    "special-type-lemma": _suite_special_type_lemma,
    "self-duality": _suite_self_duality,
    "reflexivity-2dim": _suite_reflexivity_2dim,
    "duality-identity": _suite_duality_identity,
    "transpose-invariance": _suite_transpose_invariance,
    "azoff": _suite_azoff,
    "affine-lrk2": _suite_affine_lrk2,
    "uniqueness": _suite_uniqueness,
    "maintheolin-f2": _suite_maintheolin_f2,
    "properties": _suite_properties,
    "primitivity": _suite_primitivity,
}

FINALIZERS: Dict[str, Callable[[SuiteReport, _Checks], None]] = {
    "class-3x3": _finalize_class_3x3,
    "affine-lrk2": _finalize_affine_lrk2,
}

SLOW_SUITES = ("class-3x3", "affine-lrk2", "class-3x4-sampled")


def list_suites() -> List[str]:
    return list(SUITES)


def finalize_report(report: SuiteReport) -> SuiteReport:
    """Adds the whole-run checks of a complete report."""
    if not report.complete or report.suite not in FINALIZERS:
        return report
    out = _Checks()
    FINALIZERS[report.suite](report, out)
    checks = pd.concat([report.checks, out.frame()], ignore_index=True)
    return SuiteReport(
        report.suite,
        checks,
        report.totals,
        report.invariants,
        report.shard_ids,
        report.shards,
        report.seed,
    )


class Verification:
    """
    Runs one verification suite, optionally split into shards.

    Sampling suites draw from ``numpy.random.default_rng`` seeded with ``seed + 100 * shard``
    and a hash of the suite name, and divide their samples between shards; enumeration suites
    split their enumeration order.

    :param suite: Suite name (see :func:`list_suites`).
    :type suite: str

    :param seed: Base seed of the sampling suites.
    :type seed: int, optional

    :param samples: Sample count; defaults to the suite's own default.
    :type samples: int, optional

    :param shards: Number of shards.
    :type shards: int, optional

    :param shard: Run only this shard and return a partial report.
    :type shard: int, optional

    :param nproc: Number of worker processes used when running all shards.
    :type nproc: int, optional

    :raises KeyError: for an unknown suite.
    :raises ValueError: for an invalid shard layout.
    """

    def __init__(
        self,
        suite: str,
        seed: int = 0,
        samples: Optional[int] = None,
        shards: int = 1,
        shard: Optional[int] = None,
        nproc: int = 1,
    ) -> None:
        if suite not in SUITES:
            raise KeyError(f"unknown suite {suite!r}; choose from {list_suites()}")
        if shards < 1:
            raise ValueError(f"shards must be at least 1, got {shards}")
        if shard is not None and not 0 <= shard < shards:
            raise ValueError(f"shard must lie in [0, {shards}), got {shard}")
        if nproc < 1:
            raise ValueError(f"nproc must be at least 1, got {nproc}")
        self.suite = suite
        self.seed = seed
        if samples is None:
            samples = SAMPLE_DEFAULTS.get(suite, DEFAULT_SAMPLES)
        self.samples = samples
        self.shards = shards
        self.shard = shard
        self.nproc = nproc
        if self.samples < shards:
            warnings.warn(
                f"{self.samples} samples spread over {shards} shards "
                "leaves some shards without samples",
                stacklevel=2,
            )

    def _args(self, shard: int):
        return (self.suite, self.seed, self.samples, shard, self.shards)

    def run(self) -> SuiteReport:
        """
        Runs the suite and returns its report. With ``shard`` set only that shard runs;
        otherwise all shards run, in a process pool when ``nproc > 1``.
        """
        if self.shard is not None:
            return finalize_report(Verification.worker(self._args(self.shard)))
        if self.nproc > 1 and self.shards > 1:
            with mp.Pool(processes=min(self.nproc, self.shards)) as pool:
                reports = pool.map(Verification.worker, [self._args(i) for i in range(self.shards)])
        else:
            reports = [Verification.worker(self._args(i)) for i in range(self.shards)]
        report = finalize_report(SuiteReport.merge(reports))
        logger.info("suite %s finished: %s", self.suite, "pass" if report.passed else "FAIL")
        return report

    @staticmethod
    def worker(args) -> SuiteReport:
        """Runs one shard of a suite."""
        suite, seed, samples, shard, shards = args
        share = samples // shards + (1 if shard < samples % shards else 0)
        context = _Context(suite, seed + shard * 100, share, shard, shards)
        out = _Checks()
        logger.info("running suite %s shard %d/%d", suite, shard, shards)
        SUITES[suite](context, out)
        return SuiteReport(suite, out.frame(), out.totals, out.invariants, (shard,), shards, seed)


def verify(suite: str, **kwargs) -> SuiteReport:
    """Shortcut for ``Verification(suite, **kwargs).run()``."""
    return Verification(suite, **kwargs).run()
