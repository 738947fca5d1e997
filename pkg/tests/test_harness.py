# -*- coding: utf-8 -*-
"""
Tests for the verification suites and report merging.
"""

import numpy as np
import pandas as pd
import pytest

from rcspaces.harness import (
    CHECK_COLUMNS,
    SLOW_SUITES,
    SuiteReport,
    Verification,
    _Context,
    finalize_report,
    list_suites,
    random_subspace,
    verify,
)
from rcspaces.rankgeom import CENSUS_CLASSES


def _report(shard, totals, invariants=None, passed=True, shards=2):
    checks = pd.DataFrame(
        [{"check": f"shard {shard}", "expected": "1", "observed": "1", "passed": passed}],
        columns=CHECK_COLUMNS,
    )
    return SuiteReport("demo", checks, totals, invariants or {}, (shard,), shards)


def test_merge_sums_totals():
    merged = SuiteReport.merge([_report(0, {"a": 2}), _report(1, {"a": 3, "b": 1})])
    assert merged.totals == {"a": 5, "b": 1}
    assert merged.shard_ids == (0, 1)
    assert merged.complete
    assert merged.passed
    assert len(merged.checks) == 2


def test_merge_is_order_independent():
    parts = [_report(1, {"a": 3}, {"k": 7}), _report(0, {"a": 2}, {"k": 7})]
    forward = SuiteReport.merge(parts)
    backward = SuiteReport.merge(parts[::-1])
    assert forward.to_dict() == backward.to_dict()
    assert forward.invariants == {"k": 7}


def test_merge_errors():
    with pytest.raises(ValueError, match="nothing to merge"):
        SuiteReport.merge([])
    with pytest.raises(ValueError, match="covered twice"):
        SuiteReport.merge([_report(0, {}), _report(0, {})])
    with pytest.raises(ValueError, match="invariants disagree"):
        SuiteReport.merge([_report(0, {}, {"k": 1}), _report(1, {}, {"k": 2})])
    other = SuiteReport("other", _report(1, {}).checks, {}, {}, (1,), 2)
    with pytest.raises(ValueError, match="different suites"):
        SuiteReport.merge([_report(0, {}), other])


def test_partial_report():
    report = _report(0, {"a": 1}, passed=False)
    assert not report.complete
    assert not report.passed
    assert len(report.failures) == 1
    assert "partial" in report.summary()
    assert "FAIL" in report.summary()


def test_finalize_skips_partial_reports():
    report = SuiteReport("class-3x3", _report(0, {}).checks, {}, {}, (0,), 2)
    assert finalize_report(report) is report


def _census_report(missing=None):
    totals, invariants = {}, {}
    for (n, p), classes in CENSUS_CLASSES.items():
        tag = f"Mat_{n},{p}"
        invariants[f"{tag}_classes"] = len(classes)
        invariants[f"{tag}_orbit_total"] = 10 * len(classes)
        totals[f"{tag}_survivors"] = 10 * len(classes)
        for name in classes:
            totals[f"{tag}_found_{name}"] = 0 if (tag, name) == missing else 10
    return SuiteReport("affine-lrk2", _report(0, {}).checks, totals, invariants, (0,), 1)


def test_census_class_counts_come_from_the_run():
    """A listed class that never occurs fails the whole-run class count."""
    assert finalize_report(_census_report()).passed
    report = finalize_report(_census_report(missing=("Mat_3,3", "F3-affine")))
    assert not report.passed
    failed = set(report.failures["check"])
    assert failed == {"Mat_3,3: every listed class occurs", "class counts"}
    row = report.checks[report.checks["check"] == "class counts"].iloc[0]
    assert row["observed"] == "(2, 3, 3, 4)"


def test_sampling_streams_depend_on_suite_and_seed():
    def draws(suite, seed):
        return _Context(suite, seed, 10, 0, 1).rng.integers(0, 1 << 30, size=8).tolist()

    assert draws("duality-identity", 0) == draws("duality-identity", 0)
    assert draws("duality-identity", 0) != draws("transpose-invariance", 0)
    assert draws("duality-identity", 0) != draws("duality-identity", 100)


def test_random_subspace():
    rng = np.random.default_rng(3)
    S = random_subspace(rng, 3, 2, 4)
    assert S.shape == (3, 2)
    assert S.dim == 4
    with pytest.raises(ValueError, match="out of range"):
        random_subspace(rng, 2, 2, 5)


def test_suite_registry():
    suites = list_suites()
    assert "n2-hyperplanes" in suites
    assert set(SLOW_SUITES) <= set(suites)


def test_verification_errors():
    with pytest.raises(KeyError):
        Verification("no-such-suite")
    with pytest.raises(ValueError, match="shards"):
        Verification("azoff", shards=0)
    with pytest.raises(ValueError, match="shard must lie"):
        Verification("azoff", shards=2, shard=2)
    with pytest.raises(ValueError, match="nproc"):
        Verification("azoff", nproc=0)
    with pytest.warns(UserWarning, match="without samples"):
        Verification("azoff", samples=1, shards=2)


def test_n2_hyperplanes():
    """Six of the fifteen hyperplanes of Mat_2 and 42 of 63 in Mat_2,3 carry a non-local map."""
    report = verify("n2-hyperplanes")
    assert report.passed
    observed = dict(zip(report.checks["check"], report.checks["observed"]))
    assert observed["Mat_2,2: orthogonal of rank 2"] == "6"
    assert observed["Mat_2,3: orthogonal of rank 2"] == "42"


@pytest.mark.parametrize(
    "suite",
    [
        "symmetric-f2",
        "special-types",
        "inequivalence",
        "dual-table",
        "special-type-lemma",
        "self-duality",
        "uniqueness",
    ],
)
def test_exact_suites(suite):
    report = verify(suite)
    assert report.passed, report.summary()


@pytest.mark.parametrize(
    "suite", ["duality-identity", "transpose-invariance", "azoff", "maintheolin-f2"]
)
def test_sampling_suites(suite):
    report = verify(suite, seed=1, samples=30)
    assert report.passed, report.summary()


def test_sharded_sampling_matches_serial():
    """Shards run in a pool produce the same merged report as shards run in turn."""
    serial = verify("maintheolin-f2", seed=5, samples=8, shards=2)
    pooled = verify("maintheolin-f2", seed=5, samples=8, shards=2, nproc=2)
    assert serial.to_dict() == pooled.to_dict()
    assert sum(v for k, v in serial.totals.items() if k.startswith("samples_")) == 8


def test_single_shard_run():
    report = Verification("maintheolin-f2", samples=4, shards=2, shard=1).run()
    assert report.shard_ids == (1,)
    assert not report.complete


def test_report_serialisation():
    report = verify("n2-hyperplanes")
    payload = report.to_dict()
    assert payload["suite"] == "n2-hyperplanes"
    assert payload["passed"] is True
    assert len(payload["checks"]) == len(report.checks)
    assert report.to_json().startswith("{")


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["reflexivity-2dim", "primitivity", "properties"])
def test_long_suites(suite):
    report = verify(suite, samples=50)
    assert report.passed, report.summary()


@pytest.mark.slow
def test_class_3x3_in_shards():
    report = verify("class-3x3", shards=4, nproc=4)
    assert report.passed, report.summary()
    assert report.totals["subspaces"] == 788035


@pytest.mark.slow
def test_affine_census_suite():
    report = verify("affine-lrk2")
    assert report.passed, report.summary()
