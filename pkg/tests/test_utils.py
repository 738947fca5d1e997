# -*- coding: utf-8 -*-
"""
Tests for the text formats and report dumping.
"""

import json

import pandas as pd
import pytest
from hypothesis import given, settings

from rcspaces.catalog import named, names
from rcspaces.gf2core import identity
from rcspaces.harness import verify
from rcspaces.matspace import AffineMatSpace, MatSubspace
from rcspaces.rangecompat import witness_nonlocal
from rcspaces.utils import (
    SpaceFormatError,
    dump_report,
    emit_certificate,
    emit_map,
    emit_space,
    parse_map,
    parse_space,
    read_space,
    write_space,
)

from .strategies import subspaces

CATALOG_PARAMS = {
    "sym": {"r": 3},
    "alt": {"r": 3},
    "full": {"n": 2, "p": 3},
    "zero": {"n": 3, "p": 2},
}


def test_emit_alternating():
    assert emit_space(named("alt", r=2)) == "matspace 2 2 1\n01\n10"
    assert emit_space(MatSubspace.zero(2, 3)) == "matspace 2 3 0"


def test_parse_space():
    text = "# symmetric 2 x 2\nmatspace 2 2 3\n10\n00\n\n01\n10\n\n00\n01\n"
    assert parse_space(text) == named("sym", r=2)


@pytest.mark.parametrize("name", names())
def test_parse_emitted_catalog_space(name):
    S = named(name, **CATALOG_PARAMS.get(name, {}))
    assert parse_space(emit_space(S)) == S


def test_parse_emitted_empty_shape():
    assert parse_space(emit_space(MatSubspace.zero(0, 3))) == MatSubspace.zero(0, 3)


@settings(max_examples=200, deadline=None)
@given(subspaces(max_rows=4, max_cols=4, max_gens=8))
def test_parse_emitted_random_space(S):
    assert parse_space(emit_space(S)) == S


def test_affine_text():
    C = named("affine-C")
    text = emit_space(C)
    assert text.startswith("affmatspace 2 2 1\n10\n01")
    parsed = parse_space(text)
    assert isinstance(parsed, AffineMatSpace)
    assert parsed == C


def test_certificate_text():
    text = emit_certificate((identity(2), identity(3)))
    assert text == "certificate 2 3\n10\n01\n\n100\n010\n001"


def test_map_text():
    S = named("sym", r=2)
    witness = witness_nonlocal(S)
    text = emit_map(witness)
    assert text.splitlines()[0] == "maponspace 2 3"
    assert parse_map(text, S) == witness


@pytest.mark.parametrize(
    "text, lineno, message",
    [
        ("matspace 2 2 1\n0x\n00\n", 2, "invalid character"),
        ("matspace 2 2 1\n011\n00\n", 2, "expected 2 characters"),
        ("matspace 2 2 2\n01\n10\n", 3, "expected 2 matrix blocks"),
        ("matspace 2 2 1\n01\n", 2, "expected 2 rows"),
        ("matspace 2 -2 1\n", 1, "non-negative"),
        ("matspace 2 2\n", 1, "takes 3 integers"),
        ("\n\nmatrix 2 2 1\n", 3, "expected one of"),
        ("matspace 2 two 1\n", 1, "non-integer"),
        ("affmatspace 0 2 0\n", 1, "non-empty shape"),
        ("", 1, "missing header"),
    ],
)
def test_format_errors(text, lineno, message):
    with pytest.raises(SpaceFormatError, match=message) as info:
        parse_space(text)
    assert info.value.lineno == lineno
    assert str(info.value).startswith(f"line {lineno}: ")


def test_map_errors():
    S = named("sym", r=2)
    with pytest.raises(SpaceFormatError, match="does not fit"):
        parse_map("maponspace 3 3\n000\n000\n000\n", S)
    with pytest.raises(SpaceFormatError, match="expected 3 image lines"):
        parse_map("maponspace 2 3\n10\n01\n", S)


def test_read_write(tmp_path):
    path = tmp_path / "v2.txt"
    write_space(path, named("V2"))
    assert read_space(path) == named("V2")
    assert path.read_text(encoding="utf-8").endswith("\n")


def test_dump_report(tmp_path):
    report = verify("n2-hyperplanes")
    json_path = tmp_path / "report.json"
    dump_report(report, json_path)
    with open(json_path, encoding="utf-8") as stream:
        assert json.load(stream)["suite"] == "n2-hyperplanes"
    csv_path = tmp_path / "report.csv"
    dump_report(report, csv_path)
    table = pd.read_csv(csv_path)
    assert list(table.columns) == ["check", "expected", "observed", "passed"]
    assert table["passed"].all()
