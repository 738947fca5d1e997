# -*- coding: utf-8 -*-
"""
Tests for the command-line front end.
"""

import json

import pytest

from rcspaces import __version__
from rcspaces.catalog import named
from rcspaces.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from rcspaces.utils import write_space


@pytest.fixture()
def space_file(tmp_path):
    def write(name, **params):
        path = tmp_path / f"{name}.txt"
        write_space(path, named(name, **params))
        return str(path)

    return write


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert __version__ in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main([]) == EXIT_USAGE
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["verify", "no-such-suite"]) == EXIT_USAGE


def test_catalog(capsys):
    assert main(["catalog", "V2"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("matspace 3 2 3\n")
    assert main(["catalog", "sym", "r=2"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("matspace 2 2 3\n")
    assert main(["catalog", "--list"]) == EXIT_OK
    assert "sym(r)" in capsys.readouterr().out.splitlines()


def test_catalog_errors(capsys):
    assert main(["catalog", "W9"]) == EXIT_USAGE
    assert "unknown catalog space" in capsys.readouterr().err
    assert main(["catalog", "sym", "r"]) == EXIT_USAGE
    assert "key=value" in capsys.readouterr().err
    assert main(["catalog", "sym", "r=x"]) == EXIT_USAGE
    assert "integer" in capsys.readouterr().err


def test_analyze_structured(space_file, capsys):
    path = space_file("sym", r=2)
    assert main(["--format", "structured", "analyze", path]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["shape"] == [2, 2]
    assert (payload["rc_dim"], payload["loc_dim"], payload["defect"]) == (3, 2, 1)
    assert payload["type"] == "Type 1"
    assert payload["reflexivity_defect"] == 1
    assert payload["witness"].startswith("maponspace 2 3")


def test_analyze_human(space_file, capsys):
    assert main(["analyze", space_file("full", n=2, p=2)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "defect: 0" in lines
    assert "witness: None" in lines


def test_classify_type(space_file, capsys):
    assert main(["classify-type", space_file("H4")]) == EXIT_OK
    assert "type: Type 7" in capsys.readouterr().out


def test_equiv(space_file, capsys):
    assert main(["equiv", space_file("alt", r=3), space_file("U3")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "inequivalent"
    assert main(["equiv", space_file("H3perp"), space_file("U3")]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("equivalent\ncertificate 3 3\n")


def test_equiv_mixed_kinds(space_file, capsys):
    assert main(["equiv", space_file("affine-C"), space_file("V2")]) == EXIT_USAGE
    assert "affine" in capsys.readouterr().err


def test_reflexivity(space_file, capsys):
    assert main(["--format", "structured", "reflexivity", "--closure", space_file("E2")]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["defect"] == 1
    assert payload["closure"].startswith("matspace 2 3 3")


def test_affine_lrk(space_file, capsys):
    assert main(["affine-lrk", space_file("F3-affine")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2"


def test_linear_space_required(space_file, capsys):
    assert main(["analyze", space_file("affine-J")]) == EXIT_USAGE
    assert "expected a linear space" in capsys.readouterr().err


def test_malformed_input(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("matspace 2 2 1\n0x\n00\n", encoding="utf-8")
    assert main(["analyze", str(path)]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("line 2: invalid character")


def test_missing_file(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "absent.txt")]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error:")


def test_verify(tmp_path, capsys):
    output = tmp_path / "report.json"
    assert main(["verify", "n2-hyperplanes", "--output", str(output)]) == EXIT_OK
    assert "suite n2-hyperplanes: PASS" in capsys.readouterr().out
    assert json.loads(output.read_text(encoding="utf-8"))["passed"] is True


def test_verify_exit_codes():
    assert EXIT_FAILED == 1
    assert main(["verify", "n2-hyperplanes", "--shards", "0"]) == EXIT_USAGE
