# -*- coding: utf-8 -*-
"""
Tests for the named spaces and Type representatives.
"""

from pathlib import Path

import pytest

from rcspaces.catalog import (
    PATTERNS,
    generators,
    named,
    names,
    pattern_generators,
    type_space,
    witness_map,
    witness_vector,
)
from rcspaces.gf2core import identity
from rcspaces.matspace import AffineMatSpace, MatSubspace
from rcspaces.rangecompat import is_local, is_range_compatible
from rcspaces.utils import parse_space

GOLDEN = Path(__file__).parent / "data" / "catalog_golden.txt"


def _golden_sections():
    sections = {}
    name = None
    for line in GOLDEN.read_text(encoding="utf-8").splitlines():
        if line.startswith("== "):
            name = line[3:].strip()
            sections[name] = []
        elif name is not None:
            sections[name].append(line)
    return {key: "\n".join(lines).strip() for key, lines in sections.items()}


GOLDEN_SECTIONS = _golden_sections()


def test_names():
    listing = names()
    assert "V2" in listing
    assert "sym" in listing
    assert set(PATTERNS) <= set(listing)


def test_v2():
    V2 = named("V2")
    assert (V2.shape, V2.dim, V2.codim) == ((3, 2), 3, 3)
    assert str(generators("V2")[1]) == "01\n10\n00"


def test_golden_covers_every_fixed_entry():
    assert set(GOLDEN_SECTIONS) == set(PATTERNS)
    assert set(names()) - set(PATTERNS) == {"sym", "alt", "full", "zero"}


@pytest.mark.parametrize("name", sorted(PATTERNS))
def test_generators_match_golden(name):
    """Every generator, and every affine offset, matches its transcription cell by cell."""
    text = GOLDEN_SECTIONS[name]
    header, _, body = text.partition("\n")
    blocks = body.split("\n\n")
    offset, gens = pattern_generators(PATTERNS[name])
    affine = header.startswith("affmatspace")
    assert affine == (not offset.is_zero())
    expected = ([str(offset)] if affine else []) + [str(g) for g in generators(name)]
    assert blocks == expected
    assert [str(g) for g in gens] == blocks[int(affine):]
    assert header.split()[1:] == [str(offset.n_rows), str(offset.n_cols), str(len(gens))]
    assert parse_space(text) == named(name)


def test_parametrized_spaces():
    assert named("sym", r=3).dim == 6
    assert named("alt", r=3).dim == 3
    assert named("full", n=2, p=3) == MatSubspace.full(2, 3)
    assert named("zero", n=2, p=3).dim == 0
    assert named("alt", r=1).dim == 0


def test_named_errors():
    with pytest.raises(KeyError, match="unknown catalog space"):
        named("W9")
    with pytest.raises(ValueError, match="expects parameters"):
        named("sym")
    with pytest.raises(ValueError, match="non-negative"):
        named("sym", r=-1)
    with pytest.raises(ValueError, match="takes no parameters"):
        named("V2", r=1)
    with pytest.raises(KeyError):
        generators("sym")


def test_affine_entries():
    C = named("affine-C")
    assert isinstance(C, AffineMatSpace)
    assert C.dim == 1 and C.codim == 3
    assert not C.contains_zero
    assert C.contains(identity(2))


def test_pattern_terms():
    offset, gens = pattern_generators((("a+1", "b"), ("0", "a+b")))
    assert str(offset) == "10\n00"
    assert [str(g) for g in gens] == ["10\n01", "01\n01"]
    with pytest.raises(ValueError, match="invalid pattern term"):
        pattern_generators((("2a",),))


@pytest.mark.parametrize("type_id", [1, 2, 3, 4, 5, 6])
def test_type_spaces_in_mat3(type_id):
    params = (1, 1) if type_id == 1 else (0, 1) if type_id == 3 else (0, 0)
    S = type_space(type_id, *params)
    assert S.shape == (3, 3)
    assert S.codim == 3


def test_type_space_errors():
    assert type_space(7).shape == (3, 4)
    with pytest.raises(ValueError, match="unknown type"):
        type_space(8)
    with pytest.raises(ValueError, match="non-negative"):
        type_space(1, -1, 0)


def test_witness_vector():
    assert witness_vector(1, identity(2)).to_list() == [1, 1]
    assert witness_vector(2, identity(3)).to_list() == [1, 1, 1]
    with pytest.raises(ValueError, match="unknown type"):
        witness_vector(0, identity(3))


@pytest.mark.parametrize("type_id", range(1, 8))
def test_listed_witnesses(type_id):
    """Each listed map is range-compatible and not local on its Type representative."""
    S = type_space(type_id)
    F = witness_map(type_id, S)
    assert is_range_compatible(S, F)
    assert is_local(S, F) is None
