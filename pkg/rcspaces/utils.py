# -*- coding: utf-8 -*-
"""
Text formats for matrix spaces, maps and certificates, and report dumping.

A linear space is written as a header ``matspace <n> <p> <d>`` followed by ``d`` blocks of
``n`` lines of ``p`` characters ``0``/``1``, blocks separated by blank lines. An affine space
uses the header ``affmatspace <n> <p> <d>`` and puts its offset block before the ``d``
direction blocks. Lines starting with ``#`` are comments. A map on a space is written as
``maponspace <n> <d>`` followed by the ``d`` images of the basis, one line of ``n``
characters each.
"""

from pathlib import Path
from typing import List, Sequence, Tuple, Union

from .gf2core import BitMatrix, BitVector
from .matspace import AffineMatSpace, MatSubspace, affine_from_words

Space = Union[MatSubspace, AffineMatSpace]


class SpaceFormatError(ValueError):
    """Malformed space, map or certificate text; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.message = message
        self.lineno = lineno


def emit_matrix(M: BitMatrix) -> str:
    return str(M)


def emit_space(X: Space) -> str:
    """
    Text form of a linear or affine space; linear spaces list their stored basis.

    Example:
        >>> from rcspaces.catalog import named
        >>> print(emit_space(named("alt", r=2)))
        matspace 2 2 1
        01
        10
    """
    if isinstance(X, AffineMatSpace):
        n, p = X.shape
        blocks = [X.offset] + list(X.direction.basis)
        header = f"affmatspace {n} {p} {X.dim}"
    else:
        n, p = X.shape
        blocks = list(X.basis)
        header = f"matspace {n} {p} {X.dim}"
    if not blocks:
        return header
    return header + "\n" + "\n\n".join(emit_matrix(M) for M in blocks)


def emit_map(F) -> str:
    """Text form of a :class:`~rcspaces.rangecompat.MapOnSpace`."""
    n = F.domain.ambient_rows
    lines = [f"maponspace {n} {len(F.images)}"]
    lines += [str(BitVector(n, image)) for image in F.images]
    return "\n".join(lines)


def emit_certificate(certificate: Tuple[BitMatrix, BitMatrix]) -> str:
    P, Q = certificate
    return f"certificate {P.n_rows} {Q.n_rows}\n{emit_matrix(P)}\n\n{emit_matrix(Q)}"


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        lines.append((lineno, line))
    return lines


def _header(lines: List[Tuple[int, str]], kinds: Sequence[str], arity: int):
    for index, (lineno, line) in enumerate(lines):
        if not line:
            continue
        tokens = line.split()
        if tokens[0] not in kinds:
            raise SpaceFormatError(f"expected one of {list(kinds)}, got {tokens[0]!r}", lineno)
        if len(tokens) != arity + 1:
            raise SpaceFormatError(f"{tokens[0]} header takes {arity} integers", lineno)
        try:
            values = [int(t) for t in tokens[1:]]
        except ValueError as err:
            raise SpaceFormatError(f"non-integer in header: {line!r}", lineno) from err
        if any(v < 0 for v in values):
            raise SpaceFormatError("header values must be non-negative", lineno)
        return tokens[0], values, lineno, lines[index + 1 :]
    raise SpaceFormatError("missing header", len(lines) or 1)


def _blocks(body: List[Tuple[int, str]]) -> List[List[Tuple[int, str]]]:
    blocks: List[List[Tuple[int, str]]] = []
    current: List[Tuple[int, str]] = []
    for lineno, line in body:
        if line:
            current.append((lineno, line))
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    return blocks


def _parse_bits(line: str, width: int, lineno: int) -> int:
    if len(line) != width:
        raise SpaceFormatError(f"expected {width} characters, got {len(line)}", lineno)
    word = 0
    for j, char in enumerate(line):
        if char not in "01":
            raise SpaceFormatError(f"invalid character {char!r}, expected 0 or 1", lineno)
        if char == "1":
            word |= 1 << j
    return word


def _parse_matrices(blocks, count: int, n: int, p: int, header_line: int) -> List[int]:
    if n * p == 0:
        if count or blocks:
            raise SpaceFormatError(f"a {n}x{p} space cannot list matrices", header_line)
        return []
    if len(blocks) != count:
        last = blocks[-1][-1][0] if blocks else header_line
        raise SpaceFormatError(f"expected {count} matrix blocks, found {len(blocks)}", last)
    words = []
    for block in blocks:
        if len(block) != n:
            raise SpaceFormatError(f"expected {n} rows, found {len(block)}", block[0][0])
        word = 0
        for i, (lineno, line) in enumerate(block):
            word |= _parse_bits(line, p, lineno) << (i * p)
        words.append(word)
    return words


def parse_space(text: str) -> Space:
    """
    Parses a linear or affine space.

    :raises SpaceFormatError: on a malformed header, a wrong block count or shape, or a
        character other than ``0``/``1``.
    """
    lines = _content_lines(text)
    kind, (n, p, d), header_line, body = _header(lines, ("matspace", "affmatspace"), 3)
    affine = kind == "affmatspace"
    if affine and n * p == 0:
        raise SpaceFormatError("an affine space needs a non-empty shape", header_line)
    words = _parse_matrices(_blocks(body), d + int(affine), n, p, header_line)
    if affine:
        return affine_from_words(n, p, words[0], words[1:])
    return MatSubspace.from_words(n, p, words)


def parse_map(text: str, domain: MatSubspace):
    """
    Parses a map on ``domain``; images refer to the stored basis of ``domain``.

    :raises SpaceFormatError: on a malformed text or a size that does not match ``domain``.
    """
    from .rangecompat import MapOnSpace

    lines = _content_lines(text)
    _, (n, d), header_line, body = _header(lines, ("maponspace",), 2)
    if (n, d) != (domain.ambient_rows, domain.dim):
        raise SpaceFormatError(
            f"map of size ({n}, {d}) does not fit a domain with {domain.ambient_rows} rows "
            f"and dimension {domain.dim}",
            header_line,
        )
    rows = [(lineno, line) for lineno, line in body if line]
    if len(rows) != d:
        raise SpaceFormatError(f"expected {d} image lines, found {len(rows)}", header_line)
    return MapOnSpace(domain, tuple(_parse_bits(line, n, lineno) for lineno, line in rows))


def read_space(path: Union[str, Path]) -> Space:
    with open(path, mode="r", encoding="utf-8") as stream:
        return parse_space(stream.read())


def write_space(path: Union[str, Path], X: Space) -> None:
    with open(path, mode="w", encoding="utf-8") as stream:
        stream.write(emit_space(X) + "\n")


def dump_report(report, path: Union[str, Path]) -> None:
    """
    Writes a suite report: JSON for a ``.json`` path, otherwise the check table as CSV.
    """
    path = Path(path)
    if path.suffix == ".json":
        with open(path, mode="w", encoding="utf-8") as stream:
            stream.write(report.to_json() + "\n")
    else:
        report.checks.to_csv(path, index=False)
