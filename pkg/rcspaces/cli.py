# -*- coding: utf-8 -*-
"""
Command-line front end.

Subcommands read spaces in the text format of :mod:`rcspaces.utils`. With
``--format structured`` every subcommand prints one JSON object instead of the default
``key: value`` lines. Exit status is 0 on success, 1 when a verification suite fails and 2 on
usage or input errors.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .catalog import PARAMETRIZED, names, named
from .equivalence import (
    MAX_EQUIV_SIZE,
    MAX_PROFILE_DIM,
    are_affine_equivalent,
    are_equivalent,
    classify_type,
    profile,
)
from .harness import SLOW_SUITES, Verification, list_suites
from .matspace import AffineMatSpace, MatSubspace
from .rangecompat import MAX_RC_DIM, analyze, witness_nonlocal
from .rankgeom import MAX_RANK_DIM, lower_rank
from .reflexivity import MAX_REFLEXIVE_COLS, reflexive_closure
from .utils import SpaceFormatError, dump_report, emit_certificate, emit_map, emit_space, read_space

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class _UsageError(Exception):
    pass


def _print(args, payload: dict, human: Optional[List[str]] = None) -> None:
    if args.format == "structured":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif human is not None:
        print("\n".join(human))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _read_linear(path: str) -> MatSubspace:
    space = read_space(path)
    if isinstance(space, AffineMatSpace):
        raise _UsageError(f"{path}: expected a linear space, got an affine space")
    return space


def _analyze(args) -> int:
    S = _read_linear(args.file)
    n, p = S.shape
    payload = {"shape": [n, p], "dim": S.dim, "codim": S.codim}
    if S.dim <= MAX_PROFILE_DIM:
        prof = profile(S)
        payload["rank_counts"] = {str(r): c for r, c in prof.rank_counts().items()}
        payload["col_profile"] = list(prof.col_profile)
        payload["row_profile"] = list(prof.row_profile)
        payload["dual_profile"] = list(prof.dual_profile)
        payload["reduced_dims"] = list(prof.reduced_dims)
    if S.dim <= MAX_RC_DIM:
        result = analyze(S)
        payload.update(rc_dim=result.rc.dim, loc_dim=result.loc.dim, defect=result.defect)
        witness = witness_nonlocal(S) if result.defect else None
        payload["witness"] = emit_map(witness) if witness is not None else None
    else:
        logger.warning("dim %d exceeds %d, range-compatible maps not computed", S.dim, MAX_RC_DIM)
    if S.codim == 2 * n - 3 and n <= MAX_EQUIV_SIZE and p <= MAX_EQUIV_SIZE:
        payload["type"] = classify_type(S).label
    if p <= MAX_REFLEXIVE_COLS:
        payload["reflexivity_defect"] = reflexive_closure(S).dim - S.dim
    _print(args, payload)
    return EXIT_OK


def _classify_type(args) -> int:
    S = _read_linear(args.file)
    report = classify_type(S)
    payload = {"type": report.label, "block_params": report.block_params, "reason": report.reason}
    if report.certificate is not None:
        payload["certificate"] = emit_certificate(report.certificate)
    _print(args, payload)
    return EXIT_OK


def _equiv(args) -> int:
    first = read_space(args.first)
    second = read_space(args.second)
    if isinstance(first, AffineMatSpace) != isinstance(second, AffineMatSpace):
        raise _UsageError("cannot compare a linear space with an affine space")
    if isinstance(first, AffineMatSpace):
        certificate = are_affine_equivalent(first, second)
    else:
        certificate = are_equivalent(first, second)
    if certificate is None:
        _print(args, {"equivalent": False}, ["inequivalent"])
    else:
        text = emit_certificate(certificate)
        _print(args, {"equivalent": True, "certificate": text}, ["equivalent", text])
    return EXIT_OK


def _reflexivity(args) -> int:
    S = _read_linear(args.file)
    closure = reflexive_closure(S)
    payload = {"dim": S.dim, "closure_dim": closure.dim, "defect": closure.dim - S.dim}
    if args.closure:
        payload["closure"] = emit_space(closure)
    _print(args, payload)
    return EXIT_OK


def _affine_lrk(args) -> int:
    space = read_space(args.file)
    if space.dim > MAX_RANK_DIM:
        raise _UsageError(f"lower rank requires dim <= {MAX_RANK_DIM}, got {space.dim}")
    value = lower_rank(space)
    _print(args, {"lower_rank": value}, [str(value)])
    return EXIT_OK


def _parse_params(items: List[str]) -> dict:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise _UsageError(f"catalog parameters take the form key=value, got {item!r}")
        try:
            params[key] = int(value)
        except ValueError as err:
            raise _UsageError(f"parameter {key} must be an integer, got {value!r}") from err
    return params


def _catalog(args) -> int:
    if args.list or args.name is None:
        listing = [
            f"{name}({', '.join(PARAMETRIZED[name])})" if name in PARAMETRIZED else name
            for name in names()
        ]
        _print(args, {"names": listing}, listing)
        return EXIT_OK
    space = named(args.name, **_parse_params(args.params))
    text = emit_space(space)
    _print(args, {"name": args.name, "space": text}, [text])
    return EXIT_OK


def _verify(args) -> int:
    if args.suite == "all":
        suites = [s for s in list_suites() if s not in SLOW_SUITES]
    else:
        suites = [args.suite]
    reports = []
    for suite in suites:
        verification = Verification(
            suite,
            seed=args.seed,
            samples=args.samples,
            shards=args.shards,
            shard=args.shard,
            nproc=args.nproc,
        )
        reports.append(verification.run())
    if args.format == "structured":
        print(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
    else:
        print("\n".join(r.summary() for r in reports))
    if args.output:
        if len(reports) == 1:
            dump_report(reports[0], args.output)
        else:
            with open(args.output, mode="w", encoding="utf-8") as stream:
                json.dump([r.to_dict() for r in reports], stream, indent=2, sort_keys=True)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcspaces",
        description="Range-compatible maps, reflexivity and lower-rank affine spaces over F2.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--format", choices=("human", "structured"), default="human", help="Output format."
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="Log progress (repeat for debug)."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("analyze", help="Invariants, range-compatible maps, type, reflexivity.")
    cmd.add_argument("file")
    cmd.set_defaults(handler=_analyze)

    cmd = sub.add_parser("classify-type", help="Type 1-7 of a space of codimension 2n-3.")
    cmd.add_argument("file")
    cmd.set_defaults(handler=_classify_type)

    cmd = sub.add_parser("equiv", help="Equivalence certificate of two spaces.")
    cmd.add_argument("first")
    cmd.add_argument("second")
    cmd.set_defaults(handler=_equiv)

    cmd = sub.add_parser("reflexivity", help="Reflexive closure and reflexivity defect.")
    cmd.add_argument("file")
    cmd.add_argument("--closure", action="store_true", help="Also print the closure.")
    cmd.set_defaults(handler=_reflexivity)

    cmd = sub.add_parser("affine-lrk", help="Lower rank of an affine space.")
    cmd.add_argument("file")
    cmd.set_defaults(handler=_affine_lrk)

    cmd = sub.add_parser("catalog", help="Print a named space.")
    cmd.add_argument("name", nargs="?")
    cmd.add_argument("params", nargs="*", help="Parameters as key=value.")
    cmd.add_argument("--list", action="store_true", help="List the catalog names.")
    cmd.set_defaults(handler=_catalog)

    cmd = sub.add_parser("verify", help="Run a verification suite.")
    cmd.add_argument("suite", choices=list_suites() + ["all"])
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--samples", type=int, default=None)
    cmd.add_argument("--shards", type=int, default=1)
    cmd.add_argument("--shard", type=int, default=None)
    cmd.add_argument("--nproc", type=int, default=1)
    cmd.add_argument("--output", default=None, help="Write the report (.json or .csv).")
    cmd.set_defaults(handler=_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except SpaceFormatError as err:
        print(f"line {err.lineno}: {err.message}", file=sys.stderr)
    except (KeyError, ValueError, OSError, _UsageError) as err:
        message = err.args[0] if isinstance(err, KeyError) and err.args else err
        print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
