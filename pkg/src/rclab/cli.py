"""Command-line front end.

Verbs: ``implies M N``, ``table``, ``kummer N K P``, ``extract KERNEL``,
``fm-census`` and ``fm-select``.  Every verb supports ``--mode text`` (the
default) and ``--mode structured``, which prints one JSON document with a
top-level ``"schema"`` field.  Exit status is 0 on success, 2 for bad
arguments and 3 when a kernel invariant is violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from rclab import arith, fixtures
from rclab.errors import InvalidArgument, KernelInvariantError, RclabError
from rclab.extraction import kernels
from rclab.extraction.blocks import pair_blocks_round
from rclab.extraction.oracle import BlockFamily
from rclab.fm.model import Universe
from rclab.fm.orbit import OrbitSpace, orbit_select_stages
from rclab.fm.supports import canonical_family, minimal_closed_support, symmetric_choice_census
from rclab.implication import ImplicationVerdict, decide_implication, implication_table

SCHEMA = "rclab/1"
EXIT_OK, EXIT_ARGS, EXIT_KERNEL = 0, 2, 3
KERNELS = ("minority", "triple", "kummer-minority", "k32", "octet", "pentagon", "pair-blocks")


class UsageError(Exception):
    """Bad command-line arguments; reported with exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit; let main() decide
        raise UsageError(message)


def _fmt_set(values: Any) -> str:
    return "{" + ", ".join(map(str, values)) + "}"


def _json(value: Any) -> Any:
    """JSON-ready copy with sets turned into sorted lists."""
    if isinstance(value, (frozenset, set)):
        return sorted((_json(v) for v in value), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [_json(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json(v) for k, v in value.items()}
    if isinstance(value, arith.PrimeSet):
        return list(value)
    return value


def _document(verb: str, inputs: dict, result: dict) -> str:
    doc = {"schema": SCHEMA, "verb": verb, "input": inputs, **result}
    return json.dumps(_json(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _verdict_fields(v: ImplicationVerdict) -> dict:
    return {
        "holds": v.holds,
        "witness": None if v.witness is None else list(v.witness),
        "checked_supports": v.checked_supports,
    }


def render_table(matrix: Sequence[Sequence[ImplicationVerdict]], mode: str = "text") -> str:
    """Grid of verdicts: rows are m, columns n, cells ``✓`` or ``✗{witness}``."""
    if mode == "structured":
        rows = [{"m": row[0].m if row else None, "cells": [{"n": v.n, **_verdict_fields(v)} for v in row]} for row in matrix]
        return _document("table", {}, {"rows": rows})
    if not matrix or not matrix[0]:
        return ""
    cols = [v.n for v in matrix[0]]
    grid = [["m\\n", *map(str, cols)]]
    for row in matrix:
        grid.append([str(row[0].m), *("✓" if v.holds else "✗" + _fmt_set(v.witness) for v in row)])
    widths = [max(len(r[i]) for r in grid) for i in range(len(grid[0]))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in grid)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("text", "structured"), default="text")
    parser = _Parser(prog="rclab", description="Exact tools for implications between finite choice principles.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("implies", parents=[common], help="decide whether RC_m implies WOC_n^-")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("table", parents=[common], help="verdict grid for 2 <= m, n <= max")
    p.add_argument("--max", type=int, default=12, dest="max")
    p.add_argument("--max-n", type=int, default=None, help="column bound (defaults to --max)")

    p = sub.add_parser("kummer", parents=[common], help="p-adic valuation of C(n, k)")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("p", type=int)

    p = sub.add_parser("extract", parents=[common], help="run a choice-extraction kernel on a fixture")
    p.add_argument("kernel", choices=KERNELS)
    p.add_argument("--fixture", required=True)

    p = sub.add_parser("fm-census", parents=[common], help="symmetric-choice census of a blocked family")
    p.add_argument("--fixture", help="universe fixture; members default to the canonical family")
    p.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    p.add_argument("--blocks", type=int, default=6, help="blocks per prime")
    p.add_argument("--coefficients", type=int, nargs="+", default=None)
    p.add_argument("--max", type=int, default=2, dest="max", help="largest support size in blocks")

    p = sub.add_parser("fm-select", parents=[common], help="select a point of a subset of a free orbit")
    p.add_argument("--fixture", help="orbit fixture")
    p.add_argument("--primes", type=int, nargs="+", default=None)
    p.add_argument("--multiplicities", type=int, nargs="+", default=None)
    p.add_argument("--point", action="append", default=None, help="comma-separated coordinates; repeatable")
    return parser


def _cmd_implies(args) -> str:
    v = decide_implication(args.m, args.n)
    if args.mode == "structured":
        return _document("implies", {"m": args.m, "n": args.n}, _verdict_fields(v))
    lines = [f"RC_{v.m} => WOC_{v.n}^-: {'holds' if v.holds else 'fails'}"]
    if v.witness is not None:
        lines.append(f"witness: {_fmt_set(v.witness)}")
    lines.append(f"supports checked: {v.checked_supports}")
    return "\n".join(lines) + "\n"


def _cmd_table(args) -> str:
    n_max = args.max if args.max_n is None else args.max_n
    matrix = implication_table(args.max, n_max)
    if args.mode == "structured":
        rows = [{"m": row[0].m, "cells": [{"n": v.n, **_verdict_fields(v)} for v in row]} for row in matrix if row]
        return _document("table", {"max": args.max, "max_n": n_max}, {"rows": rows})
    return render_table(matrix)


def _cmd_kummer(args) -> str:
    value = arith.kummer_valuation(args.n, args.k, args.p)
    if args.mode == "structured":
        return _document("kummer", {"n": args.n, "k": args.k, "p": args.p}, {"valuation": value})
    return f"v_{args.p}(C({args.n},{args.k})) = {value}\n"


def _run_kernel(kernel: str, fx: fixtures.Fixture) -> tuple[Any, dict]:
    """Selection and extra result fields for one kernel."""
    if kernel == "minority":
        return kernels.minority_select(fixtures.read_votes(fx)), {}
    if kernel == "triple":
        return kernels.triple_vote_select(fixtures.read_votes(fx)), {}
    if kernel == "kummer-minority":
        votes = fixtures.read_votes(fx)
        return kernels.kummer_minority_select(list(votes.counts), _header(fx, "p"), votes), {}
    if kernel == "k32":
        three, two, edges = fixtures.read_k32(fx)
        return kernels.k32_select(three, two, edges), {}
    if kernel == "pentagon":
        return kernels.pentagon_edge_select(fixtures.read_tournament(fx)), {}
    oracle = fixtures.read_oracle(fx)
    if kernel == "octet":
        choice, stages = kernels.octet_select(_header(fx, "p"), _header(fx, "q"), oracle, return_stages=True)
        return choice, {"stages": stages}
    outcome = pair_blocks_round(BlockFamily(_header(fx, "blocks")), oracle)
    extra = {
        "case": outcome.case,
        "reduced": None if outcome.reduced is None else [[sorted(p) for p in b] for b in outcome.reduced.blocks],
    }
    return [[sorted(k), v] for k, v in sorted(outcome.selections.items(), key=lambda kv: sorted(kv[0]))], extra


def _header(fx: fixtures.Fixture, key: str) -> Any:
    if key not in fx.header:
        raise InvalidArgument(f"fixture header lacks {key!r}")
    return fx.header[key]


def _cmd_extract(args) -> str:
    fx = fixtures.load(args.fixture)
    selection, extra = _run_kernel(args.kernel, fx)
    if args.mode == "structured":
        inputs = {"kernel": args.kernel, "fixture": {"kind": fx.kind, **fx.header, "records": len(fx.records)}}
        return _document("extract", inputs, {"selection": selection, **extra})
    lines = [f"{args.kernel}: {_fmt_set(sorted(selection)) if isinstance(selection, frozenset) else selection}"]
    lines += [f"{k}: {v}" for k, v in sorted(extra.items())]
    return "\n".join(lines) + "\n"


def _cmd_fm_census(args) -> str:
    if args.fixture:
        universe, members = fixtures.read_universe(fixtures.load(args.fixture))
        coefficients = None
        if not members:
            coefficients = fixtures.load(args.fixture).header.get("coefficients")
            if coefficients is None:
                raise InvalidArgument("fixture has neither members nor coefficients")
            members = canonical_family(universe, coefficients)
    else:
        universe = Universe(tuple((p, args.blocks) for p in args.primes))
        coefficients = args.coefficients or [1] * len(args.primes)
        members = canonical_family(universe, coefficients)
    report = symmetric_choice_census(members, universe, args.max)
    supports = [minimal_closed_support(x, universe) for x in members]
    if args.mode == "structured":
        inputs = {
            "block_spec": [list(b) for b in universe.block_spec],
            "coefficients": coefficients,
            "max": args.max,
            "members": len(members),
        }
        result = {
            "rows": [{"support": [list(b) for b in E.sorted_blocks()], "choosable": list(ms)} for E, ms in report.rows],
            "max_choosable": report.max_choosable,
            "empty_support_choosable": report.empty_support_choosable,
            "member_supports": [[list(b) for b in E.sorted_blocks()] for E in supports],
        }
        return _document("fm-census", inputs, result)
    lines = [f"members: {len(members)}"]
    lines += [f"  member {i}: size {len(x)}, least support {E!r}" for i, (x, E) in enumerate(zip(members, supports))]
    lines.append(f"closed supports of <= {args.max} blocks: {len(report.rows)}")
    lines.append(f"max choosable: {report.max_choosable}")
    lines.append(f"choosable with empty support: {report.empty_support_choosable}")
    return "\n".join(lines) + "\n"


def _parse_point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InvalidArgument(f"bad point {text!r}") from None


def _cmd_fm_select(args) -> str:
    if args.fixture:
        space, points = fixtures.read_orbit(fixtures.load(args.fixture))
    else:
        if not (args.primes and args.multiplicities and args.point):
            raise InvalidArgument("give --fixture or all of --primes, --multiplicities and --point")
        space = OrbitSpace(tuple(args.primes), tuple(args.multiplicities))
        points = [_parse_point(p) for p in args.point]
    stages = orbit_select_stages(points, space)
    if len(stages[-1]) != 1:
        raise KernelInvariantError(f"refinement ended with {len(stages[-1])} points, not one")
    (choice,) = stages[-1]
    if args.mode == "structured":
        inputs = {"primes": list(space.primes), "multiplicities": list(space.multiplicities), "points": sorted(points)}
        return _document("fm-select", inputs, {"selection": list(choice), "stage_sizes": [len(s) for s in stages]})
    return f"selection: {choice}\nstage sizes: {[len(s) for s in stages]}\n"


COMMANDS = {
    "implies": _cmd_implies,
    "table": _cmd_table,
    "kummer": _cmd_kummer,
    "extract": _cmd_extract,
    "fm-census": _cmd_fm_census,
    "fm-select": _cmd_fm_select,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"rclab: {exc}", file=sys.stderr)
        return EXIT_ARGS
    try:
        out = COMMANDS[args.verb](args)
    except KernelInvariantError as exc:
        print(f"rclab: kernel invariant violated: {exc}", file=sys.stderr)
        return EXIT_KERNEL
    except (RclabError, ValueError, OSError, KeyError, TypeError) as exc:
        print(f"rclab: {exc}", file=sys.stderr)
        return EXIT_ARGS
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
