"""Line-delimited JSON fixtures for kernel and workbench inputs.

A fixture is a header line followed by one record per line::

    {"arity":6,"kind":"oracle","schema":"rclab-fixture/1","universe":[0,1,2,3,4,5,6,7]}
    {"choice":2,"subset":[0,1,2,3,4,5]}
    ...

Every line is a JSON object with sorted keys and no whitespace, so a fixture
written by :func:`dumps` reads back and re-serializes to identical bytes.

Kinds and their fields (header / record):

``oracle``      ``universe``, ``arity``, optional ``p``, ``q`` (octet) or
                ``blocks`` (pair blocks) / ``subset``, ``choice``
``votes``       optional ``p`` (Kummer minority) / ``key``, ``count``; a key is
                an atom id or a 2-element list for a 2-set
``tournament``  none / ``arc`` as ``[tail, head]``
``k32``         ``three``, ``two`` / ``edge`` as ``[three-side, two-side]``
``universe``    ``block_spec`` as ``[[prime, count], ...]``, optional
                ``coefficients`` / ``member`` as a list of ``[kind, block, pos]``
``orbit``       ``primes``, ``multiplicities`` / ``point``

Extraction atoms are integer ids; workbench atoms are ``[kind, block, pos]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional

from rclab.errors import InvalidArgument
from rclab.extraction.oracle import OracleChoice, VoteTable
from rclab.fm.model import HFSet, Universe, decode, encode
from rclab.fm.orbit import OrbitSpace

SCHEMA = "rclab-fixture/1"
KINDS = ("oracle", "votes", "tournament", "k32", "universe", "orbit")


@dataclass
class Fixture:
    kind: str
    header: dict[str, Any] = field(default_factory=dict)
    records: list[dict[str, Any]] = field(default_factory=list)


def _line(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def dumps(fx: Fixture) -> str:
    if fx.kind not in KINDS:
        raise InvalidArgument(f"unknown fixture kind {fx.kind!r}")
    head = {"schema": SCHEMA, "kind": fx.kind, **fx.header}
    return "".join(_line(obj) + "\n" for obj in [head, *fx.records])


def loads(text: str) -> Fixture:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InvalidArgument("empty fixture")
    try:
        objs = [json.loads(ln) for ln in lines]
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"malformed fixture line: {exc}") from None
    head = dict(objs[0])
    if head.pop("schema", None) != SCHEMA:
        raise InvalidArgument(f"fixture header must declare schema {SCHEMA!r}")
    kind = head.pop("kind", None)
    if kind not in KINDS:
        raise InvalidArgument(f"unknown fixture kind {kind!r}")
    return Fixture(kind, head, objs[1:])


def load(path: str | Path) -> Fixture:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(fx: Fixture, path: str | Path) -> None:
    Path(path).write_text(dumps(fx), encoding="utf-8")


def _expect(fx: Fixture, kind: str) -> None:
    if fx.kind != kind:
        raise InvalidArgument(f"expected a {kind!r} fixture, got {fx.kind!r}")


def _sorted_atoms(atoms: Iterable) -> list:
    return sorted(atoms, key=lambda a: json.dumps(a))


def oracle_fixture(oracle: OracleChoice, **extra: Any) -> Fixture:
    records = [{"subset": _sorted_atoms(s), "choice": v} for s, v in oracle.items()]
    return Fixture("oracle", {"universe": list(oracle.universe), "arity": oracle.arity, **extra}, records)


def read_oracle(fx: Fixture) -> OracleChoice:
    _expect(fx, "oracle")
    try:
        table = {frozenset(r["subset"]): r["choice"] for r in fx.records}
        return OracleChoice(fx.header["universe"], fx.header["arity"], table)
    except (KeyError, TypeError) as exc:
        raise InvalidArgument(f"bad oracle fixture: {exc}") from None


def _key_out(key: Any) -> Any:
    return _sorted_atoms(key) if isinstance(key, frozenset) else key


def _key_in(key: Any) -> Any:
    return frozenset(key) if isinstance(key, list) else key


def votes_fixture(votes: VoteTable, **extra: Any) -> Fixture:
    records = [{"key": _key_out(k), "count": c} for k, c in votes.counts.items()]
    records.sort(key=lambda r: json.dumps(r["key"]))
    return Fixture("votes", dict(extra), records)


def read_votes(fx: Fixture) -> VoteTable:
    _expect(fx, "votes")
    try:
        return VoteTable({_key_in(r["key"]): r["count"] for r in fx.records})
    except (KeyError, TypeError) as exc:
        raise InvalidArgument(f"bad votes fixture: {exc}") from None


def tournament_fixture(arcs: Iterable[tuple[Any, Any]]) -> Fixture:
    return Fixture("tournament", {}, [{"arc": list(a)} for a in sorted(tuple(a) for a in arcs)])


def read_tournament(fx: Fixture) -> list[tuple[Any, Any]]:
    _expect(fx, "tournament")
    return [tuple(r["arc"]) for r in fx.records]


def k32_fixture(three: Iterable, two: Iterable, edges: Iterable) -> Fixture:
    three, two = list(three), list(two)
    side = set(three)
    rows = [sorted(e, key=lambda v: v not in side) for e in edges]
    return Fixture("k32", {"three": three, "two": two}, [{"edge": e} for e in sorted(rows, key=json.dumps)])


def read_k32(fx: Fixture) -> tuple[list, list, list]:
    _expect(fx, "k32")
    return fx.header["three"], fx.header["two"], [tuple(r["edge"]) for r in fx.records]


def universe_fixture(universe: Universe, members: Iterable[HFSet] = (), coefficients: Optional[Iterable[int]] = None) -> Fixture:
    header: dict[str, Any] = {"block_spec": [list(b) for b in universe.block_spec]}
    if coefficients is not None:
        header["coefficients"] = list(coefficients)
    return Fixture("universe", header, [{"member": encode(m)} for m in members])


def read_universe(fx: Fixture) -> tuple[Universe, list[HFSet]]:
    _expect(fx, "universe")
    universe = Universe(tuple(tuple(b) for b in fx.header["block_spec"]))
    members = []
    for r in fx.records:
        m = decode(r["member"])
        if not isinstance(m, HFSet):
            raise InvalidArgument("family members must be sets")
        members.append(m)
    return universe, members


def orbit_fixture(space: OrbitSpace, points: Iterable) -> Fixture:
    header = {"primes": list(space.primes), "multiplicities": list(space.multiplicities)}
    return Fixture("orbit", header, [{"point": list(p)} for p in sorted(tuple(p) for p in points)])


def read_orbit(fx: Fixture) -> tuple[OrbitSpace, list[tuple[int, ...]]]:
    _expect(fx, "orbit")
    space = OrbitSpace(tuple(fx.header["primes"]), tuple(fx.header["multiplicities"]))
    return space, [tuple(r["point"]) for r in fx.records]
