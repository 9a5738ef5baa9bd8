"""Random precondition-satisfying kernel inputs and structure-preserving relabelings.

Each ``Case`` bundles an input, a way to run the kernel on it, a way to
relabel the input, and a way to map the kernel's output through the same
relabeling, so one driver can check totality, membership and equivariance
for every kernel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Any, Callable

from rclab.extraction import (
    BlockFamily,
    OracleChoice,
    VoteTable,
    k32_select,
    kummer_minority_select,
    minority_select,
    octet_select,
    pair_blocks_round,
    pentagon_edge_select,
    triple_vote_select,
)


def fresh_labels(rng: random.Random, k: int) -> list[int]:
    return rng.sample(range(1000), k)


def random_oracle(rng: random.Random, universe, arity: int = 6, *, lazy: bool = False) -> OracleChoice:
    seed = rng.getrandbits(64)

    def fn(s: frozenset):
        ordered = sorted(s)
        return ordered[hash((seed, tuple(ordered))) % len(ordered)]

    return OracleChoice.from_function(universe, arity, fn, materialize=not lazy)


def bijection(rng: random.Random, atoms, target=None) -> dict:
    """Random bijection from ``atoms`` onto ``target`` (fresh labels by default)."""
    atoms = list(atoms)
    image = list(target) if target is not None else fresh_labels(rng, len(atoms))
    rng.shuffle(image)
    return dict(zip(atoms, image))


def _map_set(sigma, s):
    return frozenset(sigma[a] for a in s)


@dataclass
class Case:
    kernel: str
    data: Any
    run: Callable[[Any], Any]
    relabel: Callable[[Any, random.Random], tuple[Any, Callable[[Any], Any]]]
    check: Callable[[Any, Any], bool]


# minority --------------------------------------------------------------


def minority_case(rng: random.Random) -> Case:
    k = rng.randint(2, 8)
    atoms = fresh_labels(rng, k)
    while True:
        counts = {a: rng.randint(0, 6) for a in atoms}
        if len(set(counts.values())) > 1:
            break

    def relabel(votes, rng):
        sigma = bijection(rng, votes)
        return {sigma[a]: c for a, c in votes.items()}, lambda out: _map_set(sigma, out)

    def check(votes, out):
        return bool(out) and out < set(votes)

    return Case("minority", counts, minority_select, relabel, check)


# triple vote -----------------------------------------------------------


def triple_case(rng: random.Random) -> Case:
    while True:
        counts = tuple(rng.randint(0, 12) for _ in range(3))
        if sum(counts) % 3:
            break

    def relabel(c, rng):
        perm = rng.sample(range(3), 3)  # index i moves to perm[i]
        moved = [0, 0, 0]
        for i, v in enumerate(c):
            moved[perm[i]] = v
        return tuple(moved), lambda out: perm[out]

    return Case("triple", counts, triple_vote_select, relabel, lambda c, out: out in (0, 1, 2))


# K_{3,2} ---------------------------------------------------------------


def k32_case(rng: random.Random) -> Case:
    labels = fresh_labels(rng, 5)
    three, two = labels[:3], labels[3:]
    all_edges = [(a, x) for a in three for x in two]
    edges = rng.sample(all_edges, rng.randint(1, 5))
    data = (three, two, edges)

    def relabel(d, rng):
        three, two, edges = d
        # permute each side within itself, then rename everything
        sigma = {**bijection(rng, three, three), **bijection(rng, two, two)}
        rename = bijection(rng, sigma.values())
        full = {a: rename[sigma[a]] for a in sigma}
        new = ([full[a] for a in three], [full[x] for x in two], [(full[a], full[x]) for a, x in edges])
        return new, lambda out: full[out]

    return Case("k32", data, lambda d: k32_select(*d), relabel, lambda d, out: out in d[0] or out in d[1])


# octet -----------------------------------------------------------------


def octet_case(rng: random.Random) -> Case:
    labels = fresh_labels(rng, 8)
    p, q = frozenset(labels[:4]), frozenset(labels[4:])
    f = random_oracle(rng, labels)
    data = (p, q, f)

    def relabel(d, rng):
        p, q, f = d
        sigma = {**bijection(rng, p, p), **bijection(rng, q, q)}
        if rng.random() < 0.5:
            swap = dict(zip(sorted(p), sorted(q)))
            swap.update({v: k for k, v in swap.items()})
            sigma = {a: swap[b] for a, b in sigma.items()}
        rename = bijection(rng, sigma.values())
        full = {a: rename[sigma[a]] for a in sigma}
        return (_map_set(full, p), _map_set(full, q), f.relabel(full)), lambda out: full[out]

    return Case("octet", data, lambda d: octet_select(*d), relabel, lambda d, out: out in d[0] | d[1])


# pentagon --------------------------------------------------------------


def pentagon_case(rng: random.Random) -> Case:
    nodes = fresh_labels(rng, 5)
    arcs = [(nodes[i], nodes[(i + s) % 5]) for i in range(5) for s in (1, 2)]
    rng.shuffle(arcs)

    def relabel(arcs, rng):
        sigma = bijection(rng, {v for a in arcs for v in a})
        return [(sigma[u], sigma[v]) for u, v in arcs], lambda out: frozenset(_map_set(sigma, e) for e in out)

    def check(arcs, out):
        pairs = {frozenset(a) for a in arcs}
        return len(out) == 5 and out <= pairs

    return Case("pentagon", arcs, pentagon_edge_select, relabel, check)


# Kummer minority -------------------------------------------------------


def kummer_case(rng: random.Random) -> Case:
    p = rng.choice([2, 3, 5])
    size = p * rng.randint(1, 3)
    if size == p:
        size *= 2
    C = fresh_labels(rng, size)
    total = comb(size, p)
    cuts = sorted(rng.randint(0, total) for _ in range(size - 1))
    parts = [b - a for a, b in zip([0, *cuts], [*cuts, total])]
    votes = dict(zip(C, parts))
    data = (C, p, votes)

    def relabel(d, rng):
        C, p, votes = d
        sigma = bijection(rng, C)
        return ([sigma[a] for a in C], p, {sigma[a]: c for a, c in votes.items()}), lambda out: _map_set(sigma, out)

    def check(d, out):
        return bool(out) and out < set(d[0])

    return Case("kummer-minority", data, lambda d: kummer_minority_select(*d), relabel, check)


# pair-block rounds -----------------------------------------------------


def random_block_family(rng: random.Random, case: int) -> BlockFamily:
    if case == 1:
        sizes = [rng.choice([1, 1, 3]) for _ in range(3)]
    elif case == 2:
        sizes = [2, 2]
    elif case == 3:
        sizes = [6, 6]
    else:
        sizes = [4]
    atoms = iter(fresh_labels(rng, 2 * sum(sizes)))
    return BlockFamily([[(next(atoms), next(atoms)) for _ in range(s)] for s in sizes])


def pair_blocks_case(rng: random.Random, case: int | None = None) -> Case:
    case = case or rng.choice([1, 2, 4])
    family = random_block_family(rng, case)
    f = random_oracle(rng, sorted(family.atoms()), lazy=True)
    data = (family, f)

    def relabel(d, rng):
        family, f = d
        sigma = bijection(rng, family.atoms())
        new = (family.relabel(sigma), f.relabel(sigma))

        def image(out):
            sel = {_map_set(sigma, k): sigma[v] for k, v in out.selections.items()}
            red = None if out.reduced is None else out.reduced.relabel(sigma)
            return (out.case, sel, red)

        return new, image

    def check(d, out):
        family = d[0]
        pairs = {pair for block in family.blocks for pair in block}
        ok = all(k in pairs and v in k for k, v in out.selections.items())
        return ok and (out.selections or out.reduced is not None)

    def run(d):
        return pair_blocks_round(*d)

    return Case(f"pair-blocks-{case}", data, run, relabel, check)


def normalize_output(out):
    """Comparable form of a kernel output (round outcomes become tuples)."""
    if hasattr(out, "selections"):
        return (out.case, dict(out.selections), out.reduced)
    return out


GENERATORS = {
    "minority": minority_case,
    "triple": triple_case,
    "k32": k32_case,
    "octet": octet_case,
    "pentagon": pentagon_case,
    "kummer-minority": kummer_case,
    "pair-blocks": pair_blocks_case,
}


def equivariance_failures(case: Case, rng: random.Random, relabelings: int) -> list[str]:
    """Run one case plus ``relabelings`` relabeled copies; return failure descriptions."""
    failures = []
    out = case.run(case.data)
    if not case.check(case.data, out):
        failures.append(f"{case.kernel}: membership failure on {case.data!r}")
    for _ in range(relabelings):
        data, image = case.relabel(case.data, rng)
        got = normalize_output(case.run(data))
        want = image(out)
        if got != want:
            failures.append(f"{case.kernel}: equivariance failure, got {got!r}, expected {want!r}")
    return failures
