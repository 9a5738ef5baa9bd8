"""One round of the four-case reducer for families of pair-blocks.

A family is an ordered list of blocks, each a finite set of disjoint 2-sets,
with a choice oracle on 6-subsets of the atoms.  Every block of a round must
share one size signature:

* case 1, all sizes odd: blocks are consumed in triples;
* case 2, all sizes 2: consumed in pairs;
* case 3, sizes >= 6 and 2 mod 4: consumed in pairs, using the octet kernel;
* case 4, sizes divisible by 4: each block on its own.

The round returns selections ``2-set -> atom`` and, where no selection was
possible, a reduced family to be fed to a later round.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Callable, Hashable, Optional

from rclab.errors import InvalidArgument, KernelInvariantError, PreconditionError
from rclab.extraction.kernels import Choice, _ask, argmax_set, octet_select
from rclab.extraction.oracle import BlockFamily, OracleChoice

__all__ = ["RoundOutcome", "block_case", "pair_blocks_round"]

Atom = Hashable
Pair = frozenset
OctetKernel = Callable[[frozenset, frozenset, Choice], Atom]


@dataclass
class RoundOutcome:
    case: int
    selections: dict[Pair, Atom] = field(default_factory=dict)
    reduced: Optional[BlockFamily] = None


def block_case(size: int) -> int:
    if size < 1:
        raise InvalidArgument("blocks are nonempty")
    if size % 2:
        return 1
    if size == 2:
        return 2
    return 3 if size % 4 == 2 else 4


def _more_often(pair: Pair, counts: Counter) -> Optional[Atom]:
    # defined only when the pair's total is odd, so the counts differ
    x, y = pair
    if (counts[x] + counts[y]) % 2 == 0:
        return None
    return x if counts[x] > counts[y] else y


def _case1(blocks, f, out: RoundOutcome) -> None:
    for k in range(0, len(blocks), 3):
        triple = blocks[k : k + 3]
        counts: Counter = Counter()
        for a0, a1, a2 in product(*triple):
            counts[_ask(f, a0 | a1 | a2)] += 1
        picked = 0
        for block in triple:
            for pair in block:
                atom = _more_often(pair, counts)
                if atom is not None:
                    out.selections[pair] = atom
                    picked += 1
        if not picked:
            raise KernelInvariantError("odd block sizes produced no odd count")


def _case2(blocks, f, out: RoundOutcome, reduced: list) -> None:
    for k in range(0, len(blocks), 2):
        first, second = blocks[k], blocks[k + 1]
        base = frozenset().union(*second)
        values = [_ask(f, base | a) for a in first]
        odd = False
        for pair in first | second:
            hits = [v for v in values if v in pair]
            if len(hits) % 2:
                out.selections[pair] = hits[0]
                odd = True
        if not odd:
            (heavy,) = [pair for pair in first | second if sum(v in pair for v in values) == 2]
            reduced.append([heavy])


def _case3(blocks, f, h: OctetKernel, out: RoundOutcome) -> None:
    for k in range(0, len(blocks), 2):
        first, second = blocks[k], blocks[k + 1]
        counts: Counter = Counter()
        for (a0, a1), (b0, b1) in product(combinations(first, 2), combinations(second, 2)):
            counts[h(a0 | a1, b0 | b1, f)] += 1
        picked = 0
        for pair in first | second:
            atom = _more_often(pair, counts)
            if atom is not None:
                out.selections[pair] = atom
                picked += 1
        if not picked:
            raise KernelInvariantError("odd number of pair-of-pairs produced no odd count")


def _case4(blocks, f, out: RoundOutcome, reduced: list) -> None:
    for block in blocks:
        current = block
        for _ in range(len(block)):
            if len(current) % 4:
                reduced.append(list(current))
                break
            no: Counter = Counter()
            for trio in combinations(current, 3):
                no[_ask(f, trio[0] | trio[1] | trio[2])] += 1
            unequal = False
            for pair in current:
                x, y = pair
                if no[x] != no[y]:
                    out.selections[pair] = x if no[x] < no[y] else y
                    unequal = True
            if unequal:
                break
            sharp = {pair: sum(no[a] for a in pair) for pair in current}
            nxt = argmax_set(sharp)
            if len(nxt) == len(current):
                raise KernelInvariantError("most-chosen 2-sets exhaust the block")
            current = nxt
        else:
            raise KernelInvariantError("case 4 loop exceeded its iteration bound")


def pair_blocks_round(family: BlockFamily, f: Choice, h: OctetKernel = octet_select) -> RoundOutcome:
    """Run one reduction round over ``family`` with 6-set oracle ``f``.

    ``h`` is the octet kernel used by case 3; it is called as ``h(p, q, f)``.
    """
    if isinstance(f, OracleChoice) and f.arity != 6:
        raise InvalidArgument(f"oracle arity must be 6, got {f.arity}")
    blocks = list(family.blocks)
    if not blocks:
        raise PreconditionError("empty family")
    cases = {block_case(len(b)) for b in blocks}
    if len(cases) != 1:
        raise PreconditionError(f"mixed case signatures {sorted(cases)} in one round")
    (case,) = cases
    group = {1: 3, 2: 2, 3: 2, 4: 1}[case]
    if len(blocks) % group:
        raise PreconditionError(f"case {case} consumes blocks in groups of {group}, got {len(blocks)} blocks")
    out = RoundOutcome(case)
    reduced: list = []
    if case == 1:
        _case1(blocks, f, out)
    elif case == 2:
        _case2(blocks, f, out, reduced)
    elif case == 3:
        if any(comb(len(b), 2) % 2 == 0 for b in blocks):
            raise KernelInvariantError("case 3 block with an even number of 2-subsets")
        _case3(blocks, f, h, out)
    else:
        _case4(blocks, f, out, reduced)
    if reduced:
        out.reduced = BlockFamily(reduced)
    return out
