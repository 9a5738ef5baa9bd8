"""Closed supports, their well-ordering, and the finite shadow of the symmetric-choice obstruction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence

from rclab.errors import InvalidArgument
from rclab.fm.model import HF, Atom, BlockId, GroupElement, HFSet, Universe, apply, blocks_of, hf_key

__all__ = [
    "ClosedSupport",
    "closure",
    "fix_group",
    "is_support",
    "minimal_closed_support",
    "support_order",
    "closed_sets",
    "canonical_family",
    "CensusReport",
    "symmetric_choice_census",
    "orbit_classes",
]


@dataclass(frozen=True)
class ClosedSupport:
    """A finite union of whole blocks, stored as its set of block ids."""

    blocks: frozenset[BlockId]

    def __init__(self, blocks: Iterable[BlockId] = ()):
        object.__setattr__(self, "blocks", frozenset(BlockId(*b) for b in blocks))

    def atoms(self, universe: Universe) -> frozenset[Atom]:
        return frozenset(a for b in self.blocks for a in universe.block_atoms(b))

    def sorted_blocks(self) -> list[BlockId]:
        return sorted(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        return "{" + ", ".join(map(repr, self.sorted_blocks())) + "}"


def closure(atoms: Iterable[Atom]) -> ClosedSupport:
    """Least closed set containing ``atoms``."""
    return ClosedSupport(BlockId(a.kind, a.block) for a in atoms)


def fix_group(E: ClosedSupport, universe: Universe, blocks: Optional[Iterable[BlockId]] = None) -> Iterator[GroupElement]:
    """Every group element fixing ``E`` pointwise that moves only ``blocks`` (default: all blocks)."""
    free = [b for b in (universe.blocks if blocks is None else sorted(set(blocks))) if b not in E.blocks]
    for powers in product(*(range(universe.prime(b.kind)) for b in free)):
        yield GroupElement.from_shifts(universe, dict(zip(free, powers)))


def is_support(E: ClosedSupport, x: HF, universe: Universe) -> bool:
    """Whether every element of ``fix_G(E)`` fixes ``x``.

    ``fix_G(E)`` is generated by the shifts of the blocks outside ``E``, and
    shifts of blocks not occurring in ``x`` act trivially on it, so checking
    one generator per remaining block of ``x`` suffices.
    """
    return all(
        apply(GroupElement.generator(universe, b), x) == x for b in blocks_of(x) if b not in E.blocks
    )


def minimal_closed_support(x: HF, universe: Universe) -> ClosedSupport:
    """The inclusion-least closed support of ``x``, found by trying closed sets by size."""
    relevant = sorted(blocks_of(x))
    for size in range(len(relevant) + 1):
        for combo in combinations(relevant, size):
            E = ClosedSupport(combo)
            if is_support(E, x, universe):
                return E
    raise AssertionError("the blocks of x always support x")


def support_order(E: ClosedSupport, F: ClosedSupport) -> int:
    """-1, 0 or 1 as ``E`` precedes, equals or follows ``F``.

    Blocks are ordered A before B, then by index; ``E`` precedes ``F`` when
    the least block of their symmetric difference lies in ``E``.
    """
    diff = E.blocks ^ F.blocks
    if not diff:
        return 0
    return -1 if min(diff) in E.blocks else 1


support_key = cmp_to_key(support_order)


def closed_sets(universe: Universe, max_blocks: int) -> list[ClosedSupport]:
    """Closed sets of at most ``max_blocks`` blocks, in support order."""
    found = [
        ClosedSupport(c) for size in range(min(max_blocks, len(universe.blocks)) + 1) for c in combinations(universe.blocks, size)
    ]
    return sorted(found, key=support_key)


def canonical_family(universe: Universe, coefficients: Sequence[int]) -> list[HFSet]:
    """Members built from ``c_0`` consecutive A-blocks, then ``c_1`` consecutive B-blocks, and so on.

    Member ``j`` starts at block index ``l = j * sum(c)`` and uses indices
    ``l .. l+c_0-1`` of kind 0, the next ``c_1`` indices of kind 1, etc.
    Each member has ``sum(c_i * p_i)`` atoms.
    """
    coeffs = [int(c) for c in coefficients]
    if len(coeffs) != len(universe.block_spec) or any(c < 0 for c in coeffs) or not any(coeffs):
        raise InvalidArgument("need one nonnegative coefficient per block kind, not all zero")
    stride = sum(coeffs)
    members: list[HFSet] = []
    for j in range(max(c for _, c in universe.block_spec) + 1):
        offset = j * stride
        blocks = []
        for kind, c in enumerate(coeffs):
            blocks += [BlockId(kind, offset + i) for i in range(c)]
            offset += c
        if not all(universe.has_block(b) for b in blocks):
            break
        members.append(HFSet(a for b in blocks for a in universe.block_atoms(b)))
    if not members:
        raise InvalidArgument("not enough blocks for a single member")
    return members


@dataclass(frozen=True)
class CensusReport:
    """Which members admit an atom fixed by ``fix_G(E)``, for each closed ``E``."""

    rows: tuple[tuple[ClosedSupport, tuple[int, ...]], ...]
    max_choosable: int
    empty_support_choosable: int

    def counts(self) -> list[tuple[ClosedSupport, int]]:
        return [(E, len(members)) for E, members in self.rows]


def symmetric_choice_census(family: Sequence[HF], universe: Universe, max_support_blocks: int) -> CensusReport:
    """For each closed ``E`` of at most ``max_support_blocks`` blocks, the members with an ``E``-invariant atom.

    An atom is fixed by ``fix_G(E)`` exactly when its block lies inside ``E``.
    """
    member_blocks = []
    for x in family:
        if not isinstance(x, HFSet) or not all(isinstance(e, Atom) for e in x):
            raise InvalidArgument("family members must be sets of atoms")
        member_blocks.append(blocks_of(x))
    rows = []
    for E in closed_sets(universe, max_support_blocks):
        rows.append((E, tuple(i for i, bs in enumerate(member_blocks) if bs & E.blocks)))
    empty = next(len(m) for E, m in rows if not E.blocks)
    return CensusReport(tuple(rows), max(len(m) for _, m in rows), empty)


def orbit_classes(members: Iterable[HF], universe: Universe, fixed: ClosedSupport) -> list[frozenset]:
    """Partition ``members`` into orbits of ``fix_G(fixed)``, each sorted by its least element."""
    pool = set(members)
    moving = sorted({b for x in pool for b in blocks_of(x)} - fixed.blocks)
    gens = [GroupElement.generator(universe, b) for b in moving]
    classes = []
    while pool:
        seed = min(pool, key=hf_key)
        orbit = {seed}
        frontier = [seed]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = apply(g, y)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        if not orbit <= pool:
            raise InvalidArgument("members are not closed under fix_G of the given support")
        pool -= orbit
        classes.append(frozenset(orbit))
    return classes
