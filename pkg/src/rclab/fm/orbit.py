"""Selection inside one free orbit: distances, distance sets and rank-class refinement.

A free orbit of ``prod p_r`` points is modelled as residue vectors; the group
acts by translation, so the translation taking ``s`` to ``s'`` is unique and its
``r``-th coordinate is the distance ``dist_r(s, s')``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from rclab.arith import PrimeSet, is_representable
from rclab.errors import InvalidArgument, KernelInvariantError, PreconditionError
from rclab.fm.model import HF, hf_key

__all__ = [
    "OrbitSpace",
    "dist",
    "chi",
    "chi_key",
    "rank_classes",
    "orbit_select_stages",
    "orbit_select",
    "orbit_split",
]

Point = tuple[int, ...]


@dataclass(frozen=True)
class OrbitSpace:
    """Residue vectors with ``multiplicities[i]`` coordinates modulo ``primes[i]``."""

    primes: tuple[int, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", tuple(self.primes))
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        PrimeSet(self.primes)  # validates primality
        if len(self.primes) != len(self.multiplicities) or any(m < 0 for m in self.multiplicities):
            raise InvalidArgument("one nonnegative multiplicity per prime is required")
        if not self.moduli:
            raise InvalidArgument("the orbit needs at least one coordinate")

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(p for p, k in zip(self.primes, self.multiplicities) for _ in range(k))

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities)

    def points(self) -> list[Point]:
        return list(product(*(range(p) for p in self.moduli)))

    def check(self, s: Sequence[int]) -> Point:
        s = tuple(s)
        if len(s) != self.dimension or any(not 0 <= x < p for x, p in zip(s, self.moduli)):
            raise InvalidArgument(f"{s} is not a point of the orbit")
        return s

    def translate(self, s: Point, g: Point) -> Point:
        return tuple((a + b) % p for a, b, p in zip(s, g, self.moduli))

    def is_representable_size(self, size: int) -> bool:
        return is_representable(size, set(self.primes))


def dist(r: int, s: Point, s2: Point, moduli: Sequence[int]) -> int:
    """``r``-th coordinate of the translation taking ``s`` to ``s2``."""
    return (s2[r] - s[r]) % moduli[r]


def chi(r: int, s: Point, subset: Iterable[Point], moduli: Sequence[int]) -> frozenset[int]:
    """The distances ``dist_r(s, s')`` over ``s'`` in ``subset``."""
    return frozenset(dist(r, s, x, moduli) for x in subset)


def chi_key(values: frozenset[int], modulus: int) -> tuple[int, ...]:
    """Sort key for distance sets: the set holding the least element of the symmetric difference comes first."""
    return tuple(0 if i in values else 1 for i in range(modulus))


def rank_classes(r: int, subset: Iterable[Point], moduli: Sequence[int]) -> list[frozenset[Point]]:
    """Partition ``subset`` by the distance set at coordinate ``r``, in increasing order of that set."""
    pts = list(subset)
    groups: dict[frozenset[int], set[Point]] = {}
    for s in pts:
        groups.setdefault(chi(r, s, pts, moduli), set()).add(s)
    order = sorted(groups, key=lambda v: chi_key(v, moduli[r]))
    return [frozenset(groups[v]) for v in order]


def orbit_select_stages(t: Iterable[Sequence[int]], space: OrbitSpace) -> list[frozenset[Point]]:
    """The stages ``t_{-1} = t, t_0, ..., t_{d-1}`` of the refinement.

    Stage ``r`` keeps the first rank class at coordinate ``r`` whose size is
    not representable over the primes.  Representable sizes are closed under
    addition, so such a class always exists while the current size is not
    representable.
    """
    current = frozenset(space.check(s) for s in t)
    if not current:
        raise PreconditionError("t must be nonempty")
    if space.is_representable_size(len(current)):
        raise PreconditionError(f"|t| = {len(current)} is representable over {space.primes}")
    stages = [current]
    for r in range(space.dimension):
        for cls in rank_classes(r, current, space.moduli):
            if not space.is_representable_size(len(cls)):
                current = cls
                break
        else:
            raise KernelInvariantError(f"no rank class of non-representable size at coordinate {r}")
        stages.append(current)
    return stages


def orbit_select(t: Iterable[Sequence[int]], space: OrbitSpace) -> Point:
    """The single point left after refining ``t`` coordinate by coordinate.

    Raises :class:`KernelInvariantError` when the last stage still holds
    more than one point.
    """
    last = orbit_select_stages(t, space)[-1]
    if len(last) != 1:
        raise KernelInvariantError(f"refinement ended with {len(last)} points, not one")
    return next(iter(last))


def orbit_split(groups: Sequence[Sequence[Iterable[HF]]]) -> list[frozenset]:
    """From each group of disjoint orbit classes, the class holding the group's least element."""
    chosen = []
    for classes in groups:
        normalized = [frozenset(c) for c in classes]
        if not normalized or not all(normalized):
            raise InvalidArgument("groups and their classes must be nonempty")
        seen: set = set()
        for c in normalized:
            if c & seen:
                raise InvalidArgument("orbit classes of a group must be disjoint")
            seen |= c
        chosen.append(min(normalized, key=lambda c: min(hf_key(x) for x in c)))
    return chosen
