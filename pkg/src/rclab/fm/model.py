"""Blocked atoms, the abelian shift group, and hereditarily finite sets over atoms.

Atoms are ``(kind, block, position)`` triples: kind 0 is the A-blocks of size
``p_0``, kind 1 the B-blocks of size ``p_1``, and so on for further primes.
A group element stores one residue per block and shifts every atom of that
block cyclically by it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, NamedTuple, Union

from rclab.arith import is_prime
from rclab.errors import InvalidArgument

__all__ = [
    "Atom",
    "BlockId",
    "Universe",
    "GroupElement",
    "HFSet",
    "HF",
    "hf",
    "hf_key",
    "encode",
    "decode",
    "atoms_of",
    "blocks_of",
    "apply",
    "compose",
]


class Atom(NamedTuple):
    kind: int
    block: int
    pos: int

    def __repr__(self) -> str:
        return f"{'AB'[self.kind] if self.kind < 2 else f'K{self.kind}'}{self.block}.{self.pos}"


class BlockId(NamedTuple):
    kind: int
    index: int

    def __repr__(self) -> str:
        return f"{'AB'[self.kind] if self.kind < 2 else f'K{self.kind}'}{self.index}"


@dataclass(frozen=True)
class Universe:
    """Finitely many blocks per prime; ``block_spec`` lists ``(prime, count)`` per kind."""

    block_spec: tuple[tuple[int, int], ...]
    blocks: tuple[BlockId, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        spec = tuple((int(p), int(c)) for p, c in self.block_spec)
        for p, c in spec:
            if not is_prime(p):
                raise InvalidArgument(f"block size {p} is not a prime")
            if c < 0:
                raise InvalidArgument("block counts are nonnegative")
        object.__setattr__(self, "block_spec", spec)
        # block order: kind first, then index; A-blocks precede B-blocks
        object.__setattr__(self, "blocks", tuple(BlockId(k, i) for k, (_, c) in enumerate(spec) for i in range(c)))

    @classmethod
    def two_prime(cls, p0: int, p1: int, count0: int, count1: int | None = None) -> "Universe":
        return cls(((p0, count0), (p1, count0 if count1 is None else count1)))

    def prime(self, kind: int) -> int:
        return self.block_spec[kind][0]

    def has_block(self, block: BlockId) -> bool:
        return 0 <= block.kind < len(self.block_spec) and 0 <= block.index < self.block_spec[block.kind][1]

    def block_atoms(self, block: BlockId) -> tuple[Atom, ...]:
        return tuple(Atom(block.kind, block.index, k) for k in range(self.prime(block.kind)))

    def atoms(self) -> Iterator[Atom]:
        for b in self.blocks:
            yield from self.block_atoms(b)

    def check_atom(self, a: Atom) -> None:
        if not self.has_block(BlockId(a.kind, a.block)) or not 0 <= a.pos < self.prime(a.kind):
            raise InvalidArgument(f"atom {a!r} is not in the universe")


@dataclass(frozen=True)
class GroupElement:
    """A product of block shifts, one residue per block of the universe."""

    universe: Universe
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        u = self.universe
        if len(self.residues) != len(u.blocks):
            raise InvalidArgument("one residue per block is required")
        for b, r in zip(u.blocks, self.residues):
            if not 0 <= r < u.prime(b.kind):
                raise InvalidArgument(f"residue {r} out of range for block {b!r}")

    @classmethod
    def identity(cls, universe: Universe) -> "GroupElement":
        return cls(universe, (0,) * len(universe.blocks))

    @classmethod
    def generator(cls, universe: Universe, block: BlockId, power: int = 1) -> "GroupElement":
        """The shift of one block (alpha_i for A-blocks, beta_j for B-blocks)."""
        if not universe.has_block(block):
            raise InvalidArgument(f"no block {block!r} in the universe")
        p = universe.prime(block.kind)
        return cls(universe, tuple(power % p if b == block else 0 for b in universe.blocks))

    @classmethod
    def from_shifts(cls, universe: Universe, shifts: dict[BlockId, int]) -> "GroupElement":
        return cls(universe, tuple(shifts.get(b, 0) % universe.prime(b.kind) for b in universe.blocks))

    def shift(self, block: BlockId) -> int:
        return self.residues[self.universe.blocks.index(block)]

    def shifts(self) -> dict[BlockId, int]:
        return {b: r for b, r in zip(self.universe.blocks, self.residues) if r}

    def inverse(self) -> "GroupElement":
        u = self.universe
        return GroupElement(u, tuple(-r % u.prime(b.kind) for b, r in zip(u.blocks, self.residues)))

    def is_identity(self) -> bool:
        return not any(self.residues)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """``g o h``; componentwise addition, so the order does not matter."""
    if g.universe != h.universe:
        raise InvalidArgument("group elements live in different universes")
    u = g.universe
    return GroupElement(u, tuple((a + b) % u.prime(blk.kind) for blk, a, b in zip(u.blocks, g.residues, h.residues)))


class HFSet:
    """Finite set of atoms and HF sets, kept sorted and duplicate-free.

    Equality and hashing are structural.  Sorting uses :func:`hf_key`: atoms
    by ``(kind, block, position)`` before sets, sets by size and then
    lexicographically by their members' keys.
    """

    __slots__ = ("elements", "_key", "_hash")

    def __init__(self, elements: Iterable["HF"] = ()):
        members = {_coerce(e) for e in elements}
        self.elements: tuple[HF, ...] = tuple(sorted(members, key=hf_key))
        self._key = (1, len(self.elements), tuple(hf_key(e) for e in self.elements))
        self._hash = hash(self._key)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HFSet) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "HFSet") -> bool:
        return self._key < hf_key(other)

    def __iter__(self) -> Iterator["HF"]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __repr__(self) -> str:
        return "{" + ", ".join(map(repr, self.elements)) + "}"


HF = Union[Atom, HFSet]


def _coerce(x: Any) -> HF:
    if isinstance(x, (Atom, HFSet)):
        return x
    if isinstance(x, tuple) and len(x) == 3 and all(isinstance(v, int) for v in x):
        return Atom(*x)
    raise InvalidArgument(f"cannot read {x!r} as an atom or HF set")


def hf(obj: Any) -> HF:
    """Build an HF value from nested Python data: int triples are atoms, other collections are sets."""
    if isinstance(obj, (Atom, HFSet)):
        return obj
    if isinstance(obj, (tuple, list)) and len(obj) == 3 and all(isinstance(v, int) for v in obj):
        return Atom(*obj)
    if isinstance(obj, (list, tuple, set, frozenset)):
        return HFSet(hf(e) for e in obj)
    raise InvalidArgument(f"cannot read {obj!r} as an atom or HF set")


def hf_key(x: HF) -> tuple:
    if isinstance(x, Atom):
        return (0, x.kind, x.block, x.pos)
    return x._key


def encode(x: HF) -> list:
    """JSON-ready form: an atom is ``[kind, block, pos]``, a set is a list of encodings."""
    if isinstance(x, Atom):
        return [x.kind, x.block, x.pos]
    return [encode(e) for e in x.elements]


def decode(data: Any) -> HF:
    if isinstance(data, list) and len(data) == 3 and all(isinstance(v, int) for v in data):
        return Atom(*data)
    if isinstance(data, list):
        return HFSet(decode(e) for e in data)
    raise InvalidArgument(f"cannot decode {data!r}")


def atoms_of(x: HF) -> frozenset[Atom]:
    """Atoms occurring anywhere in ``x``."""
    if isinstance(x, Atom):
        return frozenset((x,))
    out: set[Atom] = set()
    stack = [x]
    while stack:
        for e in stack.pop().elements:
            if isinstance(e, Atom):
                out.add(e)
            else:
                stack.append(e)
    return frozenset(out)


def blocks_of(x: HF) -> frozenset[BlockId]:
    return frozenset(BlockId(a.kind, a.block) for a in atoms_of(x))


def apply(g: GroupElement, x: HF) -> HF:
    """Image of ``x`` under ``g``: atoms shift within their block, sets map elementwise."""
    u = g.universe
    shifts = dict(zip(u.blocks, g.residues))

    def go(y: HF) -> HF:
        if isinstance(y, Atom):
            u.check_atom(y)
            r = shifts[BlockId(y.kind, y.block)]
            return y if r == 0 else Atom(y.kind, y.block, (y.pos + r) % u.prime(y.kind))
        return HFSet(go(e) for e in y.elements)

    return go(x)
