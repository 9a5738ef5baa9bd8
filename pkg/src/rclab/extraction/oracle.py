"""Inputs to the extraction kernels: choice oracles, vote tables, block families."""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Optional, Sequence

from rclab.errors import InvalidArgument, InvalidOracle

__all__ = ["OracleChoice", "VoteTable", "BlockFamily", "as_counts"]

Atom = Hashable


class OracleChoice:
    """A choice function on the ``arity``-subsets of a finite universe.

    Either backed by an explicit table (validated for totality at
    construction) or by a function that is checked on every call.  The
    universe keeps its given order; it is used only for serialization.
    """

    __slots__ = ("universe", "arity", "_atoms", "_table", "_fn")

    def __init__(self, universe: Iterable[Atom], arity: int, table: Mapping[Iterable[Atom], Atom]):
        self._init_common(universe, arity)
        normalized: dict[frozenset, Atom] = {}
        for key, value in table.items():
            s = frozenset(key)
            self._check_subset(s)
            if value not in s:
                raise InvalidOracle(f"choice {value!r} is not in {sorted(s, key=repr)}")
            normalized[s] = value
        expected = comb(len(self.universe), arity)
        if len(normalized) != expected:
            raise InvalidOracle(f"table has {len(normalized)} entries, expected {expected}")
        self._table: Optional[dict[frozenset, Atom]] = normalized
        self._fn: Optional[Callable[[frozenset], Atom]] = None

    def _init_common(self, universe: Iterable[Atom], arity: int) -> None:
        self.universe = tuple(universe)
        self._atoms = frozenset(self.universe)
        if len(self._atoms) != len(self.universe):
            raise InvalidArgument("universe has repeated atoms")
        if arity < 1 or arity > len(self.universe):
            raise InvalidArgument(f"arity {arity} impossible for a universe of {len(self.universe)}")
        self.arity = arity

    @classmethod
    def from_function(
        cls,
        universe: Iterable[Atom],
        arity: int,
        fn: Callable[[frozenset], Atom],
        *,
        materialize: bool = True,
    ) -> "OracleChoice":
        """Build an oracle from ``fn``; with ``materialize=False`` it is evaluated lazily."""
        universe = tuple(universe)
        if materialize:
            return cls(universe, arity, {frozenset(s): fn(frozenset(s)) for s in combinations(universe, arity)})
        self = cls.__new__(cls)
        self._init_common(universe, arity)
        self._table = None
        self._fn = fn
        return self

    def _check_subset(self, s: frozenset) -> None:
        if len(s) != self.arity or not s <= self._atoms:
            raise InvalidOracle(f"{sorted(s, key=repr)} is not a {self.arity}-subset of the universe")

    def __call__(self, subset: Iterable[Atom]) -> Atom:
        s = subset if isinstance(subset, frozenset) else frozenset(subset)
        if self._table is not None:
            try:
                return self._table[s]
            except KeyError:
                self._check_subset(s)
                raise InvalidOracle("oracle is not total") from None
        self._check_subset(s)
        value = self._fn(s)
        if value not in s:
            raise InvalidOracle(f"choice {value!r} is not in the queried subset")
        return value

    @property
    def is_lazy(self) -> bool:
        return self._table is None

    def items(self) -> Iterator[tuple[frozenset, Atom]]:
        """Entries in universe order (materialized oracles only)."""
        if self._table is None:
            raise InvalidArgument("a lazy oracle has no table to enumerate")
        for s in combinations(self.universe, self.arity):
            key = frozenset(s)
            yield key, self._table[key]

    def relabel(self, sigma: Mapping[Atom, Atom]) -> "OracleChoice":
        """The conjugate oracle ``S -> sigma(f(sigma^-1 S))``."""
        inverse = {v: k for k, v in sigma.items()}
        universe = tuple(sigma[a] for a in self.universe)
        if self._table is not None:
            table = {frozenset(sigma[a] for a in s): sigma[v] for s, v in self._table.items()}
            return OracleChoice(universe, self.arity, table)
        fn = self._fn
        return OracleChoice.from_function(
            universe,
            self.arity,
            lambda s: sigma[fn(frozenset(inverse[a] for a in s))],
            materialize=False,
        )

    def __repr__(self) -> str:
        kind = "lazy" if self.is_lazy else "table"
        return f"OracleChoice(|U|={len(self.universe)}, arity={self.arity}, {kind})"


class VoteTable:
    """Nonnegative counts keyed by atoms (or by 2-sets of atoms)."""

    __slots__ = ("counts",)

    def __init__(self, counts: Mapping[Any, int]):
        if not counts:
            raise InvalidArgument("vote table is empty")
        for key, c in counts.items():
            if not isinstance(c, int) or c < 0:
                raise InvalidArgument(f"count for {key!r} must be a nonnegative integer, got {c!r}")
        self.counts = dict(counts)

    @classmethod
    def from_sequence(cls, values: Sequence[int]) -> "VoteTable":
        return cls(dict(enumerate(values)))

    def total(self) -> int:
        return sum(self.counts.values())

    def relabel(self, sigma: Mapping[Any, Any]) -> "VoteTable":
        return VoteTable({sigma[k]: c for k, c in self.counts.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VoteTable) and self.counts == other.counts

    def __repr__(self) -> str:
        return f"VoteTable({self.counts!r})"


def as_counts(votes: VoteTable | Mapping[Any, int] | Sequence[int]) -> dict[Any, int]:
    if isinstance(votes, VoteTable):
        return votes.counts
    if isinstance(votes, Mapping):
        return VoteTable(votes).counts
    return VoteTable.from_sequence(list(votes)).counts


class BlockFamily:
    """Ordered, pairwise disjoint blocks of pairwise disjoint 2-sets."""

    __slots__ = ("blocks",)

    def __init__(self, blocks: Iterable[Iterable[Iterable[Atom]]]):
        normalized = []
        seen: set = set()
        for block in blocks:
            members = frozenset(frozenset(pair) for pair in block)
            if not members:
                raise InvalidArgument("blocks must be nonempty")
            for pair in members:
                if len(pair) != 2:
                    raise InvalidArgument(f"block member {sorted(pair, key=repr)} is not a 2-set")
                if pair & seen:
                    raise InvalidArgument("2-sets of a block family must be pairwise disjoint")
                seen |= pair
            normalized.append(members)
        self.blocks: tuple[frozenset[frozenset], ...] = tuple(normalized)

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def atoms(self) -> frozenset:
        return frozenset(a for b in self.blocks for pair in b for a in pair)

    def relabel(self, sigma: Mapping[Atom, Atom]) -> "BlockFamily":
        return BlockFamily([[[sigma[a] for a in pair] for pair in b] for b in self.blocks])

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BlockFamily) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __repr__(self) -> str:
        return f"BlockFamily(sizes={self.sizes()})"
