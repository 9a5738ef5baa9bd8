"""Single-configuration selection kernels.

Every kernel is equivariant: it only looks at counts, set membership and the
structure of its input (which side, which block), never at how atoms happen to
be named or ordered.  Relabeling the input therefore relabels the output.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from rclab.arith import is_prime
from rclab.errors import AllEqual, InvalidArgument, InvalidOracle, KernelInvariantError, PreconditionError
from rclab.extraction.oracle import OracleChoice, VoteTable, as_counts

__all__ = [
    "argmax_set",
    "argmin_set",
    "minority_select",
    "triple_vote_select",
    "k32_select",
    "octet_select",
    "pentagon_edge_select",
    "kummer_minority_select",
]

Atom = Hashable
Choice = Callable[[frozenset], Atom]


def argmax_set(counts: Mapping[Any, int]) -> frozenset:
    top = max(counts.values())
    return frozenset(k for k, c in counts.items() if c == top)


def argmin_set(counts: Mapping[Any, int]) -> frozenset:
    low = min(counts.values())
    return frozenset(k for k, c in counts.items() if c == low)


def minority_select(counts: VoteTable | Mapping[Any, int] | Sequence[int]) -> frozenset:
    """Keys holding the minimum count.  Sequences are keyed by index."""
    table = as_counts(counts)
    low = argmin_set(table)
    if len(low) == len(table):
        raise AllEqual("all counts are equal")
    return low


def _odd_one_out(values: Sequence[int]) -> int:
    # two equal -> the third; all distinct -> the minimum
    a, b, c = values
    if a == b == c:
        raise PreconditionError(f"counts {tuple(values)} are all equal")
    if a == b:
        return 2
    if a == c:
        return 1
    if b == c:
        return 0
    return min(range(3), key=values.__getitem__)


def triple_vote_select(counts: Sequence[int]) -> int:
    """Index picked from three vote counts whose sum is not divisible by 3.

    If exactly two counts tie, the remaining index wins; otherwise the index of
    the minimum.  Only the all-equal triple, the sole input this rule cannot
    split, is rejected.
    """
    values = tuple(counts)
    if len(values) != 3 or any(not isinstance(c, int) or c < 0 for c in values):
        raise InvalidArgument(f"expected three nonnegative counts, got {values!r}")
    return _odd_one_out(values)


def k32_select(three: Iterable[Atom], two: Iterable[Atom], edges: Iterable[Iterable[Atom]]) -> Atom:
    """Pick a vertex of K_{3,2} from a set of 1 to 5 of its edges.

    An odd edge count gives different degrees on the 2-side and the lower one
    is chosen.  An even count (2 or 4) is not divisible by 3, so the 3-side
    degrees are not all equal and the triple-vote rule picks one.
    """
    left, right = tuple(three), tuple(two)
    if len(set(left)) != 3 or len(set(right)) != 2 or set(left) & set(right):
        raise InvalidArgument("need a 3-set and a disjoint 2-set")
    allowed = {frozenset((a, x)) for a in left for x in right}
    chosen = {frozenset(e) for e in edges}
    if not chosen <= allowed:
        raise InvalidArgument("edges must join the 3-side to the 2-side")
    if not 1 <= len(chosen) <= 5:
        raise PreconditionError(f"need 1..5 edges, got {len(chosen)}")
    degree = Counter(v for e in chosen for v in e)
    if len(chosen) % 2:
        x, y = right
        return x if degree[x] < degree[y] else y
    return left[_odd_one_out([degree[a] for a in left])]


def _ask(f: Choice, subset: frozenset) -> Atom:
    value = f(subset)
    if value not in subset:
        raise InvalidOracle(f"oracle returned {value!r} outside the queried subset")
    return value


def _finish_octet(A: frozenset, p: frozenset, q: frozenset, f: Choice) -> Atom:
    union = p | q
    if len(A) >= 5:
        A = union - A
    if len(A) == 1:
        return next(iter(A))
    if len(A) == 2:
        return _ask(f, union - A)
    if len(A) == 3:
        singles = [s for s in (p - A, q - A, p & A, q & A) if len(s) == 1]
        if len(singles) != 1:
            raise KernelInvariantError(f"expected one singleton part, found {len(singles)}")
        return next(iter(singles[0]))
    raise KernelInvariantError(f"cannot dispatch a selected set of size {len(A)}")


def octet_select(
    p: Iterable[Atom],
    q: Iterable[Atom],
    f: Choice,
    *,
    return_stages: bool = False,
) -> Atom | tuple[Atom, int]:
    """Choose one atom of ``p | q`` for disjoint 4-sets from a 6-set oracle.

    Stage one counts how often each atom is picked among the 28 six-subsets
    and takes the most-picked set ``A`` (never all 8 atoms, since 8 does not
    divide 28).  Sizes 1, 2, 3 are settled directly and sizes 5..7 via the
    complement.  Size 4 triggers a second count over ``f(A | B)`` for the six
    pairs ``B`` outside ``A``; of the most- and least-picked sets at most one
    has size 4, and the most-picked one is preferred.
    """
    p, q = frozenset(p), frozenset(q)
    if len(p) != 4 or len(q) != 4 or p & q:
        raise InvalidArgument("p and q must be disjoint 4-sets")
    if isinstance(f, OracleChoice) and f.arity != 6:
        raise InvalidArgument(f"oracle arity must be 6, got {f.arity}")
    union = p | q
    counts = dict.fromkeys(union, 0)
    for pair in combinations(union, 2):
        counts[_ask(f, union.difference(pair))] += 1
    A = argmax_set(counts)
    stages = 1
    if len(A) == 4:
        stages = 2
        counts = dict.fromkeys(union, 0)
        for B in combinations(union - A, 2):
            counts[_ask(f, A.union(B))] += 1
        most, least = argmax_set(counts), argmin_set(counts)
        A = most if len(most) != 4 else least
        if len(A) == 4:
            raise KernelInvariantError("both second-stage extremes have size 4")
    atom = _finish_octet(A, p, q, f)
    return (atom, stages) if return_stages else atom


def pentagon_edge_select(tournament: Iterable[tuple[Atom, Atom]]) -> frozenset:
    """Five undirected edges from a 5-node tournament with all outdegrees 2.

    Each node contributes the edge joining its two successors.
    """
    arcs = [tuple(a) for a in tournament]
    nodes = {v for arc in arcs for v in arc}
    if len(nodes) != 5:
        raise PreconditionError(f"tournament must have 5 nodes, got {len(nodes)}")
    pairs = Counter(frozenset(a) for a in arcs)
    if any(len(pair) != 2 for pair in pairs) or len(pairs) != 10 or any(c != 1 for c in pairs.values()):
        raise PreconditionError("not a tournament: every pair needs exactly one arc")
    successors: dict[Atom, list[Atom]] = {v: [] for v in nodes}
    for u, v in arcs:
        successors[u].append(v)
    bad = [v for v, out in successors.items() if len(out) != 2]
    if bad:
        raise PreconditionError(f"{len(bad)} node(s) do not have outdegree 2")
    edges = frozenset(frozenset(out) for out in successors.values())
    if len(edges) != 5:
        raise KernelInvariantError(f"selected {len(edges)} distinct edges instead of 5")
    return edges


def kummer_minority_select(
    C: Iterable[Atom],
    p: int,
    votes: VoteTable | Mapping[Any, int] | Sequence[int],
) -> frozenset:
    """Least-voted elements of ``C`` when the votes total ``C(|C|, p)`` and ``p`` divides ``|C|``.

    The result is proper: equal votes would need ``|C|`` to divide
    ``C(|C|, p)``, but the ``p``-adic valuation of that binomial is one less
    than that of ``|C|``.  Sequence votes are aligned with ``C``.
    """
    members = list(C)
    size = len(set(members))
    if size != len(members) or size == 0:
        raise InvalidArgument("C must be a nonempty set without repeats")
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not a prime")
    if size % p:
        raise PreconditionError(f"{p} does not divide |C| = {size}")
    if isinstance(votes, (VoteTable, Mapping)):
        table = as_counts(votes)
    else:
        values = list(votes)
        if len(values) != size:
            raise InvalidArgument("vote vector length differs from |C|")
        table = as_counts(dict(zip(members, values)))
    if set(table) != set(members):
        raise InvalidArgument("votes must be keyed by exactly the elements of C")
    expected = comb(size, p)
    if sum(table.values()) != expected:
        raise InvalidArgument(f"votes sum to {sum(table.values())}, expected C({size},{p}) = {expected}")
    low = argmin_set(table)
    if len(low) == size:
        # ruled out by Kummer: v_p(C(size, p)) = v_p(size) - 1
        raise KernelInvariantError("uniform votes summed to C(|C|, p)")
    return low
