"""Decide RC_m => WOC_n^- from the arithmetic characterization.

The implication holds iff every prime set over which ``n`` is representable
also represents ``m``.  Representability is monotone in the prime set, so it is
enough to look at *supports* of ``n`` (all coefficients positive).  The search
below walks increasing prime tuples and skips every subtree whose prefix
already represents ``m``: no superset of such a prefix can be a counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from rclab.arith import (
    PrimeSet,
    _close_under,
    _require_prime,
    is_prime,
    is_representable,
    iter_support_sets,
    primes_up_to,
    representable,
)
from rclab.errors import InvalidArgument

__all__ = [
    "ImplicationVerdict",
    "decide_implication",
    "implication_table",
    "power_case_closed_form",
    "bertrand_witness",
    "verify_verdict",
]


@dataclass(frozen=True)
class ImplicationVerdict:
    m: int
    n: int
    holds: bool
    witness: Optional[PrimeSet]
    checked_supports: int

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise InvalidArgument("a verdict carries a witness exactly when it fails")


def decide_implication(m: int, n: int) -> ImplicationVerdict:
    """Decide whether RC_m implies WOC_n^-.

    On failure the witness is the shortlex-least support of ``n`` over which
    ``m`` is not representable.  ``checked_supports`` counts the supports of
    ``n`` visited by the pruned search.
    """
    if m < 2 or n < 2:
        raise InvalidArgument(f"m and n must be >= 2, got m={m}, n={n}")
    limit = max(m, n)
    primes = primes_up_to(n)
    best: Optional[tuple[int, ...]] = None
    checked = 0

    def walk(start: int, chosen: list[int], total: int, mask: int) -> None:
        nonlocal best, checked
        for i in range(start, len(primes)):
            p = primes[i]
            if total + p > n:
                break
            depth = len(chosen) + 1
            if best is not None and depth > len(best):
                return
            chosen.append(p)
            grown = _close_under(mask, p, limit)
            rest = n - total - p
            if grown >> rest & 1:
                checked += 1
            if grown >> m & 1:
                # every extension represents m as well
                chosen.pop()
                continue
            if grown >> rest & 1:
                cand = tuple(chosen)
                if best is None or (len(cand), cand) < (len(best), best):
                    best = cand
            walk(i + 1, chosen, total + p, grown)
            chosen.pop()

    walk(0, [], 0, 1)
    if best is None:
        return ImplicationVerdict(m, n, True, None, checked)
    return ImplicationVerdict(m, n, False, PrimeSet(best), checked)


def verify_verdict(verdict: ImplicationVerdict, *, exhaustive: bool = False) -> bool:
    """Re-check a verdict independently of the pruned search.

    A failing verdict is checked through its witness: the witness must be a
    support of ``n`` and must not represent ``m``.  A holding verdict is only
    re-checked when ``exhaustive`` is set, by enumerating every support of ``n``.
    """
    m, n = verdict.m, verdict.n
    if not verdict.holds:
        w = verdict.witness
        assert w is not None
        positive = n - sum(w.primes)
        return positive >= 0 and is_representable(positive, w) and representable(m, w) is None
    if not exhaustive:
        return True
    return all(is_representable(m, P) for P in iter_support_sets(n))


def implication_table(m_max: int, n_max: int) -> list[list[ImplicationVerdict]]:
    """Rows ``m = 2..m_max``, columns ``n = 2..n_max``."""
    return [[decide_implication(m, n) for n in range(2, n_max + 1)] for m in range(2, m_max + 1)]


def power_case_closed_form(p: int, m: int, n: int) -> bool:
    """RC_{p^m} => WOC_n^- iff ``n | p^m`` or ``(p, m, n) == (2, 1, 4)``."""
    _require_prime(p)
    if m < 1 or n < 2:
        raise InvalidArgument(f"need m >= 1 and n >= 2, got m={m}, n={n}")
    return p**m % n == 0 or (p == 2 and m == 1 and n == 4)


def _least_prime_factor_except(x: int, excluded: int) -> int:
    d = 2
    while d * d <= x:
        if x % d == 0:
            if d != excluded:
                return d
            while x % d == 0:
                x //= d
            if x == 1:
                break
            continue
        d += 1
    if x > 1 and x != excluded:
        return x
    raise InvalidArgument(f"no prime factor other than {excluded}")


def bertrand_witness(p: int, m: int, k: int) -> PrimeSet:
    """Two primes ``{q0, q1}`` representing ``p**k`` but not ``p**m``.

    ``q0`` is the least prime in ``(p^m, 2p^m)`` for odd ``p`` and in
    ``(2^(k-1) - 1, 2^k - 2)`` for ``p = 2``; ``q1`` is the least prime factor
    of ``p^k - q0`` other than ``p``.
    """
    _require_prime(p)
    if m < 1 or k <= m:
        raise InvalidArgument(f"need 1 <= m < k, got m={m}, k={k}")
    if p == 2:
        if k < 3:
            raise InvalidArgument("p = 2 needs k >= 3")
        lo, hi = 2 ** (k - 1) - 1, 2**k - 2
    else:
        if p**k - 2 * p**m < p:
            raise InvalidArgument(f"p^k - 2p^m must be at least p for p={p}, m={m}, k={k}")
        lo, hi = p**m, 2 * p**m
    q0 = next((q for q in range(lo + 1, hi) if is_prime(q)), None)
    if q0 is None:
        raise InvalidArgument(f"no prime strictly between {lo} and {hi}")
    q1 = _least_prime_factor_except(p**k - q0, p)
    return PrimeSet((q0, q1))
