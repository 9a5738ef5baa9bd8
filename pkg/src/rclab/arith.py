"""Exact integer primitives: primes, Kummer valuations, representability.

An integer ``n`` is *representable* over a set of primes ``P`` when
``n = sum(a_i * p_i)`` for nonnegative integers ``a_i``.  Sums reachable over
``P`` are tracked as Python-int bitmasks (bit ``s`` set iff ``s`` is
representable), which keeps the dynamic programme short and fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from rclab.errors import InvalidArgument

__all__ = [
    "PrimeSet",
    "Representation",
    "is_prime",
    "primes_up_to",
    "kummer_valuation",
    "legendre_valuation",
    "reach_mask",
    "representable",
    "is_representable",
    "support_sets",
    "iter_support_sets",
    "sorted_supports",
]


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidArgument(f"{p!r} is not a prime")


def primes_up_to(limit: int) -> list[int]:
    """All primes ``<= limit`` in ascending order (sieve of Eratosthenes)."""
    if limit < 0:
        raise InvalidArgument(f"limit must be nonnegative, got {limit}")
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True, order=False)
class PrimeSet:
    """A strictly increasing tuple of distinct primes."""

    primes: tuple[int, ...]

    def __init__(self, primes: Iterable[int] = ()):
        ps = tuple(sorted(set(int(p) for p in primes)))
        for p in ps:
            _require_prime(p)
        object.__setattr__(self, "primes", ps)

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, p: object) -> bool:
        return p in self.primes

    def shortlex_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.primes), self.primes)

    def __lt__(self, other: "PrimeSet") -> bool:
        return self.shortlex_key() < other.shortlex_key()

    def issubset(self, other: "PrimeSet") -> bool:
        return set(self.primes) <= set(other.primes)

    def __repr__(self) -> str:
        return "PrimeSet({" + ", ".join(map(str, self.primes)) + "})"


@dataclass(frozen=True)
class Representation:
    """Nonnegative coefficients, aligned with a :class:`PrimeSet`."""

    coefficients: tuple[int, ...]

    def evaluate(self, primes: Iterable[int]) -> int:
        ps = tuple(primes)
        if len(ps) != len(self.coefficients):
            raise InvalidArgument("coefficient vector and prime set differ in length")
        return sum(a * p for a, p in zip(self.coefficients, ps))


def legendre_valuation(n: int, p: int) -> int:
    """Exponent of ``p`` in ``n!``."""
    total, q = 0, p
    while q <= n:
        total += n // q
        q *= p
    return total


def kummer_valuation(n: int, k: int, p: int) -> int:
    """Exponent of ``p`` in ``C(n, k)``.

    Counts the ``j >= 1`` for which the fractional part of ``k / p**j``
    exceeds that of ``n / p**j``; in integers this is ``k % p**j > n % p**j``.
    No term with ``p**j > n`` can contribute, since then both residues are the
    numbers themselves and ``k <= n``.
    """
    _require_prime(p)
    if n < 0 or not 0 <= k <= n:
        raise InvalidArgument(f"need 0 <= k <= n, got n={n}, k={k}")
    count, q = 0, p
    while q <= n:
        if k % q > n % q:
            count += 1
        q *= p
    return count


def _close_under(mask: int, p: int, limit: int) -> int:
    # mask | mask<<p | mask<<2p | ... truncated to bits 0..limit, by doubling
    full = (1 << (limit + 1)) - 1
    step = p
    while step <= limit:
        mask |= (mask << step) & full
        step *= 2
    return mask


def reach_mask(primes: Iterable[int], limit: int) -> int:
    """Bitmask of the integers in ``0..limit`` representable over ``primes``."""
    mask = 1
    for p in primes:
        mask = _close_under(mask, p, limit)
    return mask


def _as_primes(P: PrimeSet | Iterable[int]) -> tuple[int, ...]:
    return P.primes if isinstance(P, PrimeSet) else PrimeSet(P).primes


def is_representable(n: int, P: PrimeSet | Iterable[int]) -> bool:
    if n < 0:
        return False
    return bool(reach_mask(_as_primes(P), n) >> n & 1)


def representable(n: int, P: PrimeSet | Iterable[int]) -> Optional[Representation]:
    """Lexicographically least coefficient vector representing ``n`` over ``P``.

    Returns ``None`` when ``n`` is not representable.
    """
    ps = _as_primes(P)
    if n < 0:
        return None
    # suffix[i] = sums reachable with ps[i:]
    suffix = [0] * (len(ps) + 1)
    suffix[-1] = 1
    for i in range(len(ps) - 1, -1, -1):
        suffix[i] = _close_under(suffix[i + 1], ps[i], n)
    if not suffix[0] >> n & 1:
        return None
    coeffs = []
    rest = n
    for i, p in enumerate(ps):
        a = 0
        while not suffix[i + 1] >> (rest - a * p) & 1:
            a += 1
        coeffs.append(a)
        rest -= a * p
    return Representation(tuple(coeffs))


def iter_support_sets(n: int) -> Iterator[PrimeSet]:
    """Prime sets over which ``n`` has a representation with all coefficients >= 1.

    Yielded in depth-first lexicographic order of the prime tuples.
    """
    if n < 2:
        raise InvalidArgument(f"n must be >= 2, got {n}")
    primes = primes_up_to(n)

    def walk(start: int, chosen: list[int], total: int, mask: int) -> Iterator[PrimeSet]:
        for i in range(start, len(primes)):
            p = primes[i]
            if total + p > n:
                break
            chosen.append(p)
            m = _close_under(mask, p, n)
            if m >> (n - total - p) & 1:
                yield PrimeSet(chosen)
            yield from walk(i + 1, chosen, total + p, m)
            chosen.pop()

    yield from walk(0, [], 0, 1)


def support_sets(n: int) -> set[PrimeSet]:
    """All supports of ``n``: prime sets ``P`` with ``n = sum a_i p_i``, every ``a_i >= 1``."""
    return set(iter_support_sets(n))


def sorted_supports(supports: Iterable[PrimeSet]) -> list[PrimeSet]:
    return sorted(supports, key=PrimeSet.shortlex_key)
