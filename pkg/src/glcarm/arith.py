"""Exact integer utilities: primality, factorization, orders and lambda."""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

__all__ = [
    "FactorizationFailure",
    "NotCoprime",
    "Factorization",
    "SpfSieve",
    "is_prime",
    "factorize",
    "ceil_log",
    "valuation",
    "carmichael_lambda",
    "multiplicative_order",
    "prime_factors",
]

# Deterministic Miller-Rabin with the first 13 primes as bases is proven
# correct for every n below this bound.
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

TRIAL_DIVISION_LIMIT = 10**6
RHO_SEEDS = 24
RHO_MAX_ITERATIONS = 1 << 22


class FactorizationFailure(ArithmeticError):
    """Raised when an input is beyond the supported factoring scale."""


class NotCoprime(ValueError):
    """Raised when a multiplicative order is requested for a non-unit."""


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition, pairs sorted by ascending prime."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        primes = [p for p, _ in self.pairs]
        if primes != sorted(set(primes)):
            raise ValueError(f"primes must be distinct and ascending: {primes}")
        if any(e < 1 for _, e in self.pairs):
            raise ValueError("exponents must be positive")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], verify: bool = True) -> "Factorization":
        merged: dict[int, int] = {}
        for p, e in pairs:
            merged[int(p)] = merged.get(int(p), 0) + int(e)
        if verify:
            for p in merged:
                if not is_prime(p):
                    raise ValueError(f"{p} is not prime")
        return cls(tuple(sorted(merged.items())))

    @property
    def n(self) -> int:
        return math.prod(p**e for p, e in self.pairs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def exponent(self, p: int) -> int:
        """ord_p(n); zero when p does not divide n."""
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    @property
    def is_prime(self) -> bool:
        return len(self.pairs) == 1 and self.pairs[0][1] == 1

    @property
    def is_prime_power(self) -> bool:
        return len(self.pairs) == 1

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.pairs)

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.pairs]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.pairs) or "1"


class SpfSieve:
    """Smallest-prime-factor table on [0, limit]; read-only after construction."""

    def __init__(self, limit: int) -> None:
        if limit < 2:
            raise ValueError("sieve limit must be at least 2")
        self.limit = limit
        table = array("I", range(limit + 1))
        for i in range(4, limit + 1, 2):
            table[i] = 2
        for p in range(3, math.isqrt(limit) + 1, 2):
            if table[p] == p:
                for j in range(p * p, limit + 1, 2 * p):
                    if table[j] == j:
                        table[j] = p
        self.table = table

    def spf(self, n: int) -> int:
        return self.table[n]

    def is_prime(self, n: int) -> bool:
        return n >= 2 and self.table[n] == n

    def factorize(self, n: int) -> Factorization:
        if not 2 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range [2, {self.limit}]")
        pairs = []
        table = self.table
        while n > 1:
            p = table[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
        return Factorization(tuple(pairs))

    def primes(self) -> list[int]:
        return [i for i in range(2, self.limit + 1) if self.table[i] == i]


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(SpfSieve(TRIAL_DIVISION_LIMIT).primes())


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Raises FactorizationFailure for odd n with no small factor beyond the
    range where the fixed Miller-Rabin base set is proven.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= MR_DETERMINISTIC_LIMIT:
        raise FactorizationFailure(f"primality of {n} not decidable deterministically")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, c: int) -> int | None:
    """One Pollard-Brent run on x -> x^2 + c; returns a proper factor or None."""
    y, r, q = 2, 1, 1
    m = 128
    g = 1
    x = ys = y
    iterations = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        iterations += r
        if iterations > RHO_MAX_ITERATIONS:
            return None
    if g == n:
        # batched gcd overshot; redo one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int) -> list[int]:
    """Prime factors (with multiplicity) of n, which has no factor below the trial limit."""
    if n == 1:
        return []
    if is_prime(n):
        return [n]
    r = math.isqrt(n)
    if r * r == n:
        return _split(r) * 2
    for c in range(1, RHO_SEEDS + 1):
        d = _brent(n, c)
        if d is not None:
            return _split(d) + _split(n // d)
    raise FactorizationFailure(f"Pollard rho failed to split {n} after {RHO_SEEDS} seeds")


def factorize(n: int, sieve: SpfSieve | None = None) -> Factorization:
    """Factor n >= 2: sieve lookup, then trial division, then Pollard-Brent."""
    if n < 2:
        raise ValueError(f"factorize needs n >= 2, got {n}")
    if sieve is not None and n <= sieve.limit:
        return sieve.factorize(n)
    pairs: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs[p] = e
    if n > 1:
        if n < TRIAL_DIVISION_LIMIT**2:
            pairs[n] = pairs.get(n, 0) + 1
        else:
            for p in _split(n):
                pairs[p] = pairs.get(p, 0) + 1
    return Factorization(tuple(sorted(pairs.items())))


def prime_factors(n: int) -> tuple[int, ...]:
    return factorize(n).primes if n >= 2 else ()


def ceil_log(p: int, m: int) -> int:
    """Least t >= 0 with p**t >= m, by integer multiplication only."""
    t, power = 0, 1
    while power < m:
        power *= p
        t += 1
    return t


def valuation(n: int, p: int) -> int:
    """Exponent of the prime p in the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def carmichael_lambda(M: int | Factorization) -> int:
    """Exponent of the unit group of Z/MZ."""
    if isinstance(M, int):
        if M < 1:
            raise ValueError("carmichael_lambda needs M >= 1")
        if M == 1:
            return 1
        M = factorize(M)
    result = 1
    for p, e in M:
        if p == 2 and e >= 3:
            lam = 2 ** (e - 2)
        else:
            lam = (p - 1) * p ** (e - 1)
        result = math.lcm(result, lam)
    return result


def multiplicative_order(a: int, M: int) -> int:
    """Least v >= 1 with a**v == 1 mod M, reduced from lambda(M)."""
    if M < 1:
        raise ValueError("modulus must be positive")
    if M == 1:
        return 1
    a %= M
    if math.gcd(a, M) != 1:
        raise NotCoprime(f"gcd({a}, {M}) != 1")
    order = carmichael_lambda(M)
    if order == 1:
        return 1
    for q, _ in factorize(order):
        while order % q == 0 and pow(a, order // q, M) == 1:
            order //= q
    return order
