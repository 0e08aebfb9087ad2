"""The m-Carmichael test through the Korselt-type criterion, and range scans."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .arith import Factorization, SpfSieve, ceil_log, factorize
from .cyclotomic import big_d

__all__ = [
    "MAX_M",
    "Status",
    "CarmichaelVerdict",
    "KmBreakdown",
    "nabla",
    "k_m",
    "korselt_check",
    "is_carmichael",
    "is_classical_carmichael",
    "enumerate_carmichael",
    "classify_range",
    "Classification",
]

MAX_M = 16


class Status(enum.Enum):
    NOT_COMPOSITE = "NotComposite"
    CARMICHAEL = "Carmichael"
    NOT_CARMICHAEL = "NotCarmichael"


@dataclass(frozen=True)
class CarmichaelVerdict:
    status: Status
    trivial: bool = False
    witness_prime: int | None = None
    failing_k: int | None = None

    @property
    def carmichael(self) -> bool:
        return self.status is Status.CARMICHAEL


@dataclass(frozen=True)
class KmBreakdown:
    n: int
    m: int
    nabla: int
    d: int
    k: int


def _check_m(m: int) -> None:
    if not 2 <= m <= MAX_M:
        raise ValueError(f"m must lie in [2, {MAX_M}], got {m}")


def nabla(m: int, f: Factorization) -> int:
    """Product of p**(ceil_log(p, m) - 1) over the primes of f; only p < m contribute."""
    _check_m(m)
    return math.prod(p ** (ceil_log(p, m) - 1) for p in f.primes if p < m)


def k_m(m: int, n: int, f: Factorization | None = None) -> KmBreakdown:
    if f is None:
        f = factorize(n)
    nab = nabla(m, f)
    d = big_d(m, n)
    return KmBreakdown(n=n, m=m, nabla=nab, d=d, k=n * nab * d)


def korselt_check(m: int, n: int, f: Factorization | None = None) -> CarmichaelVerdict:
    """Composite n is m-Carmichael iff D_m(p) divides K_m(n) for each prime p | n."""
    _check_m(m)
    if f is None:
        f = factorize(n)
    if f.is_prime:
        return CarmichaelVerdict(Status.NOT_COMPOSITE)
    K = k_m(m, n, f).k
    for p in f.primes:
        if K % big_d(m, p):
            k = next(k for k in range(1, m + 1) if K % (p**k - 1))
            return CarmichaelVerdict(Status.NOT_CARMICHAEL, witness_prime=p, failing_k=k)
    return CarmichaelVerdict(Status.CARMICHAEL, trivial=f.is_prime_power)


def is_carmichael(m: int, n: int, f: Factorization | None = None) -> bool:
    return korselt_check(m, n, f).carmichael


def is_classical_carmichael(n: int, f: Factorization | None = None) -> bool:
    """Classical Korselt: composite, squarefree, p - 1 | n - 1 for all p | n."""
    if f is None:
        f = factorize(n)
    if f.is_prime or not f.is_squarefree:
        return False
    return all((n - 1) % (p - 1) == 0 for p in f.primes)


def _scan(args: tuple[int, int, int, bool]) -> list[tuple[int, CarmichaelVerdict]]:
    m, lo, hi, nontrivial_only = args
    sieve = SpfSieve(max(hi, 2))
    hits = []
    for n in range(max(lo, 4), hi + 1):
        if sieve.is_prime(n):
            continue
        f = sieve.factorize(n)
        if nontrivial_only and f.is_prime_power:
            continue
        verdict = korselt_check(m, n, f)
        if verdict.carmichael:
            hits.append((n, verdict))
    return hits


def _chunks(limit: int, parts: int) -> list[tuple[int, int]]:
    size = -(-(limit - 1) // parts)
    return [(lo, min(lo + size - 1, limit)) for lo in range(2, limit + 1, size)]


def enumerate_carmichael(
    m: int, limit: int, nontrivial_only: bool = False, threads: int = 1
) -> list[tuple[int, CarmichaelVerdict]]:
    """All m-Carmichael n <= limit in ascending order."""
    _check_m(m)
    if limit < 4:
        return []
    if threads <= 1:
        return _scan((m, 2, limit, nontrivial_only))
    jobs = [(m, lo, hi, nontrivial_only) for lo, hi in _chunks(limit, threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return [hit for part in pool.map(_scan, jobs) for hit in part]


@dataclass(frozen=True)
class Classification:
    n: int
    factorization: Factorization
    m_values: frozenset[int]
    trivial: bool


def classify_range(
    limit: int, m_range: Iterable[int] = range(2, 11), sieve: SpfSieve | None = None
) -> dict[int, Classification]:
    """For each composite n <= limit, the set of m in m_range with n m-Carmichael.

    Every composite n gets an entry, possibly with an empty set.
    """
    ms = sorted(set(m_range))
    for m in ms:
        _check_m(m)
    if sieve is None or sieve.limit < limit:
        sieve = SpfSieve(max(limit, 2))
    out = {}
    for n in range(4, limit + 1):
        if sieve.is_prime(n):
            continue
        f = sieve.factorize(n)
        hits = frozenset(m for m in ms if korselt_check(m, n, f).carmichael)
        out[n] = Classification(n, f, hits, f.is_prime_power)
    return out
