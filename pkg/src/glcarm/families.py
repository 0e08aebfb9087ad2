"""m-Carmichael numbers with prescribed prime factors.

Closed-form family tables for small m, the split of D_m(P) into the part
supported on P and the part coprime to P, and searches over P-numbers.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .arith import Factorization, carmichael_lambda, ceil_log, factorize, is_prime, multiplicative_order
from .core import is_carmichael, k_m
from .cyclotomic import big_d

__all__ = [
    "HypothesisViolated",
    "Proposition",
    "FamilyId",
    "d2_condition",
    "family_membership",
    "PrimeSetAnalysis",
    "analyze_prime_set",
    "p_number_search",
    "InvarianceReport",
    "verify_invariance",
]


class HypothesisViolated(ValueError):
    """Input lies outside the domain a family table speaks about."""


class Proposition(enum.Enum):
    TWO_CARM_7_SMOOTH = "2carm7"
    TWO_CARM_11_SMOOTH = "2carm11"
    THREE_CARM_23 = "3carm23"
    FOUR_CARM_23 = "4carm23"

    @property
    def family_count(self) -> int:
        return {"2carm7": 4, "2carm11": 8, "3carm23": 4, "4carm23": 7}[self.value]

    @property
    def m(self) -> int:
        return {"2carm7": 2, "2carm11": 2, "3carm23": 3, "4carm23": 4}[self.value]


@dataclass(frozen=True)
class FamilyId:
    proposition: Proposition
    family_index: int

    def __post_init__(self) -> None:
        if not 1 <= self.family_index <= self.proposition.family_count:
            raise ValueError(f"family index {self.family_index} out of range for {self.proposition}")


def d2_condition(p: int, n: int) -> bool:
    """Whether p**2 - 1 divides n*(n**2 - 1); closed forms for p <= 11."""
    if p == 2:
        return True
    if p in (3, 5):
        return n % 2 == 1 or n % 8 == 0
    if p == 7:
        return n % 8 in (1, 7) or n % 16 == 0
    if p == 11:
        return d2_condition(5, n) and n % 5 in (0, 1, 4)
    return n * (n * n - 1) % (p * p - 1) == 0


def _exponents(n: int, allowed: Sequence[int]) -> dict[int, int]:
    f = factorize(n)
    if any(p not in allowed for p in f.primes):
        raise HypothesisViolated(f"{n} has a prime factor outside {tuple(allowed)}")
    return {p: f.exponent(p) for p in allowed}


def _two_carm_7(n: int) -> int | None:
    f = factorize(n)
    if f.is_prime_power or f.primes[-1] > 7:
        raise HypothesisViolated(f"{n} is not a composite 7-smooth non-prime-power")
    e = _exponents(n, (2, 3, 5, 7))
    k, l, r, s = e[2], e[3], e[5], e[7]
    if k and not s and k >= 3:
        return 1
    if k and s and k >= 4:
        return 2
    if not k and not s:
        return 3
    if not k and s and l % 2 == r % 2:
        return 4
    return None


def _two_carm_11(n: int) -> int | None:
    f = factorize(n)
    if f.is_prime_power or f.primes[-1] != 11:
        raise HypothesisViolated(f"{n} is not a composite 11-smooth, non-7-smooth non-prime-power")
    e = _exponents(n, (2, 3, 5, 7, 11))
    k, l, r, s, t = e[2], e[3], e[5], e[7], e[11]
    if k:
        if r and not s and k >= 3:
            return 1
        if r and s and k >= 4:
            return 2
        if not r and not s and k >= 3 and k % 2 == l % 2:
            return 3
        if not r and s and k >= 4 and (k + l + s) % 2 == 0:
            return 4
        return None
    if r and not s:
        return 5
    if r and s and (l + r + t) % 2 == 0:
        return 6
    if not r and not s and l % 2 == 0:
        return 7
    if not r and s and l % 2 == s % 2 == t % 2:
        return 8
    return None


def _signed(k_res: int, l_res: Sequence[int]) -> set[tuple[int, int]]:
    """Residue pairs (k mod 12, l mod 6) for k = +-k_res, l = +-l_res with
    the two signs chosen together."""
    return {(sign * k_res % 12, sign * r % 6) for sign in (1, -1) for r in l_res}


# allowed (k mod 12, l mod 6) pairs per family
_THREE_CARM_TABLE = {
    1: _signed(0, [0, 2, 3]),
    2: _signed(2, [4]),
    3: _signed(4, [0, 1, 2, 4]),
    4: {(6, 0), (6, 3)},
}
_FOUR_CARM_EXTRA = {
    5: _signed(1, [2]),
    6: _signed(3, [0, 3]),
    7: _signed(5, [4]),
}


def _match_table(table: Mapping[int, set[tuple[int, int]]], k: int, l: int) -> int | None:
    for index, pairs in table.items():
        if (k % 12, l % 6) in pairs:
            return index
    return None


def _kl(n: int | None, k: int | None, l: int | None) -> tuple[int, int]:
    if n is not None:
        e = _exponents(n, (2, 3))
        k, l = e[2], e[3]
    if k is None or l is None or k < 1 or l < 1:
        raise HypothesisViolated("need n = 2^k * 3^l with k, l >= 1")
    return k, l


def family_membership(
    proposition: Proposition | str,
    n: int | None = None,
    *,
    k: int | None = None,
    l: int | None = None,
) -> FamilyId | None:
    """Family of the closed-form table that n (or exponents k, l) falls in.

    The 2^k * 3^l tables accept either ``n`` or the exponents directly.
    """
    prop = Proposition(proposition)
    if prop is Proposition.TWO_CARM_7_SMOOTH:
        index = _two_carm_7(_require_n(n))
    elif prop is Proposition.TWO_CARM_11_SMOOTH:
        index = _two_carm_11(_require_n(n))
    else:
        k, l = _kl(n, k, l)
        min_k = 2 if prop is Proposition.THREE_CARM_23 else 3
        if k < min_k:
            return None
        table = dict(_THREE_CARM_TABLE)
        if prop is Proposition.FOUR_CARM_23:
            table.update(_FOUR_CARM_EXTRA)
        index = _match_table(table, k, l)
    return None if index is None else FamilyId(prop, index)


def _require_n(n: int | None) -> int:
    if n is None or n < 4:
        raise HypothesisViolated("a composite n is required")
    return n


@dataclass(frozen=True)
class PrimeSetAnalysis:
    P: tuple[int, ...]
    m: int
    d_P: int
    d_prime: int
    d_dprime: int
    nabla_P: int
    lambda_dd: int
    v: dict[int, int] = field(hash=False)

    def exponent_floor(self, p: int) -> int:
        """Smallest ord_p(n) that on its own secures the p-part of d_prime | K_m(n)."""
        need = _val(self.d_prime, p) - _val(self.nabla_P, p)
        return max(need, 1)

    def split_criterion(self, f: Factorization) -> bool:
        """d_prime | K_m(n) and d_dprime | K_m(n) for the P-number n."""
        if f.primes != self.P:
            raise HypothesisViolated(f"{f} is not a P-number for P = {self.P}")
        K = k_m(self.m, f.n, f).k
        return K % self.d_prime == 0 and K % self.d_dprime == 0


def _val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def analyze_prime_set(m: int, P: Sequence[int]) -> PrimeSetAnalysis:
    primes = tuple(sorted(set(P)))
    if not primes:
        raise ValueError("P must be nonempty")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    d_P = math.lcm(*(big_d(m, p) for p in primes))
    d_prime = 1
    rest = d_P
    for p in primes:
        while rest % p == 0:
            rest //= p
            d_prime *= p
    nabla_P = math.prod(p ** (ceil_log(p, m) - 1) for p in primes)
    return PrimeSetAnalysis(
        P=primes,
        m=m,
        d_P=d_P,
        d_prime=d_prime,
        d_dprime=rest,
        nabla_P=nabla_P,
        lambda_dd=carmichael_lambda(rest),
        v={p: multiplicative_order(p, rest) for p in primes},
    )


def _box(P: Sequence[int], bounds: Mapping[int, int]) -> list[Factorization]:
    for p in P:
        if bounds.get(p, 0) < 1:
            raise ValueError(f"bound for {p} must be at least 1")
    ranges = [range(1, bounds[p] + 1) for p in P]
    return [Factorization(tuple(zip(P, exps))) for exps in itertools.product(*ranges)]


def p_number_search(m: int, P: Sequence[int], bounds: Mapping[int, int]) -> list[Factorization]:
    """m-Carmichael P-numbers with ord_p(n) <= bounds[p], ascending in n."""
    primes = tuple(sorted(set(P)))
    hits = [f for f in _box(primes, bounds) if f.n >= 4 and is_carmichael(m, f.n, f)]
    return sorted(hits, key=lambda f: f.n)


@dataclass
class InvarianceReport:
    m: int
    P: tuple[int, ...]
    v: dict[int, int]
    checked: int = 0
    violations: list[tuple[Factorization, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_invariance(m: int, P: Sequence[int], bounds: Mapping[int, int]) -> InvarianceReport:
    """Compare n against n * p**v(p) for every pair inside the exponent box."""
    primes = tuple(sorted(set(P)))
    v = analyze_prime_set(m, primes).v
    status = {f.pairs: is_carmichael(m, f.n, f) for f in _box(primes, bounds) if f.n >= 4}
    report = InvarianceReport(m, primes, v)
    for pairs, hit in status.items():
        for i, p in enumerate(primes):
            shifted = list(pairs)
            shifted[i] = (p, pairs[i][1] + v[p])
            other = status.get(tuple(shifted))
            if other is None:
                continue
            report.checked += 1
            if other != hit:
                report.violations.append((Factorization(pairs), p))
    return report
