"""Matrices over Z/nZ and brute-force ground truth for GL(m, Z/nZ).

Everything here avoids the divisibility criterion in ``core``: group
exponents come from the orders of actual matrices, and the witness is an
explicit matrix whose power can be checked directly.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .arith import Factorization, factorize, is_prime
from .core import k_m
from .cyclotomic import IntPoly

__all__ = [
    "DimensionMismatch",
    "ScaleExceeded",
    "InvalidWitnessRequest",
    "ModMatrix",
    "mat_mul",
    "mat_pow",
    "determinant",
    "is_invertible",
    "matrix_order",
    "iter_gl",
    "group_exponent_bruteforce",
    "OracleReport",
    "oracle_is_carmichael",
    "random_invertible",
    "primitive_poly",
    "companion_matrix",
    "construct_witness",
    "EXHAUSTIVE_GATE",
]

# Largest q**(m*m) accepted for exhaustive enumeration of GL(m, Z/qZ).
EXHAUSTIVE_GATE = 10**9


class DimensionMismatch(ValueError):
    pass


class ScaleExceeded(ValueError):
    pass


class InvalidWitnessRequest(ValueError):
    pass


@dataclass(frozen=True)
class ModMatrix:
    modulus: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        rows = tuple(tuple(x % self.modulus for x in row) for row in self.entries)
        if any(len(row) != len(rows) for row in rows):
            raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, dim: int, modulus: int) -> "ModMatrix":
        return cls(modulus, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def reduce(self, modulus: int) -> "ModMatrix":
        """Image under Z/nZ -> Z/modulus Z (modulus must divide n)."""
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return ModMatrix(modulus, self.entries)

    def is_identity(self) -> bool:
        return all(
            x == (1 % self.modulus if i == j else 0)
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
        )

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        return mat_mul(self, other)

    def __pow__(self, e: int) -> "ModMatrix":
        return mat_pow(self, e)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


# Hot loops work on flat row-major tuples.

def _mul(a: Sequence[int], b: Sequence[int], d: int, mod: int) -> tuple[int, ...]:
    out = []
    for i in range(0, d * d, d):
        row = a[i:i + d]
        for j in range(d):
            out.append(sum(row[k] * b[k * d + j] for k in range(d)) % mod)
    return tuple(out)


def _pow(a: tuple[int, ...], e: int, d: int, mod: int) -> tuple[int, ...]:
    result = _flat_identity(d, mod)
    base = a
    while e:
        if e & 1:
            result = _mul(result, base, d, mod)
        e >>= 1
        if e:
            base = _mul(base, base, d, mod)
    return result


@lru_cache(maxsize=None)
def _flat_identity(d: int, mod: int) -> tuple[int, ...]:
    return tuple(int(i == j) % mod for i in range(d) for j in range(d))


def _flat(A: ModMatrix) -> tuple[int, ...]:
    return tuple(x for row in A.entries for x in row)


def _unflat(flat: Sequence[int], d: int, mod: int) -> ModMatrix:
    return ModMatrix(mod, tuple(tuple(flat[i:i + d]) for i in range(0, d * d, d)))


def mat_mul(A: ModMatrix, B: ModMatrix) -> ModMatrix:
    if A.modulus != B.modulus or A.dim != B.dim:
        raise DimensionMismatch(
            f"cannot multiply {A.dim}x{A.dim} mod {A.modulus} by {B.dim}x{B.dim} mod {B.modulus}"
        )
    return _unflat(_mul(_flat(A), _flat(B), A.dim, A.modulus), A.dim, A.modulus)


def mat_pow(A: ModMatrix, e: int) -> ModMatrix:
    if e < 0:
        raise ValueError("negative exponents are not supported")
    return _unflat(_pow(_flat(A), e, A.dim, A.modulus), A.dim, A.modulus)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free Bareiss elimination."""
    M = [list(r) for r in rows]
    d = len(M)
    if d == 0:
        return 1
    sign, prev = 1, 1
    for k in range(d - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, d) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[d - 1][d - 1]


def is_invertible(A: ModMatrix) -> bool:
    return math.gcd(determinant(A.entries) % A.modulus, A.modulus) == 1


def _order_flat(a: tuple[int, ...], bound: int, bound_primes: Sequence[int], d: int, mod: int) -> int:
    ident = _flat_identity(d, mod)
    if _pow(a, bound, d, mod) != ident:
        raise ArithmeticError(f"matrix power {bound} is not the identity mod {mod}")
    order = bound
    for q in bound_primes:
        while order % q == 0 and _pow(a, order // q, d, mod) == ident:
            order //= q
    return order


def matrix_order(A: ModMatrix, bound: int) -> int:
    """Exact multiplicative order of A, given a multiple ``bound`` of it."""
    if bound == 1:
        if not A.is_identity():
            raise ArithmeticError("matrix power 1 is not the identity")
        return 1
    return _order_flat(_flat(A), bound, factorize(bound).primes, A.dim, A.modulus)


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    f = factorize(q)
    if not f.is_prime_power:
        raise ValueError(f"{q} is not a prime power")
    return f.pairs[0]


def _reduce_row(vec: list[int], basis: list[tuple[int, list[int]]], p: int) -> list[int]:
    for pivot, b in basis:
        c = vec[pivot]
        if c:
            vec = [(x - c * y) % p for x, y in zip(vec, b)]
    return vec


def iter_gl(m: int, q: int) -> Iterator[tuple[int, ...]]:
    """All invertible m x m matrices mod the prime power q, as flat tuples.

    Rows are chosen in lexicographic order, pruning any row that is
    linearly dependent mod p on the rows above it.
    """
    p, _ = _prime_power(q)
    vectors = list(itertools.product(range(q), repeat=m))

    def extend(prefix: tuple[int, ...], basis: list[tuple[int, list[int]]]) -> Iterator[tuple[int, ...]]:
        if len(basis) == m:
            yield prefix
            return
        for v in vectors:
            r = _reduce_row([x % p for x in v], basis, p)
            pivot = next((i for i, x in enumerate(r) if x), None)
            if pivot is None:
                continue
            inv = pow(r[pivot], -1, p)
            r = [x * inv % p for x in r]
            # keep the basis fully reduced so pivots stay independent
            new_basis = [
                (pv, [(x - b[pivot] * y) % p for x, y in zip(b, r)]) for pv, b in basis
            ]
            new_basis.append((pivot, r))
            yield from extend(prefix + v, new_basis)

    yield from extend((), [])


def _exponent_bound(m: int, p: int, e: int) -> int:
    return p ** (e - 1) * k_m(m, p, Factorization(((p, 1),))).k


@lru_cache(maxsize=None)
def group_exponent_bruteforce(
    m: int, q: int, gate: int = EXHAUSTIVE_GATE, early_exit: bool = True
) -> int:
    """Exponent of GL(m, Z/qZ) as the lcm of element orders over the whole group.

    Each order is reduced from the a priori multiple p**(e-1) * K_m(p), and
    every enumerated matrix is checked to satisfy it. With ``early_exit`` the
    scan stops once the running lcm reaches that multiple; without it every
    element is visited.
    """
    p, e = _prime_power(q)
    if q ** (m * m) > gate:
        raise ScaleExceeded(f"{q}^{m * m} exceeds the exhaustive gate {gate}")
    bound = _exponent_bound(m, p, e)
    primes = factorize(bound).primes if bound > 1 else ()
    exponent = 1
    for a in iter_gl(m, q):
        exponent = math.lcm(exponent, _order_flat(a, bound, primes, m, q))
        if early_exit and exponent == bound:
            break
    return exponent


@dataclass
class OracleReport:
    n: int
    m: int
    mode: str
    carmichael: bool
    k: int
    group_exponent: int | None = None
    local_exponents: dict[int, int] = field(default_factory=dict)
    samples: int = 0
    seed: int | None = None
    counterexample: ModMatrix | None = None

    @property
    def probabilistic(self) -> bool:
        return self.mode == "sampled" and self.carmichael

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "mode": self.mode,
            "carmichael": self.carmichael,
            "probabilistic": self.probabilistic,
            "k": str(self.k),
            "group_exponent": None if self.group_exponent is None else str(self.group_exponent),
            "local_exponents": {str(q): str(v) for q, v in self.local_exponents.items()},
            "samples": self.samples,
            "seed": self.seed,
            "counterexample": None if self.counterexample is None else self.counterexample.tolist(),
        }


def random_invertible(m: int, n: int, rng: random.Random) -> ModMatrix:
    """Uniform element of GL(m, Z/nZ) by rejection sampling."""
    while True:
        rows = tuple(tuple(rng.randrange(n) for _ in range(m)) for _ in range(m))
        if math.gcd(determinant(rows) % n, n) == 1:
            return ModMatrix(n, rows)


def oracle_is_carmichael(
    m: int,
    n: int,
    f: Factorization | None = None,
    mode: str = "exhaustive",
    samples: int = 1000,
    seed: int = 0,
    gate: int = EXHAUSTIVE_GATE,
) -> OracleReport:
    """Decide the defining property A**K_m(n) == I directly on matrices.

    ``exhaustive`` combines the brute-force exponents of GL(m, Z/qZ) over the
    prime powers q exactly dividing n; ``sampled`` powers random invertible
    matrices and can only refute.
    """
    if f is None:
        f = factorize(n)
    if f.is_prime:
        raise ValueError(f"{n} is prime; the property is defined for composite n")
    K = k_m(m, n, f).k
    if mode == "exhaustive":
        local = {q: group_exponent_bruteforce(m, q, gate) for q in f.prime_powers()}
        exponent = math.lcm(*local.values())
        return OracleReport(n, m, mode, K % exponent == 0, K, exponent, local)
    if mode == "sampled":
        rng = random.Random(seed)
        ident = _flat_identity(m, n)
        for _ in range(samples):
            A = random_invertible(m, n, rng)
            if _pow(_flat(A), K, m, n) != ident:
                return OracleReport(n, m, mode, False, K, samples=samples, seed=seed, counterexample=A)
        return OracleReport(n, m, mode, True, K, samples=samples, seed=seed)
    raise ValueError(f"unknown oracle mode {mode!r}")


# Polynomials over F_p as coefficient lists, lowest degree first.

def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _ptrim([x % p for x in a])
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, y in enumerate(f):
            a[shift + i] = (a[shift + i] - c * y) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, f, p)


def _ppowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = _pmod([1], f, p)
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, f, p)
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim([x % p for x in a]), _ptrim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_primitive(f: list[int], p: int, k: int, group_order: int, order_primes: Sequence[int]) -> bool:
    x = [0, 1]
    for i in range(1, k // 2 + 1):
        xq = _ppowmod(x, p**i, f, p)
        diff = xq + [0] * max(0, 2 - len(xq))
        diff[1] -= 1
        if len(_pgcd(f, diff, p)) > 1:
            return False
    one = _pmod([1], f, p)
    if _ppowmod(x, group_order, f, p) != one:
        return False
    return all(_ppowmod(x, group_order // q, f, p) != one for q in order_primes)


@lru_cache(maxsize=None)
def primitive_poly(p: int, k: int) -> IntPoly:
    """First monic degree-k polynomial over F_p (lexicographic in the
    coefficients, highest degree first) whose root generates F_{p^k}^*.
    Coefficients are returned as residues in [0, p).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("degree must be positive")
    group_order = p**k - 1
    order_primes = factorize(group_order).primes if group_order > 1 else ()
    for tail in itertools.product(range(p), repeat=k):
        if tail[-1] == 0:
            continue
        f = list(reversed(tail)) + [1]
        if _is_primitive(f, p, k, group_order, order_primes):
            return IntPoly(tuple(f))
    raise AssertionError(f"no primitive polynomial of degree {k} over F_{p}")


def companion_matrix(poly: IntPoly, modulus: int) -> ModMatrix:
    """Companion matrix of a monic polynomial: ones below the diagonal,
    negated low coefficients in the last column."""
    if not poly.is_monic:
        raise ValueError("companion matrix needs a monic polynomial")
    k = poly.degree
    rows = [[0] * k for _ in range(k)]
    for i in range(1, k):
        rows[i][i - 1] = 1
    for i in range(k):
        rows[i][k - 1] = -poly.coeffs[i]
    return ModMatrix(modulus, tuple(tuple(r) for r in rows))


def construct_witness(m: int, n: int, f: Factorization | None, p: int, k: int) -> ModMatrix:
    """An element of GL(m, Z/nZ) of order exactly p**k - 1.

    The companion matrix of a primitive polynomial, padded with an identity
    block, is raised to p**(e-1) modulo p**e (e = ord_p n) and glued by CRT
    to the identity modulo n / p**e.
    """
    if f is None:
        f = factorize(n)
    if n % p or not is_prime(p):
        raise InvalidWitnessRequest(f"{p} is not a prime divisor of {n}")
    if not 1 <= k <= m:
        raise InvalidWitnessRequest(f"k = {k} must lie in [1, {m}]")
    e = f.exponent(p)
    pe = p**e
    rest = n // pe
    block = companion_matrix(primitive_poly(p, k), pe)
    rows = [[int(i == j) for j in range(m)] for i in range(m)]
    for i in range(k):
        for j in range(k):
            rows[i][j] = block.entries[i][j]
    local = mat_pow(ModMatrix(pe, tuple(tuple(r) for r in rows)), p ** (e - 1))
    if rest == 1:
        return ModMatrix(n, local.entries)
    # x = a mod p^e, x = delta_ij mod rest
    inv = pow(pe, -1, rest)
    glued = tuple(
        tuple(a + pe * (((i == j) - a) * inv % rest) for j, a in enumerate(row))
        for i, row in enumerate(local.entries)
    )
    return ModMatrix(n, glued)
