"""Cyclotomic polynomials with exact integer coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = ["IntPoly", "cyclotomic_coeffs", "phi_eval", "big_d", "lcm_form"]


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial; coeffs[i] multiplies X**i."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def divmod_monic(self, divisor: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Long division by a monic polynomial, exact over the integers."""
        if not divisor.is_monic:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        if len(rem) - 1 < d:
            return IntPoly(()), self
        quot = [0] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                quot[i - d] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[i - d + j] -= c * b
        return IntPoly(tuple(quot)), IntPoly(tuple(rem[:d]))

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            body = mono if mono and abs(c) == 1 else f"{abs(c)}{mono}"
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        if not s:
            return "0"
        return s[2:] if s.startswith("+") else "-" + s[2:]


@lru_cache(maxsize=None)
def cyclotomic_coeffs(k: int) -> IntPoly:
    """Phi_k from X**k - 1 divided by Phi_d for every proper divisor d of k."""
    if k < 1:
        raise ValueError("k must be positive")
    poly = IntPoly((-1,) + (0,) * (k - 1) + (1,))
    for d in range(1, k):
        if k % d == 0:
            poly, rem = poly.divmod_monic(cyclotomic_coeffs(d))
            assert not rem.coeffs, f"nonzero remainder dividing out Phi_{d} from Phi_{k}"
    return poly


def phi_eval(k: int, a: int) -> int:
    return cyclotomic_coeffs(k)(a)


def big_d(m: int, a: int) -> int:
    """Product of Phi_1(a) .. Phi_m(a)."""
    return math.prod(phi_eval(k, a) for k in range(1, m + 1))


def lcm_form(m: int, a: int) -> int:
    """lcm(a - 1, a**2 - 1, ..., a**m - 1), straight from the powers."""
    if a < 2:
        raise ValueError("lcm_form needs a >= 2")
    return math.lcm(*(a**k - 1 for k in range(1, m + 1)))
