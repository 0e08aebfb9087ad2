import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from glcarm.cyclotomic import IntPoly, big_d, cyclotomic_coeffs, lcm_form, phi_eval


def mobius(n):
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def phi_by_mobius(k, a):
    """Phi_k(a) as the product of (a^d - 1)^mu(k/d); needs a >= 2."""
    value = Fraction(1)
    for d in range(1, k + 1):
        if k % d == 0:
            value *= Fraction(a**d - 1) ** mobius(k // d)
    assert value.denominator == 1
    return value.numerator


def totient(k):
    return sum(1 for i in range(1, k + 1) if math.gcd(i, k) == 1)


@pytest.mark.parametrize("k, coeffs", [(1, (-1, 1)), (6, (1, -1, 1)), (4, (1, 0, 1)), (2, (1, 1)), (3, (1, 1, 1))])
def test_cyclotomic_examples(k, coeffs):
    assert cyclotomic_coeffs(k).coeffs == coeffs


@pytest.mark.parametrize("k, a, value", [(1, 10, 9), (3, 2, 7), (4, 2, 5), (2, 2, 3)])
def test_phi_eval_examples(k, a, value):
    assert phi_eval(k, a) == value


@pytest.mark.parametrize("m, a, value", [(3, 3, 104), (4, 2, 105), (2, 4, 15), (3, 2, 21)])
def test_big_d_examples(m, a, value):
    assert big_d(m, a) == value


@pytest.mark.parametrize("m, a, value", [(3, 2, 21), (2, 3, 8), (2, 2, 3)])
def test_lcm_form_examples(m, a, value):
    assert lcm_form(m, a) == value


def test_coefficients_structure():
    for k in range(1, 120):
        poly = cyclotomic_coeffs(k)
        assert poly.is_monic
        assert poly.degree == totient(k)
        assert abs(poly.coeffs[0]) <= 1
        if k < 105:
            assert set(poly.coeffs) <= {-1, 0, 1}
    assert -2 in cyclotomic_coeffs(105).coeffs


def test_evaluation_matches_mobius_product():
    for k in range(1, 40):
        for a in (2, 3, 5, 10, 97):
            assert phi_eval(k, a) == phi_by_mobius(k, a)


def test_lcm_equals_cyclotomic_product_exhaustive():
    for a in range(2, 501):
        for m in range(2, 11):
            assert lcm_form(m, a) == big_d(m, a)


@given(st.integers(2, 50), st.integers(1, 5), st.integers(2, 6))
def test_big_d_divides_big_d_of_power(a, k, m):
    assert big_d(m, a**k) % big_d(m, a) == 0


def test_intpoly_helpers():
    p = IntPoly((1, 2, 0, 0))
    assert p.coeffs == (1, 2) and p.degree == 1
    q, r = IntPoly((-1, 0, 0, 1)).divmod_monic(IntPoly((-1, 1)))
    assert q.coeffs == (1, 1, 1) and r.coeffs == ()
    assert (IntPoly((-1, 1)) * IntPoly((1, 1))).coeffs == (-1, 0, 1)
    assert str(cyclotomic_coeffs(6)) == "X^2 - X + 1"
    with pytest.raises(ValueError):
        cyclotomic_coeffs(0)
