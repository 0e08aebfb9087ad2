import math

import pytest

from glcarm.arith import SpfSieve, ceil_log, factorize, valuation
from glcarm.core import (
    Status,
    classify_range,
    enumerate_carmichael,
    is_carmichael,
    is_classical_carmichael,
    k_m,
    korselt_check,
    nabla,
)
from glcarm.cyclotomic import big_d


def fermat_carmichael(n):
    """Classical definition straight from Fermat's little theorem."""
    if factorize(n).is_prime:
        return False
    return all(pow(a, n - 1, n) == 1 for a in range(2, n) if math.gcd(a, n) == 1)


def test_nabla_examples():
    for n in (3, 10, 12, 35, 1729):
        assert nabla(2, factorize(n)) == 1
    assert nabla(3, factorize(12)) == 2
    assert nabla(3, factorize(35)) == 1
    assert nabla(4, factorize(6)) == 6


def test_nabla_only_small_primes_contribute():
    for n in range(2, 3000):
        f = factorize(n)
        for m in (2, 3, 5, 8, 10):
            full = math.prod(p ** (ceil_log(p, m) - 1) for p in f.primes)
            assert nabla(m, f) == full


@pytest.mark.parametrize("m, n, k", [(2, 3, 24), (3, 2, 84), (2, 12, 1716)])
def test_k_m_examples(m, n, k):
    b = k_m(m, n)
    assert b.k == k == b.n * b.nabla * b.d


def test_k_m_closed_forms():
    for n in range(2, 400):
        assert k_m(2, n).k == n * (n - 1) * (n + 1)
        factor = 2 if n % 2 == 0 else 1
        assert k_m(3, n).k == factor * n * (n - 1) * (n + 1) * (n * n + n + 1)


def test_korselt_examples():
    v = korselt_check(2, 1729)
    assert v.status is Status.CARMICHAEL and not v.trivial
    v = korselt_check(2, 9)
    assert v.status is Status.CARMICHAEL and v.trivial
    assert korselt_check(2, 10).status is Status.NOT_CARMICHAEL
    assert korselt_check(2, 7).status is Status.NOT_COMPOSITE


def test_korselt_561_witness():
    # K_2(561) = 561 * 560 * 562 carries a single factor 3; D_2(17) = 288 needs 9.
    K = 561 * 560 * 562
    assert valuation(K, 3) == 1 and valuation(288, 3) == 2
    assert K % 288 != 0 and K % (3**2 - 1) == 0 and K % (11**2 - 1) == 0
    v = korselt_check(2, 561)
    assert v.status is Status.NOT_CARMICHAEL
    assert v.witness_prime == 17
    assert v.failing_k == 2


def test_m_range_enforced():
    with pytest.raises(ValueError):
        korselt_check(1, 561)
    with pytest.raises(ValueError):
        korselt_check(17, 561)


def test_classical_examples():
    assert is_classical_carmichael(561)
    assert is_classical_carmichael(1729)
    assert not is_classical_carmichael(48)
    assert not is_classical_carmichael(97)


def test_classical_matches_fermat_definition():
    for n in range(4, 3000):
        assert is_classical_carmichael(n) == fermat_carmichael(n), n


def test_enumerate_small():
    hits = [n for n, _ in enumerate_carmichael(2, 200, nontrivial_only=True)]
    assert 104 in hits and 171 in hits
    assert hits == sorted(hits)
    assert all(not factorize(n).is_prime_power for n in hits)
    full = [n for n, _ in enumerate_carmichael(2, 200)]
    assert set(hits) < set(full)
    assert {4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 169} <= set(full)


def test_enumerate_parallel_matches_serial():
    serial = enumerate_carmichael(3, 3000)
    assert enumerate_carmichael(3, 3000, threads=3) == serial


def test_classify_examples():
    c = classify_range(30000, range(2, 11))
    assert c[48].m_values == {2, 3, 4}
    assert c[26112].m_values == {4}
    assert c[22815].m_values == {3, 4}
    assert not c[48].trivial and c[49].trivial


def test_prime_power_law():
    sieve = SpfSieve(10**4)
    for n in range(4, 10**4 + 1):
        f = sieve.factorize(n)
        if f.is_prime_power and not f.is_prime:
            for m in range(2, 11):
                v = korselt_check(m, n, f)
                assert v.status is Status.CARMICHAEL and v.trivial


def test_power_closure():
    for m in (2, 3, 4):
        for n, _ in enumerate_carmichael(m, 10**4, nontrivial_only=True):
            for k in (2, 3):
                f = factorize(n)
                fk = type(f)(tuple((p, e * k) for p, e in f))
                assert is_carmichael(m, n**k, fk)


def test_mod_four_obstruction():
    for m in range(2, 11):
        for n, _ in enumerate_carmichael(m, 20000):
            assert n % 4 != 2


def test_two_adic_valuation_of_big_d():
    odd_primes = [p for p in range(3, 101) if factorize(p).is_prime]
    for p in odd_primes:
        for m in range(2, 11):
            assert valuation(big_d(m, p), 2) >= int(math.log2(m)) + 2


def test_verdict_evidence():
    for m in (2, 3, 5):
        for n in range(4, 3000):
            v = korselt_check(m, n)
            if v.status is Status.NOT_CARMICHAEL:
                p, k = v.witness_prime, v.failing_k
                K = k_m(m, n).k
                assert n % p == 0
                assert K % (p**k - 1) != 0
                assert all(K % (p**j - 1) == 0 for j in range(1, k))
                smaller = [q for q in factorize(n).primes if q < p]
                assert all(K % big_d(m, q) == 0 for q in smaller)
