import itertools

import pytest

from glcarm.arith import Factorization, factorize
from glcarm.core import is_carmichael, k_m
from glcarm.families import (
    FamilyId,
    HypothesisViolated,
    Proposition,
    analyze_prime_set,
    d2_condition,
    family_membership,
    p_number_search,
    verify_invariance,
)


def test_d2_examples():
    assert all(d2_condition(2, n) for n in range(2, 500))
    assert d2_condition(3, 15) and not d2_condition(3, 12)
    assert d2_condition(7, 15)


def test_d2_closed_forms_match_divisibility():
    for p in (2, 3, 5, 7, 11, 13, 17):
        for n in range(2, 5000):
            assert d2_condition(p, n) == (n * (n * n - 1) % (p * p - 1) == 0), (p, n)


def test_family_examples():
    assert family_membership("3carm23", k=4, l=1) == FamilyId(Proposition.THREE_CARM_23, 3)
    assert family_membership("3carm23", 48) == FamilyId(Proposition.THREE_CARM_23, 3)
    for l, r in itertools.product(range(1, 4), repeat=2):
        assert family_membership("2carm7", 3**l * 5**r).family_index == 3
    assert family_membership("4carm23", k=2, l=1) is None


def test_family_hypotheses():
    with pytest.raises(HypothesisViolated):
        family_membership("3carm23", 2 * 3 * 5)
    with pytest.raises(HypothesisViolated):
        family_membership("3carm23", 8)
    with pytest.raises(HypothesisViolated):
        family_membership("2carm7", 11 * 3)
    with pytest.raises(HypothesisViolated):
        family_membership("2carm7", 27)
    with pytest.raises(HypothesisViolated):
        family_membership("2carm11", 15)
    with pytest.raises(ValueError):
        FamilyId(Proposition.TWO_CARM_7_SMOOTH, 5)


def test_family_tables_match_criterion_small():
    for n in range(4, 20000):
        f = factorize(n)
        if f.is_prime_power:
            continue
        if f.primes[-1] <= 7:
            assert (family_membership("2carm7", n) is not None) == is_carmichael(2, n, f), n
        elif f.primes[-1] == 11:
            assert (family_membership("2carm11", n) is not None) == is_carmichael(2, n, f), n


def test_two_three_status_is_periodic():
    for m, lo in ((3, 2), (4, 3)):
        for k in range(lo, 13 + lo):
            for l in range(1, 7):
                base = is_carmichael(m, 2**k * 3**l)
                assert is_carmichael(m, 2 ** (k + 12) * 3**l) == base
                assert is_carmichael(m, 2**k * 3 ** (l + 6)) == base
                assert is_carmichael(m, 2 ** (k + 24) * 3 ** (l + 12)) == base


def test_analyze_examples():
    a = analyze_prime_set(3, [3, 2])
    assert (a.d_prime, a.d_dprime, a.lambda_dd) == (24, 91, 12)
    assert a.v == {2: 12, 3: 6}
    assert a.P == (2, 3) and a.nabla_P == 2
    b = analyze_prime_set(2, [2])
    assert (b.d_P, b.d_prime, b.d_dprime, b.v[2]) == (3, 1, 3, 2)
    for p in (5, 7, 13, 101):
        for m in (2, 5, 9):
            assert analyze_prime_set(m, [p]).d_prime == 1


def test_analysis_invariants():
    for m in range(2, 8):
        for P in ([2, 3], [3, 5, 7], [2, 11], [5, 13], [2, 3, 5, 7]):
            a = analyze_prime_set(m, P)
            assert a.d_P == a.d_prime * a.d_dprime
            assert all(a.d_dprime % p for p in a.P)
            rest = a.d_prime
            for p in a.P:
                while rest % p == 0:
                    rest //= p
            assert rest == 1
            assert all(a.lambda_dd % a.v[p] == 0 for p in a.P)


def test_split_criterion_matches_korselt():
    for m in (2, 3, 4, 5):
        for P, bounds in (([2, 3], (8, 6)), ([3, 5, 7], (3, 3, 3)), ([2, 7, 11], (6, 2, 2))):
            a = analyze_prime_set(m, P)
            for exps in itertools.product(*(range(1, b + 1) for b in bounds)):
                f = Factorization(tuple(zip(a.P, exps)))
                assert a.split_criterion(f) == is_carmichael(m, f.n, f)
                floor_ok = all(f.exponent(p) >= a.exponent_floor(p) for p in a.P)
                if floor_ok:
                    assert k_m(m, f.n, f).k % a.d_prime == 0


def test_p_number_search_examples():
    hits = {f.n for f in p_number_search(3, [2, 3], {2: 6, 3: 6})}
    assert {48, 144, 1728} <= hits
    hits = p_number_search(2, [3, 5], {3: 3, 5: 3})
    assert len(hits) == 9
    assert [f.n for f in hits] == sorted(f.n for f in hits)
    assert p_number_search(5, [2, 3], {2: 10, 3: 10}) == []


def test_p_number_search_validation():
    with pytest.raises(ValueError):
        p_number_search(2, [3, 5], {3: 2})


def test_verify_invariance_examples():
    r = verify_invariance(3, [2, 3], {2: 26, 3: 13})
    assert r.ok and r.checked > 0
    assert is_carmichael(3, 48) and is_carmichael(3, 48 * 2**12)
    assert verify_invariance(2, [3, 5], {3: 6, 5: 6}).ok
    vacuous = verify_invariance(5, [2, 3], {2: 10, 3: 10})
    assert vacuous.ok


def test_hits_never_run_out():
    for m, P in ((2, [3, 7]), (3, [2, 3]), (4, [2, 3]), (2, [2, 13]), (3, [2, 5])):
        v = analyze_prime_set(m, P).v
        bounds = {p: 4 for p in P}
        hits = p_number_search(m, P, bounds)
        if not hits:
            continue
        for p in P:
            extended = dict(bounds)
            extended[p] += v[p]
            assert len(p_number_search(m, P, extended)) > len(hits)
