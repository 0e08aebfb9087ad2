"""
Checking the criterion against actual matrices
==============================================

The oracle never looks at the divisibility test: it computes the exponent
of GL(m, Z/qZ) for each prime power q dividing n by finding element orders,
or it powers random invertible matrices.
"""

from glcarm import group_exponent_bruteforce, k_m, korselt_check, oracle_is_carmichael

# For a prime p the exponent of GL(m, F_p) equals K_m(p)
for m, p in [(2, 3), (2, 5), (3, 2), (3, 3)]:
    print(f"GL({m}, F_{p}): exponent {group_exponent_bruteforce(m, p)}, K_m(p) = {k_m(m, p).k}")

# Exhaustive mode splits n into prime powers and combines by lcm
for n in (12, 36, 45, 48):
    report = oracle_is_carmichael(2, n)
    print(n, report.local_exponents, "oracle:", report.carmichael,
          "criterion:", korselt_check(2, n).carmichael)

# Sampled mode can only refute; here it finds nothing to refute
report = oracle_is_carmichael(2, 1729, mode="sampled", samples=2000, seed=0)
print("1729 sampled:", report.carmichael, "(probabilistic)" if report.probabilistic else "")
