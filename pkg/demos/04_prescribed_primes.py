"""
m-Carmichael numbers built from a fixed set of primes
=====================================================

For a prime set P, whether a P-number is m-Carmichael depends on its
exponents only up to a period v(p) for each p in P.
"""

from glcarm import analyze_prime_set, family_membership, is_carmichael, p_number_search, verify_invariance
from glcarm.arith import Factorization

a = analyze_prime_set(3, [2, 3])
print(f"D_3({{2,3}}) = {a.d_P} = {a.d_prime} * {a.d_dprime}, lambda = {a.lambda_dd}, periods {a.v}")

hits = p_number_search(3, [2, 3], {2: 14, 3: 7})
print("3-Carmichael 2^k 3^l with k <= 14, l <= 7:")
print("   ", ", ".join(str(f) for f in hits))

report = verify_invariance(3, [2, 3], {2: 26, 3: 13})
print(f"invariance: {report.checked} shifted pairs compared, {len(report.violations)} violations")

# The closed-form tables agree with the criterion
for k, l in [(4, 1), (2, 4), (10, 2), (6, 3), (5, 2)]:
    fid = family_membership("4carm23", k=k, l=l)
    print(f"k={k} l={l}: table {fid and fid.family_index}, criterion {is_carmichael(4, 2**k * 3**l)}")

# Very large inputs are fine once factored
n = Factorization(((2, 286), (3, 36)))
print("2^286*3^36 is m-Carmichael for m in", [m for m in range(2, 9) if is_carmichael(m, n.n, n)])
