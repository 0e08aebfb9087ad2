"""
Testing and counting m-Carmichael numbers
=========================================

A composite n is m-Carmichael when every invertible m x m matrix A over
Z/nZ satisfies A^K = I with K = K_m(n) = n * nabla_m(n) * D_m(n).
The divisibility test ``korselt_check`` decides this from the prime
factors of n alone.
"""

from glcarm import classify_range, enumerate_carmichael, factorize, k_m, korselt_check

# The exponent K_m(n) and its three factors
b = k_m(3, 12)
print(f"K_3(12) = {b.n} * {b.nabla} * {b.d} = {b.k}")

# A verdict carries evidence on failure: the prime p and the least k
# with p^k - 1 not dividing K_m(n)
for n in (1729, 9, 10, 561):
    print(n, korselt_check(2, n))

# Prime powers are always m-Carmichael; the interesting ones are the rest
hits = enumerate_carmichael(2, 3000, nontrivial_only=True)
print(len(hits), "nontrivial 2-Carmichael numbers up to 3000, the first few:")
for n, _ in hits[:8]:
    print("   ", n, "=", factorize(n))

# The set of m for which each n qualifies
table = classify_range(30000, range(2, 11))
for n in (48, 324, 22815, 26112):
    print(n, sorted(table[n].m_values))
