"""
Building a counterexample matrix
================================

When D_m(p) does not divide K_m(n), some p^k - 1 fails to divide it, and a
matrix of order exactly p^k - 1 exists in GL(m, Z/nZ). It comes from the
companion matrix of a primitive polynomial over F_p.
"""

from glcarm import construct_witness, k_m, korselt_check, mat_pow, primitive_poly
from glcarm.matrix import matrix_order

print("primitive cubic over F_2:", primitive_poly(2, 3))
print("primitive quadratic over F_3:", primitive_poly(3, 2))

for m, n in [(2, 12), (2, 10), (4, 4000)]:
    v = korselt_check(m, n)
    p, k = v.witness_prime, v.failing_k
    A = construct_witness(m, n, None, p, k)
    K = k_m(m, n).k
    print(f"m={m} n={n}: p={p} k={k} order={matrix_order(A, p**k - 1)}",
          "A^K == I" if mat_pow(A, K).is_identity() else "A^K != I")
    print("   ", A.tolist())
