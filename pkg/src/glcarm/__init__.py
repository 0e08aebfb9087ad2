"""Carmichael numbers for GL(m): exact criterion, matrix oracle, families."""

__version__ = "0.1.0"

from .arith import (
    Factorization,
    FactorizationFailure,
    NotCoprime,
    SpfSieve,
    carmichael_lambda,
    ceil_log,
    factorize,
    is_prime,
    multiplicative_order,
)
from .core import (
    CarmichaelVerdict,
    KmBreakdown,
    Status,
    classify_range,
    enumerate_carmichael,
    is_carmichael,
    is_classical_carmichael,
    k_m,
    korselt_check,
    nabla,
)
from .cyclotomic import IntPoly, big_d, cyclotomic_coeffs, lcm_form, phi_eval
from .families import (
    FamilyId,
    PrimeSetAnalysis,
    Proposition,
    analyze_prime_set,
    d2_condition,
    family_membership,
    p_number_search,
    verify_invariance,
)
from .matrix import (
    ModMatrix,
    OracleReport,
    construct_witness,
    group_exponent_bruteforce,
    is_invertible,
    mat_mul,
    mat_pow,
    oracle_is_carmichael,
    primitive_poly,
)
