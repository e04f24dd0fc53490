"""Smarandache function, factorials and censuses over F_q[t]."""

from .census import (
    CSV_HEADER,
    CensusParams,
    CensusReport,
    Classification,
    KERNEL_NAME,
    classify,
    in_T,
    lemma_s4_check,
    run_census,
    tau_sum,
    thresholds,
)
from .errors import CapExceeded, DomainError, FieldMismatch, ParseError, SmarpolyError
from .factor import (
    Factorization,
    count_monic_irreducibles,
    derivative,
    factorize,
    is_irreducible,
    max_irreducible_factor,
    omega,
    sieve_irreducibles,
    tau,
)
from .gf import (
    DEFAULT_MODULI,
    FieldSpec,
    fe_add,
    fe_inv,
    fe_mul,
    fe_neg,
    field_from_q,
    make_field,
    parse_field,
)
from .poly import (
    Poly,
    delta,
    delta_inv,
    factorial_direct,
    factorial_product,
    poly_add,
    poly_compare,
    poly_divrem,
    poly_gcd,
    poly_mul,
    poly_pow,
    poly_powmod,
    poly_sub,
    valuation,
    valuation_of_factorial,
)
from .smarandache import (
    RepDecomposition,
    check_delta_contraction,
    distance_to_fixed,
    fixed_points,
    inverse_image_prime_powers,
    rep_compose,
    rep_decompose,
    repunit,
    s,
    s_iterate,
    s_oracle_definition,
    s_oracle_valuation,
    s_prime_power,
)

__version__ = "0.1.0"
