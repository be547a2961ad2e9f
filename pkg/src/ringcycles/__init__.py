"""Exact cycle structure of linear permutation maps over Z_{p^k}.

Theory side: orders of polynomials (P_1, k_s, P_k) from root data in Galois
rings. Measurement side: exhaustive functional-graph enumeration. Every
prediction has a check that compares the two.
"""

from .catmap import (
    CatMap,
    CatParams,
    CatPrediction,
    cat_companion,
    cat_count_doubling_check,
    cat_enumerate,
    cat_matrix_period,
    cat_minimal_poly,
    cat_stabilization_check,
    cat_stabilization_threshold,
    cat_table_census,
    cat_table_predict,
    companion_embedding_check,
    table_counts,
)
from .dynamics import (
    CheckReport,
    CompanionMap,
    CycleHistogram,
    DMatrix,
    LinearMap,
    build_d_matrix,
    cycle_decomposition,
    dmatrix_recursion_check,
    embedding_check,
    enumerate_cycles,
    iterate,
    ks_hat,
    ks_of_state,
    period_lift_law_check,
    splitting_counts,
    stabilization_check,
    state_period,
    to_dot,
)
from .errors import *  # noqa: F401,F403
from .order import (
    OrderProfile,
    ks_of_poly,
    order_profile,
    p1_of_poly,
    pk_of_poly,
    verify_order_extension_equality,
)
from .poly import (
    Polynomial,
    RootSet,
    factor_mod_p,
    minimal_poly_of_sequence,
    newton_lift,
    parse_poly,
    poly_add,
    poly_gcd_field,
    poly_mod,
    poly_mul,
    poly_order_oracle,
)
from .zpk import (
    INFINITE,
    GaloisRing,
    Modulus,
    RingElement,
    mult_order,
    ring_add,
    ring_inverse,
    ring_mul,
    ring_neg,
    valuation,
)
