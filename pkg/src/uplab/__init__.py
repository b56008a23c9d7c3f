"""Finite-dimensional laboratory for the Poisson-Lie structure on U(n)
built from the splitting L2 = u2 (+) b2+."""

__version__ = "0.1.0"

from .basis import (
    BasisWindow,
    build_block_A,
    build_block_B,
    in_b_plus,
    in_u,
    p_b2,
    p_u2,
    shift_u,
    t_plus,
    t_plus_plus,
    t_zero,
)
from .growth import GrowthSeries, coadjoint_norm_identity_check, hilbert_witness, witness_growth
from .matrix_core import (
    SkewHermitian,
    UnitaryElement,
    adjoint,
    commutator,
    exp_skew,
    random_skew_hermitian,
    random_trace_class,
    random_unitary,
    schatten_norm,
    svd_values,
    trace,
)
from .pairing import (
    QuotientClass,
    class_of,
    coadjoint_algebra_bplus,
    coadjoint_group,
    eval_class,
    im_trace_pair,
    pairing_gram,
)
from .poisson import (
    ResidualRecord,
    b_plus_recovery,
    cocycle_residual,
    conj_identities_residual,
    d_pi_e,
    d_pi_translated,
    jacobi_cyclic_sum,
    pi_r,
    quotient_bracket,
    sharp,
)
