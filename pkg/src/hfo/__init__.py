"""Orbifold Floer homology of surgeries on knots, computed by bordered pairing."""

from .algebra import AlgebraElement, multiply
from .cfk import (
    CFKInfinityWindow,
    CFKMinusData,
    build_cfa_knot_exterior,
    compute_epsilon,
    compute_nu,
    compute_nu_prime,
    compute_tau,
)
from .homology import ChainComplexF2, euler_characteristic, homology_rank, solve_grading
from .orbifold import (
    OrbifoldSurgerySpec,
    build_dn,
    build_dn_bounded,
    check_theorem2,
    check_theorem3,
    compute_hfo,
    h1_orb_order,
    h1_orb_order_nullhomologous,
)
from .reduction import cancel_edge, isomorphic, reduce
from .structures import (
    TypeAStructure,
    TypeDAStructure,
    TypeDStructure,
    cfda_dehn_twist,
    dualize_d_to_a,
    eval_mk,
    is_bounded,
    is_bounded_type_a,
    is_reduced,
    validate_type_d,
)
from .tensor import box_a_d, box_da_d

__version__ = "0.1.0"
