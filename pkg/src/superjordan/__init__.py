"""Exact computations with finite-dimensional Jordan superalgebras."""

from .algebra import (
    BilinearForm,
    CheckResult,
    SuperAlgebra,
    SuperBasis,
    SuperOperator,
    annihilator,
    associator,
    canonical_form_tau,
    check_commutative,
    check_form,
    check_kac_formula,
    check_super_jordan,
    direct_sum,
    dual_action,
    find_unit,
    flat,
    load_algebra_spec,
    sharp,
    signature,
    supertrace,
    verify_homomorphism,
)
from .catalog import (
    from_name,
    make_dns,
    make_dt,
    make_gl_plus,
    make_josp,
    make_k3,
    make_spin,
    make_st_rd,
    make_ujosp,
)
from .linalg import Subspace, kernel, rank_and_basis, solve, symmetric_signature

__version__ = "0.1.0"
