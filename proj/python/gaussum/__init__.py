"""Gauss sums over finite fields: exact character algebra, batch DFT
evaluation, Weyl-sum equidistribution experiments and the relation
decomposition algorithm."""

from gaussum._core import (
    Field,
    bound_rhs,
    check_conjugation,
    check_frobenius,
    check_hd_lifting,
    check_hd_product,
    check_independence,
    check_jacobi,
    check_scaled,
    decompose,
    gauss_all,
    gauss_sum,
    identity_suite,
    jacobi_preset_series,
    jacobi_sum,
    jacobi_via_gauss,
    make_field_for_size,
    roots_mu,
    roots_over_k,
    weyl_series,
    __version__,
)

__all__ = [
    "Field",
    "bound_rhs",
    "check_conjugation",
    "check_frobenius",
    "check_hd_lifting",
    "check_hd_product",
    "check_independence",
    "check_jacobi",
    "check_scaled",
    "decompose",
    "gauss_all",
    "gauss_sum",
    "identity_suite",
    "jacobi_preset_series",
    "jacobi_sum",
    "jacobi_via_gauss",
    "make_field_for_size",
    "roots_mu",
    "roots_over_k",
    "weyl_series",
    "__version__",
]
