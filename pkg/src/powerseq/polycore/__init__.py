"""Exact scalars and sparse polynomial arithmetic."""

from .linalg import det, inverse, matmul, rank, rref, solve
from .mpoly import (
    MPoly,
    NotDivisible,
    divide_exact,
    divide_exact_or_raise,
    evaluate,
    iter_monomials,
    partial_derivative,
    poly_arithmetic,
    poly_from_upoly,
    upoly_from_poly,
    xvars,
)
from .powers import interpolation_weights, power_generators, reduce_linear_in_powers
from .scalars import (
    RadicalElem,
    Rat,
    RatFunc,
    UPoly,
    as_fraction,
    frac_text,
    integer_root,
    rational_root,
    rational_roots,
    scalar_inverse,
    scalar_is_zero,
    scalar_text,
    squarefree_part,
)

__all__ = [
    "MPoly", "NotDivisible", "RadicalElem", "Rat", "RatFunc", "UPoly",
    "as_fraction", "det", "divide_exact", "divide_exact_or_raise", "evaluate",
    "frac_text", "integer_root", "interpolation_weights", "inverse",
    "iter_monomials", "matmul", "partial_derivative", "poly_arithmetic",
    "poly_from_upoly", "power_generators", "rank", "rational_root",
    "rational_roots", "reduce_linear_in_powers", "rref", "scalar_inverse",
    "scalar_is_zero", "scalar_text", "solve", "squarefree_part",
    "upoly_from_poly", "xvars",
]
