"""Exact arithmetic: cyclotomic scalars, polynomials, Milnor rings."""

from .cyclotomic import ONE, ZERO, Cyclotomic, cyclotomic_poly, lcm, sqrt_unit, sqrt_rational
from .linalg import det, inverse, matmul, nullspace, rank, rref, solve
from .poly import (
    MultiPoly,
    QuotientRing,
    format_poly,
    groebner_basis,
    groebner_normal_form,
    hessian,
    milnor_ring,
    quotient_ring,
)

__all__ = [
    "ONE", "ZERO", "Cyclotomic", "cyclotomic_poly", "lcm", "sqrt_unit", "sqrt_rational",
    "det", "inverse", "matmul", "nullspace", "rank", "rref", "solve",
    "MultiPoly", "QuotientRing", "format_poly", "groebner_basis",
    "groebner_normal_form", "hessian", "milnor_ring", "quotient_ring",
]
