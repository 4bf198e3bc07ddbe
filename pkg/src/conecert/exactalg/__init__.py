"""Exact rational linear algebra and certified algebraic-number kernel."""

from .qpoly import QPoly, lagrange_interpolate
from .qmatrix import (
    QMatrix,
    char_poly,
    dot,
    evaluate_poly_at_matrix,
    is_zero_vector,
    min_poly,
    primitive_vector,
    spectral_projector,
    vec_add,
    vec_scale,
    vec_sub,
    vector,
)
from .algnum import (
    AlgebraicNumber,
    factor_rational,
    modulus_compare,
    modulus_equals,
    roots_with_multiplicity,
)

__all__ = [
    "QPoly",
    "QMatrix",
    "AlgebraicNumber",
    "char_poly",
    "min_poly",
    "spectral_projector",
    "evaluate_poly_at_matrix",
    "roots_with_multiplicity",
    "factor_rational",
    "modulus_equals",
    "modulus_compare",
    "lagrange_interpolate",
    "vector",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "dot",
    "is_zero_vector",
    "primitive_vector",
]
