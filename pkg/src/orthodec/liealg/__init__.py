"""Matrix Lie algebras over finite rings and the linear algebra they need."""

from .algebra import (
    AlgebraSpec,
    Matrix,
    StructureConstants,
    ad_matrix,
    bracket,
    in_sp,
    jw_int,
    jw_matrix,
    killing,
    killing_closed,
    killing_coefficient,
    killing_gram,
    phi_compose,
    phi_decompose,
    sp_form,
    standard_basis,
    structure_constants,
)
from .linalg import RowSpace, howell_form, in_row_space, kernel, membership, solve, spans_equal

__all__ = [
    "AlgebraSpec",
    "Matrix",
    "RowSpace",
    "StructureConstants",
    "ad_matrix",
    "bracket",
    "howell_form",
    "in_row_space",
    "in_sp",
    "jw_int",
    "jw_matrix",
    "kernel",
    "killing",
    "killing_closed",
    "killing_coefficient",
    "killing_gram",
    "membership",
    "phi_compose",
    "phi_decompose",
    "solve",
    "sp_form",
    "spans_equal",
    "standard_basis",
    "structure_constants",
]
