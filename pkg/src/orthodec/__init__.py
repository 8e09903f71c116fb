"""Orthogonal decompositions into abelian Cartan subalgebras over finite rings."""

from .cartan import OdacReport, Submodule, is_abelian, is_cartan, is_nilpotent, normalizer, verify_odac
from .errors import OrthodecError
from .finring import GF, Product, Zm, decompose_local, parse_ring, ring_char
from .liealg import AlgebraSpec, Matrix
from .odac import (Decomposition, construct, construct_sl_pauli, construct_so_even, construct_so_odd,
                   construct_sp_restricted, lift_product, necessary_check_sl, one_factorization,
                   project_decomposition)

__all__ = [
    "AlgebraSpec", "Decomposition", "GF", "Matrix", "OdacReport", "OrthodecError", "Product",
    "Submodule", "Zm", "construct", "construct_sl_pauli", "construct_so_even", "construct_so_odd",
    "construct_sp_restricted", "decompose_local", "is_abelian", "is_cartan", "is_nilpotent",
    "lift_product", "necessary_check_sl", "normalizer", "one_factorization", "parse_ring",
    "project_decomposition", "ring_char", "verify_odac",
]
