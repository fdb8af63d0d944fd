"""
Base Algebra Package

Exact arithmetic over F_q and its extensions, polynomials and rational
functions in one variable, linear algebra and rational reconstruction.
"""

from .fields import FieldTower, FieldElem, gf_arith, conway_field, tables_fingerprint, large_fields
from .polynomials import Poly, RationalFn
from .linalg import rref, rank, nullspace, solve_affine, function_field_rank
from .reconstruct import berlekamp_massey, rational_reconstruct

__all__ = [
    'FieldTower',
    'FieldElem',
    'gf_arith',
    'conway_field',
    'tables_fingerprint',
    'large_fields',
    'Poly',
    'RationalFn',
    'rref',
    'rank',
    'nullspace',
    'solve_affine',
    'function_field_rank',
    'berlekamp_massey',
    'rational_reconstruct',
]
