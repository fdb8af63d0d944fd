"""
Tate Series Package

Truncated series in t over Puiseux coefficients, matrices over them,
twisting, specialization at t = theta and residual reports.
"""

from .tate import TateSeries, TAIL_WINDOW
from .matrix import TateMatrix, ResidualReport, residual, vanishing, puiseux_inverse

__all__ = [
    'TateSeries',
    'TAIL_WINDOW',
    'TateMatrix',
    'ResidualReport',
    'residual',
    'vanishing',
    'puiseux_inverse',
]
