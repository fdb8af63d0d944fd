"""
Puiseux Package

Truncated Puiseux series in 1/theta over finite fields and Newton-polygon
root finding for polynomials with such coefficients.
"""

from .number import PuiseuxNumber, EXACT, working_precision, set_precision
from .newton import NewtonPolygon, Segment, newton_roots, tame_roots, dominant_root, evaluate, taylor_shift

__all__ = [
    'PuiseuxNumber',
    'EXACT',
    'working_precision',
    'set_precision',
    'NewtonPolygon',
    'Segment',
    'newton_roots',
    'tame_roots',
    'dominant_root',
    'evaluate',
    'taylor_shift',
]
