"""
Galois Group Package

Centralizer dimension of the endomorphism image in Mat_r(F_q(t)) and the
transcendence-degree predictions it is compared with.
"""

from .centralizer import EndoAlgebra, centralizer_dim, commutator_system, generated_dimension, identity_matrix
from .predictions import GaloisReport, galois_report, predicted_trdeg_periods, predicted_trdeg_logs

__all__ = [
    'EndoAlgebra',
    'centralizer_dim',
    'commutator_system',
    'generated_dimension',
    'identity_matrix',
    'GaloisReport',
    'galois_report',
    'predicted_trdeg_periods',
    'predicted_trdeg_logs',
]
