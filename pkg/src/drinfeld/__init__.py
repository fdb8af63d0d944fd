"""
Drinfeld Core Package

Drinfeld F_q[t]-modules over F_q((1/th)) and their analytic data:
exponential and logarithm, torsion towers and periods, Anderson generating
functions, biderivations and quasi-periods, and bounded morphism search.
"""

from .twisted import TwistedPoly
from .module import DrinfeldModule
from .exponential import (
    exp_coeffs,
    log_coeffs,
    exp_coeffs_exact,
    log_coeffs_exact,
    exp_eval,
    log_eval,
    functional_equation_residual,
    log_exp_residual,
    exp_log_roundtrip,
)
from .torsion import (
    Period,
    PeriodData,
    torsion_points,
    torsion_tower,
    torsion_basis,
    period_from_tower,
    lattice_periods,
    carlitz_period_oracle,
    matches_up_to_fq,
)
from .agf import agf, agf_closed_form, agf_functional_residual, agf_residue_check, closed_form_terms
from .quasi import (
    Biderivation,
    standard_basis,
    quasi_coeffs,
    quasi_eval,
    quasi_period,
    quasi_period_agf,
    quasi_routes_report,
    period_matrix,
)
from .morphisms import Morphism, hom_solver, endo_ring_degree

__all__ = [
    'TwistedPoly',
    'DrinfeldModule',
    'exp_coeffs',
    'log_coeffs',
    'exp_coeffs_exact',
    'log_coeffs_exact',
    'exp_eval',
    'log_eval',
    'functional_equation_residual',
    'log_exp_residual',
    'exp_log_roundtrip',
    'Period',
    'PeriodData',
    'torsion_points',
    'torsion_tower',
    'torsion_basis',
    'period_from_tower',
    'lattice_periods',
    'carlitz_period_oracle',
    'matches_up_to_fq',
    'agf',
    'agf_closed_form',
    'agf_functional_residual',
    'agf_residue_check',
    'closed_form_terms',
    'Biderivation',
    'standard_basis',
    'quasi_coeffs',
    'quasi_eval',
    'quasi_period',
    'quasi_period_agf',
    'quasi_routes_report',
    'period_matrix',
    'Morphism',
    'hom_solver',
    'endo_ring_degree',
]
