"""
t-Motive Package

Phi, Theta, V, Upsilon and the rigid analytic trivialization Psi of a
normalized Drinfeld module; extension blocks of logarithm points with
push-outs and Baer sums; eta matrices of endomorphisms.
"""

from .matrices import (
    TMotiveData,
    build_phi,
    build_theta,
    build_v,
    build_upsilon,
    build_psi,
    phi_det_report,
    v_phi_report,
    upsilon_theta_report,
    upsilon_at_theta_report,
)
from .extensions import (
    ExtBlock,
    TrivialityWitness,
    build_ext,
    pushout_row,
    baer_sum,
    build_phi_n,
    build_psi_n,
    search_triviality_witness,
)
from .endomorphisms import (
    EtaCertificate,
    module_matrix_of_endo,
    eta_of_endo,
    endomorphism_generators,
    eta_generators,
)

__all__ = [
    'TMotiveData',
    'build_phi',
    'build_theta',
    'build_v',
    'build_upsilon',
    'build_psi',
    'phi_det_report',
    'v_phi_report',
    'upsilon_theta_report',
    'upsilon_at_theta_report',
    'ExtBlock',
    'TrivialityWitness',
    'build_ext',
    'pushout_row',
    'baer_sum',
    'build_phi_n',
    'build_psi_n',
    'search_triviality_witness',
    'EtaCertificate',
    'module_matrix_of_endo',
    'eta_of_endo',
    'endomorphism_generators',
    'eta_generators',
]
