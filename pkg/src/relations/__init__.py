"""
Relations Package

Bounded-height linear relation search among Puiseux values over F_q[th].
"""

from .finder import (
    RelationCertificate,
    coefficient_matrix,
    combine,
    find_relations,
    certificate_rank,
    primitive_relations,
    proportional,
    kspan_dim,
    relation_summary,
)

__all__ = [
    'RelationCertificate',
    'coefficient_matrix',
    'combine',
    'find_relations',
    'certificate_rank',
    'primitive_relations',
    'proportional',
    'kspan_dim',
    'relation_summary',
]
