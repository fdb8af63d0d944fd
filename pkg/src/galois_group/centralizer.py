"""
Centralizer of the Endomorphism Algebra

The image of End(rho) in Mat_r(F_q(t)) is given by generator matrices
(reconstructed eta's or exact E's). Its centralizer {X : Xg = gX} is the
Lie algebra of the motivic Galois group, so its dimension is the predicted
transcendence degree of the period matrix.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence

from ..algebra.fields import FieldTower
from ..algebra.polynomials import RationalFn
from ..algebra.linalg import function_field_rank
from ..errors import ShapeMismatch

log = logging.getLogger("drinfeld.galois")

Matrix = List[List[RationalFn]]


def identity_matrix(tower: FieldTower, r: int) -> Matrix:
    return [[RationalFn.from_int(tower, int(i == j), 't') for j in range(r)] for i in range(r)]


def _is_identity(g: Matrix) -> bool:
    r = len(g)
    return all((g[i][j] - int(i == j)).is_zero() for i in range(r) for j in range(r))


@dataclass
class EndoAlgebra:
    """
    Generators of the endomorphism image in Mat_r(F_q(t)); the identity is
    always included.
    """
    gens: List[Matrix]
    size: int
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.size or any(len(row) != self.size for row in g):
                raise ShapeMismatch(f"generator is not {self.size}x{self.size}")
        if self.gens and not any(_is_identity(g) for g in self.gens):
            self.gens.insert(0, identity_matrix(self.gens[0][0][0].tower, self.size))
            self.labels.insert(0, "1")

    @classmethod
    def from_etas(cls, certs) -> "EndoAlgebra":
        """From EtaCertificate objects."""
        gens = [cert.rational for cert in certs]
        return cls(gens, len(gens[0]), [repr(cert.b) for cert in certs])

    @classmethod
    def trivial(cls, tower: FieldTower, r: int) -> "EndoAlgebra":
        return cls([identity_matrix(tower, r)], r, ["1"])


def commutator_system(gens: Sequence[Matrix]) -> List[List[RationalFn]]:
    """
    Rows of the linear conditions (Xg - gX)_ij = 0 in the r^2 unknowns X_ab
    (column a*r + b); the coefficient of X_ab is [a = i] g_bj - [b = j] g_ia.
    """
    r = len(gens[0])
    rows = []
    for g in gens:
        zero = g[0][0] * 0
        for i in range(r):
            for j in range(r):
                row = []
                for a in range(r):
                    for b in range(r):
                        c = zero
                        if a == i:
                            c = c + g[b][j]
                        if b == j:
                            c = c - g[i][a]
                        row.append(c)
                rows.append(row)
    return rows


def centralizer_dim(algebra: EndoAlgebra) -> int:
    """Dimension over F_q(t) of the centralizer of the generators."""
    r = algebra.size
    rk = function_field_rank(commutator_system(algebra.gens))
    log.info("centralizer of %d generators in Mat_%d: dimension %d", len(algebra.gens), r, r * r - rk)
    return r * r - rk


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    r = len(a)
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = a[i][0] * b[0][j]
            for k in range(1, r):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def generated_dimension(algebra: EndoAlgebra, degree: int = 2) -> int:
    """F_q(t)-dimension of the span of products of at most `degree` generators."""
    words = list(algebra.gens)
    layer = list(algebra.gens)
    for _ in range(degree - 1):
        layer = [_matmul(a, g) for a in layer for g in algebra.gens]
        words.extend(layer)
    return function_field_rank([[x for row in w for x in row] for w in words])
