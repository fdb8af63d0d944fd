"""
Endomorphisms on the t-Motive

An endomorphism b of rho acts on M_rho through b* = sum c_i^(-i) sigma^i.
In the basis m_1, sigma m_1, ..., sigma^(r-1) m_1 its matrix E satisfies
E^(-1) Phi = Phi E, and eta = Psi^(-1) E Psi is fixed by twisting, hence a
matrix of rational functions in t over F_q.
"""

import logging
from math import ceil
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from .matrices import TMotiveData
from ..drinfeld.module import DrinfeldModule
from ..drinfeld.morphisms import Morphism, hom_solver, _differential_rank
from ..drinfeld.twisted import TwistedPoly
from ..puiseux.number import PuiseuxNumber, EXACT
from ..series.tate import TateSeries
from ..series.matrix import TateMatrix, ResidualReport, residual, vanishing
from ..algebra.polynomials import RationalFn
from ..algebra.reconstruct import rational_reconstruct
from ..relations.finder import RelationCertificate, find_relations
from ..errors import ReconstructFailed, InsufficientPrecision, InsufficientData, NoMatch

log = logging.getLogger("drinfeld.tmotive")


def _twisted(b: Union[Morphism, TwistedPoly]) -> TwistedPoly:
    return b.twisted() if isinstance(b, Morphism) else b


def module_matrix_of_endo(b: Union[Morphism, TwistedPoly], phi: TateMatrix) -> TateMatrix:
    """
    Rows E_1 = sum c_i^(-i) R_i with R_0 = e_1, R_(i+1) = R_i^(-1) Phi,
    then E_(j+1) = E_j^(-1) Phi.
    """
    r, N = phi.shape[0], phi.N
    bt = _twisted(b)
    tower = phi.tower.join(bt.tower)
    zero = TateSeries.zero(tower, N)
    R = TateMatrix([[TateSeries.one(tower, N)] + [zero] * (r - 1)])
    first = TateMatrix([[zero] * r])
    for c in bt.star():
        if not c.is_exact_zero():
            first = first + R.scale(c)
        R = R.twist(-1) @ phi
    rows = [first.rows[0]]
    current = first
    for _ in range(1, r):
        current = current.twist(-1) @ phi
        rows.append(current.rows[0])
    return TateMatrix(rows)


def commutation_report(E: TateMatrix, phi: TateMatrix) -> ResidualReport:
    return residual("E^(-1) Phi = Phi E", E.twist(-1) @ phi, phi @ E)


def _fq_sequence(series: TateSeries, base):
    """Coefficients of a twist-fixed series as F_q elements."""
    out = base.GF.Zeros(series.N)
    for m, c in enumerate(series.coeffs):
        if c.is_zero():
            continue
        if not c.in_fq_const():
            raise ReconstructFailed(f"coefficient of t^{m} is not an F_q constant: {c!r}")
        out[m] = c.tower.restrict(c.lead(), base)
    return out


def reconstruct_entry(series: TateSeries, degree_cap: int) -> RationalFn:
    """
    Fit P/Q with degrees <= degree_cap on a prefix and confirm the fit on
    the remaining coefficients.

    Raises:
        ReconstructFailed: no fit, or the fit disagrees out of sample
    """
    base = series.tower.base()
    seq = _fq_sequence(series, base)
    window = 2 * degree_cap + 2
    try:
        f = rational_reconstruct(seq[:window], degree_cap, base, 't')
    except (InsufficientData, NoMatch) as exc:
        raise ReconstructFailed(str(exc)) from exc
    if not np.array_equal(np.asarray(f.expand(seq.size)), np.asarray(seq)):
        raise ReconstructFailed(f"{f!r} disagrees with the expansion beyond {window} terms")
    return f


@dataclass
class EtaCertificate:
    """eta of one endomorphism with its certificates."""
    b: TwistedPoly
    E: TateMatrix
    eta: TateMatrix
    rational: List[List[RationalFn]]
    e11_at_theta: PuiseuxNumber
    relation: Optional[RelationCertificate]
    reports: List[ResidualReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.reports)

    def to_dict(self) -> dict:
        return {
            "b": repr(self.b),
            "eta": [[repr(f) for f in row] for row in self.rational],
            "e11_at_theta": repr(self.e11_at_theta),
            "relation": self.relation.to_dict() if self.relation else None,
            "reports": [r.to_dict() for r in self.reports],
        }


def eta_of_endo(rho: DrinfeldModule, b: Union[Morphism, TwistedPoly], data: TMotiveData,
                degree_cap: Optional[int] = None) -> EtaCertificate:
    """
    eta = Psi^(-1) E Psi, certified by twist-invariance, rational
    reconstruction of each entry, E_i1(th) = 0 for i >= 2, E_11(th) = b_0
    and a relation putting E_11(th) in K_rho.

    Raises:
        ReconstructFailed: an entry of eta has no rational form within the cap
    """
    if data.psi is None:
        raise InsufficientPrecision("eta needs Psi; the t-motive data is in fallback mode")
    cap = degree_cap if degree_cap is not None else 2 * rho.rank
    bt = _twisted(b)
    E = module_matrix_of_endo(bt, data.phi)
    eta = data.psi_inverse @ E @ data.psi
    reports = [commutation_report(E, data.phi), residual("eta^(-1) = eta", eta.twist(-1), eta)]
    rational = [[reconstruct_entry(x, cap) for x in row] for row in eta.rows]

    at_theta = E.eval_at_theta()
    if rho.rank > 1:
        reports.append(vanishing("E_i1(th) = 0 for i >= 2", [row[0] for row in at_theta[1:]]))
    e11 = at_theta[0][0]
    b0 = bt.coefficient(0)
    reports.append(residual("E_11(th) = b_0", e11, b0))
    relation, relation_report = _e11_relation(b, bt, e11)
    reports.append(relation_report)
    log.info("eta of %r: failed checks %s", bt, [r.identity for r in reports if not r])
    return EtaCertificate(bt, E, eta, rational, e11, relation, reports)


def _e11_relation(b: Union[Morphism, TwistedPoly], bt: TwistedPoly, e11: PuiseuxNumber):
    """
    Certificate that E_11(th) lies in K_rho: a relation c_1 E_11(th) + c_0 = 0
    over F_(q^d)[th], at the degree of the constant term of b.
    """
    identity = "E_11(th) in K_rho"
    if isinstance(b, Morphism):
        D, d = max(b.constant_term.degree, 0), b.tower.d
    else:
        b0 = bt.coefficient(0)
        D = 0 if b0.is_zero() else max(ceil(-b0.val), 0)
        d = bt.tower.d
    try:
        certs = find_relations([e11, PuiseuxNumber.one(e11.tower)], D, field_degree=d)
    except InsufficientPrecision as exc:
        return None, ResidualReport(identity, 0.0, 0.0, False, 0, f"relation search: {exc}")
    if not certs:
        return None, ResidualReport(identity, 0.0, 0.0, False, 0, f"no relation at height <= {D}")
    cert = certs[0]
    return cert, ResidualReport(identity, float(min(cert.residual_valuation, EXACT)), float(cert.cutoff), True,
                                1, f"relation {cert}")


def endomorphism_generators(rho: DrinfeldModule, B: Optional[int] = None,
                            d: Optional[int] = None) -> List[Morphism]:
    """
    Bounded endomorphisms whose differentials are independent over F_q(th),
    taken greedily by tau-degree.
    """
    B = B if B is not None else 2 * rho.rank
    d = d if d is not None else rho.rank
    found = sorted(hom_solver(rho, rho, B, d), key=lambda m: (m.degree, m.constant_term.degree))
    chosen: List[Morphism] = []
    for m in found:
        if _differential_rank(chosen + [m]) > len(chosen):
            chosen.append(m)
    return chosen


def eta_generators(rho: DrinfeldModule, data: TMotiveData, endos: Sequence[Morphism],
                   degree_cap: Optional[int] = None) -> List[EtaCertificate]:
    return [eta_of_endo(rho, b, data, degree_cap) for b in endos]
