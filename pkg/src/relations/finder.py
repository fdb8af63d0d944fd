"""
Relation Finder

Bounded-height F_q[th]-linear relations among Puiseux values. Each unknown
is an F_q coefficient of beta_s th^j v_i; equating the Puiseux coefficients
of the combination to zero below a cutoff gives one F_q-linear system whose
nullspace is the relation space at height D.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..algebra.fields import FieldTower
from ..algebra.polynomials import Poly, RationalFn
from ..algebra.linalg import nullspace, function_field_rank
from ..puiseux.number import PuiseuxNumber, EXACT, working_precision
from ..errors import InsufficientPrecision

log = logging.getLogger("drinfeld.relations")

SAFETY = 4


@dataclass
class RelationCertificate:
    """
    sum coeffs[i] * v_i has valuation >= residual_valuation.

    Attributes:
        coeffs: One polynomial in th per value, degree <= D
        residual_valuation: Valuation of the directly summed combination
        cutoff: Valuation below which coefficients were matched
        precision: Relative window the values were computed at
    """
    coeffs: List[Poly]
    residual_valuation: Fraction
    cutoff: Fraction
    precision: int
    reverified: Optional[bool] = None

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.coeffs)

    def to_dict(self) -> dict:
        return {
            "coeffs": [repr(c) for c in self.coeffs],
            "residual_valuation": str(self.residual_valuation),
            "cutoff": str(self.cutoff),
            "precision": self.precision,
            "reverified": self.reverified,
        }

    def __str__(self) -> str:
        return "(" + ", ".join(repr(c) for c in self.coeffs) + ")"


def common_frame(values: Sequence[PuiseuxNumber], cutoff: Fraction = None):
    """Joined tower and ramification index of the values (and the cutoff)."""
    tower = values[0].tower
    e = 1
    for v in values:
        tower = tower.join(v.tower)
        e = lcm(e, v.e)
    if cutoff is not None:
        e = lcm(e, Fraction(cutoff).denominator)
    return tower, e


def coefficient_matrix(values: Sequence[PuiseuxNumber], cutoff: Fraction):
    """
    F_q-coordinates of the Puiseux coefficients below `cutoff`, one column
    per value.

    Returns:
        FieldArray over GF(q) of shape (rows, len(values))

    Raises:
        InsufficientPrecision: a value is not known up to the cutoff
    """
    tower, e = common_frame(values, cutoff)
    base = tower.base()
    hi = int(Fraction(cutoff) * e)
    lifted = [v.lift(tower, e) for v in values]
    live = [v for v in lifted if not v.is_zero()]
    if not live:
        return base.GF.Zeros((0, len(values)))
    lo = min(v.n0 for v in live)
    if hi <= lo:
        return base.GF.Zeros((0, len(values)))
    for v in lifted:
        if v.ncap < EXACT and v.ncap < hi:
            raise InsufficientPrecision(f"value known to {v.cap}, cutoff is {cutoff}")
    dense = tower.GF.Zeros((hi - lo, len(values)))
    for c, v in enumerate(lifted):
        if v.is_zero():
            continue
        stop = min(v.n0 + v.coeffs.size, hi)
        dense[v.n0 - lo:stop - lo, c] = v.coeffs[:stop - v.n0]
    M = base.GF.Zeros(((hi - lo) * tower.d, len(values)))
    for c in range(len(values)):
        M[:, c] = tower.coordinates_over_fq(dense[:, c]).reshape(-1)
    return M


def _finite_cap(values: Sequence[PuiseuxNumber]) -> Fraction:
    caps = [v.cap for v in values if not v.is_exact_zero()]
    if not caps:
        raise InsufficientPrecision("every value is an exact zero")
    return min(caps)


def combine(coeffs: Sequence[Poly], values: Sequence[PuiseuxNumber]) -> PuiseuxNumber:
    """sum c_i(th) v_i by direct summation."""
    tower, _ = common_frame(values)
    for c in coeffs:
        tower = tower.join(c.tower)
    acc = PuiseuxNumber.zero(tower)
    for c, v in zip(coeffs, values):
        if c.is_zero():
            continue
        acc = acc + PuiseuxNumber.from_poly(c.lift(tower)) * v
    return acc


def find_relations(values: Sequence[PuiseuxNumber], D: int = 3, safety: int = SAFETY,
                   field_degree: int = 1,
                   recompute: Optional[Callable[[], Sequence[PuiseuxNumber]]] = None) -> List[RelationCertificate]:
    """
    F_q-basis of the relations sum c_i v_i = 0 with deg c_i <= D.

    Args:
        values: The Puiseux values v_1 .. v_m
        D: Height bound on the coefficient degrees in th
        safety: Slots kept between the matched coefficients and the cap
        field_degree: Coefficients range over F_(q^field_degree)[th]
        recompute: Returns the same values; called under a doubled window
            to re-verify each certificate

    Raises:
        InsufficientPrecision: fewer equations than unknowns plus safety
    """
    values = list(values)
    m = len(values)
    tower, _ = common_frame(values)
    coeff_tower = FieldTower.get(tower.p, tower.e, field_degree)
    work = tower.join(coeff_tower)
    cutoff = _finite_cap(values) - D - safety
    betas = coeff_tower.embed(coeff_tower.generator() ** np.arange(field_degree), work)

    products = []
    for v in values:
        for j in range(D + 1):
            shifted = v.lift_tower(work).shift(j)
            for s in range(field_degree):
                products.append(shifted * PuiseuxNumber.const(work, betas[s]))
    M = coefficient_matrix(products, cutoff)
    if M.shape[0] < len(products) + safety:
        raise InsufficientPrecision(
            f"{M.shape[0]} equations for {len(products)} unknowns at height {D}; raise the window")
    log.info("relation search: %d values, height %d, %d equations, cutoff %s", m, D, M.shape[0], cutoff)

    certs = []
    for vec in nullspace(M):
        grid = vec.reshape(m, D + 1, field_degree)
        coeffs = [Poly(coeff_tower, coeff_tower.from_coordinates(grid[i]), 'th') for i in range(m)]
        total = combine(coeffs, values)
        if not total.is_zero() and total.val < cutoff:
            log.warning("kernel vector %s fails direct summation (valuation %s)", coeffs, total.val)
            continue
        certs.append(RelationCertificate(coeffs, total.val, cutoff, PuiseuxNumber.window))
    if recompute is not None and certs:
        with working_precision(2 * PuiseuxNumber.window):
            fine = list(recompute())
            fine_cutoff = _finite_cap(fine) - D - safety
            for cert in certs:
                total = combine(cert.coeffs, fine)
                cert.reverified = total.is_zero() or total.val >= fine_cutoff
    if not certs:
        log.info("no relation at height <= %d, precision %s", D, cutoff)
    return certs


def certificate_rank(certs: Sequence[RelationCertificate]) -> int:
    """Rank over F_q(th) of the coefficient vectors."""
    if not certs:
        return 0
    return function_field_rank([[RationalFn(c) for c in cert.coeffs] for cert in certs])


def proportional(coeffs: Sequence[Poly], expected: Sequence[Poly]) -> bool:
    """True when coeffs is an F_q(th)-multiple of the nonzero vector expected."""
    if len(coeffs) != len(expected):
        return False
    pivot = next(i for i, e in enumerate(expected) if not e.is_zero())
    if coeffs[pivot].is_zero():
        return False
    return all((c * expected[pivot] - coeffs[pivot] * e).is_zero() for c, e in zip(coeffs, expected))


def primitive_relations(certs: Sequence[RelationCertificate]) -> List[RelationCertificate]:
    """Lowest-degree certificates that are independent over F_q(th)."""
    chosen: List[RelationCertificate] = []
    for cert in sorted(certs, key=lambda c: c.degree):
        if certificate_rank(chosen + [cert]) > len(chosen):
            chosen.append(cert)
    return chosen


def kspan_dim(values: Sequence[PuiseuxNumber], D: int = 3, safety: int = SAFETY,
              field_degree: int = 1) -> int:
    """Dimension of the span of the values over F_q(th), at height <= D."""
    certs = find_relations(values, D, safety, field_degree)
    return len(values) - certificate_rank(certs)


def relation_summary(values: Sequence[PuiseuxNumber], D: int = 3, safety: int = SAFETY,
                     field_degree: int = 1) -> dict:
    """JSON-ready outcome; an empty search is labelled, never called independence."""
    certs = find_relations(values, D, safety, field_degree)
    cutoff = _finite_cap(values) - D - safety
    dim = len(values) - certificate_rank(certs)
    label = (f"{len(certs)} relation(s) at height <= {D}" if certs
             else f"no relation at height <= {D}, precision {cutoff}")
    return {
        "values": len(values),
        "height": D,
        "cutoff": str(cutoff),
        "span_dimension": dim,
        "label": label,
        "certificates": [c.to_dict() for c in primitive_relations(certs)],
    }
