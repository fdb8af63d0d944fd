"""
Biderivations and Quasi-Periods

A biderivation is fixed by its image of t, delta_t = sum_{j>=1} b_j tau^j.
Its quasi-periodic function F_delta(z) = sum c_m z^(q^m) satisfies
F_delta(a(th) z) - a(th) F_delta(z) = delta_a(exp_rho(z)). Quasi-periods
are the values F_delta(w) at periods w.

Three routes evaluate F_delta(u): the coefficient series, the telescoped
sum of delta_t over the Anderson tower, and (for delta_t = tau^j) the
twisted generating function at t = th.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from .module import DrinfeldModule
from .twisted import TwistedPoly
from .exponential import exp_coeffs, exp_eval
from .agf import agf
from ..algebra.fields import FieldTower
from ..algebra.polynomials import Poly
from ..puiseux.number import PuiseuxNumber
from ..series.matrix import ResidualReport, residual
from ..errors import DrinfeldError, DependentPeriods, InsufficientTruncation

log = logging.getLogger("drinfeld.core")

QUASI_WINDOW = 5


class Biderivation:
    """
    delta: F_q[t] -> tau C{tau}, determined by delta_t.

    Attributes:
        image: TwistedPoly delta_t with zero constant term
        label: Short name used in reports
    """

    def __init__(self, image: TwistedPoly, label: str = ""):
        if image.coeffs and not image.coefficient(0).is_exact_zero():
            raise DrinfeldError("a biderivation image must have zero constant term")
        self.image = image
        self.label = label

    @classmethod
    def inner(cls, rho: DrinfeldModule) -> "Biderivation":
        """delta^(1): t -> th - rho_t, whose quasi-periodic function is z - exp(z)."""
        return cls(TwistedPoly(rho.tower, [0] + [-k for k in rho.kappa]), "delta^(1)")

    @classmethod
    def tau(cls, tower: FieldTower, j: int) -> "Biderivation":
        if j < 1:
            raise DrinfeldError("delta: t -> tau^j needs j >= 1")
        return cls(TwistedPoly.tau(tower, j), f"tau^{j}")

    @classmethod
    def zero(cls, tower: FieldTower) -> "Biderivation":
        return cls(TwistedPoly.zero(tower), "0")

    @property
    def b(self) -> List[PuiseuxNumber]:
        """b_1 .. b_s."""
        return self.image.coeffs[1:]

    def tau_power(self) -> Optional[int]:
        """j when delta_t = tau^j exactly, else None."""
        nz = [i for i, c in enumerate(self.image.coeffs) if not c.is_exact_zero()]
        if len(nz) == 1 and (self.image.coeffs[nz[0]] - 1).is_exact_zero():
            return nz[0]
        return None

    def at(self, rho: DrinfeldModule, a: Poly) -> TwistedPoly:
        """
        delta_a from delta_(t^k) = th delta_(t^(k-1)) + delta_t rho_(t^(k-1)).
        """
        tower = rho.tower.join(a.tower)
        coeffs = a.lift(tower).coeffs()
        theta = PuiseuxNumber.theta(tower)
        rt = rho.rho_t()
        power = TwistedPoly.one(tower)
        current = TwistedPoly.zero(tower)
        acc = TwistedPoly.zero(tower)
        for k in range(coeffs.size):
            if k == 1:
                current = self.image
            elif k > 1:
                current = TwistedPoly(tower, [theta]) * current + self.image * power
            if k >= 1:
                power = power * rt
            if int(coeffs[k]) and k >= 1:
                acc = acc + TwistedPoly(tower, [PuiseuxNumber.const(tower, coeffs[k])]) * current
        return acc

    def __add__(self, other: "Biderivation") -> "Biderivation":
        return Biderivation(self.image + other.image, f"{self.label}+{other.label}")

    def __repr__(self) -> str:
        return f"Biderivation({self.label or self.image!r})"


def standard_basis(rho: DrinfeldModule) -> List[Biderivation]:
    """delta_1 = delta^(1), delta_(i+1): t -> tau^i for i < r."""
    return [Biderivation.inner(rho)] + [Biderivation.tau(rho.tower, i) for i in range(1, rho.rank)]


# ----------------------------------------------------------------------
# the three routes


def quasi_coeffs(rho: DrinfeldModule, delta: Biderivation, I: int) -> List[PuiseuxNumber]:
    """
    c_0 .. c_I with c_0 = 0 and c_m (th^(q^m) - th) = sum_j b_j a_(m-j)^(q^j).
    """
    alpha = exp_coeffs(rho, I)
    tower = rho.tower.join(delta.image.tower)
    theta = PuiseuxNumber.theta(tower)
    b = delta.b
    out = [PuiseuxNumber.zero(tower)]
    for m in range(1, I + 1):
        acc = PuiseuxNumber.zero(tower)
        for j in range(1, min(m, len(b)) + 1):
            bj = b[j - 1]
            if bj.is_exact_zero():
                continue
            acc = acc + bj * alpha[m - j].frob_power(j)
        if acc.is_exact_zero():
            out.append(acc)
            continue
        out.append(acc / (PuiseuxNumber.monomial(tower, 1, tower.q ** m) - theta))
    return out


def quasi_eval(rho: DrinfeldModule, delta: Biderivation, u: PuiseuxNumber, max_terms: int = 48) -> PuiseuxNumber:
    """F_delta(u) = sum c_m u^(q^m), summed until terms fall below the cap."""
    acc = PuiseuxNumber.zero(u.tower)
    prev = None
    coeffs = quasi_coeffs(rho, delta, 8)
    for m in range(1, max_terms):
        if m >= len(coeffs):
            coeffs = quasi_coeffs(rho, delta, min(2 * m, max_terms))
        c = coeffs[m]
        if c.is_exact_zero():
            continue
        term = c * u.frob_power(m)
        shrinking = prev is not None and term.val >= prev
        prev = term.val
        if not acc.is_exact_zero() and shrinking and term.val >= acc.cap:
            return acc
        acc = acc + term
    return acc


def quasi_period(rho: DrinfeldModule, delta: Biderivation, u: PuiseuxNumber,
                 window: int = QUASI_WINDOW, max_terms: int = 96) -> PuiseuxNumber:
    """
    F_delta(u) = sum_m th^m delta_t(exp(u / th^(m+1))).

    Terms are added until `window` consecutive term valuations increase
    and the last reaches the running cap.

    Raises:
        InsufficientTruncation: no certificate within max_terms
    """
    if u.is_exact_zero() or not delta.image.coeffs:
        return PuiseuxNumber.zero(u.tower)
    acc = None
    vals: List[Fraction] = []
    for m in range(max_terms):
        x = exp_eval(rho, u.shift(-(m + 1)))
        term = delta.image(x).shift(m)
        if term.is_exact_zero():
            continue
        vals.append(term.val)
        acc = term if acc is None else acc + term
        recent = vals[-window:]
        if len(recent) == window and all(b > a for a, b in zip(recent, recent[1:])) and recent[-1] >= acc.cap:
            log.debug("quasi_period %s: %d terms, cap %s", delta.label, m + 1, acc.cap)
            return acc
    raise InsufficientTruncation(f"quasi-period sum for {delta.label} not certified in {max_terms} terms")


def quasi_period_agf(rho: DrinfeldModule, j: int, u: PuiseuxNumber, N: int = 24) -> PuiseuxNumber:
    """F_(tau^j)(u) as the twisted generating function at t = th."""
    return agf(rho, u, N).twist(j).eval_at_theta()


def quasi_routes_report(rho: DrinfeldModule, delta: Biderivation, u: PuiseuxNumber, N: int = 24) -> ResidualReport:
    """Agreement of the telescoped sum with the series (and the AGF when delta_t = tau^j)."""
    tele = quasi_period(rho, delta, u)
    j = delta.tau_power()
    other = quasi_period_agf(rho, j, u, N) if j is not None else quasi_eval(rho, delta, u)
    report = residual(f"quasi-period routes agree for {delta.label}", tele, other)
    report.extra["route"] = "agf" if j is not None else "series"
    return report


def semilinearity_report(rho: DrinfeldModule, delta: Biderivation, u: PuiseuxNumber) -> ResidualReport:
    """F_delta(th u) - th F_delta(u) = delta_t(exp(u))."""
    theta = PuiseuxNumber.theta(u.tower)
    lhs = quasi_period(rho, delta, u * theta) - theta * quasi_period(rho, delta, u)
    return residual(f"F(th u) - th F(u) = delta_t(exp u) for {delta.label}", lhs, delta.image(exp_eval(rho, u)))


# ----------------------------------------------------------------------
# period matrix


def period_matrix(rho: DrinfeldModule, periods: Sequence[PuiseuxNumber],
                  basis: Optional[Sequence[Biderivation]] = None,
                  check_relations: bool = True, degree: int = 3) -> List[List[PuiseuxNumber]]:
    """
    P with P_ij = F_(delta_j)(w_i); the first column is w_i itself.

    Raises:
        DependentPeriods: a relation of th-degree <= `degree` links the w_i
    """
    if check_relations and len(periods) > 1:
        from ..relations.finder import find_relations
        certs = find_relations(list(periods), degree)
        if certs:
            raise DependentPeriods(f"periods satisfy {len(certs)} relation(s), e.g. {certs[0]}")
    basis = list(basis) if basis is not None else standard_basis(rho)
    rows = []
    for w in periods:
        row = [w]
        for delta in basis[1:]:
            row.append(quasi_period(rho, delta, w))
        rows.append(row)
    return rows


def first_column_report(rho: DrinfeldModule, periods: Sequence[PuiseuxNumber]) -> ResidualReport:
    """F_(delta^(1))(w) = w for every period."""
    inner = Biderivation.inner(rho)
    return residual("F_delta1(w) = w", [quasi_period(rho, inner, w) for w in periods], list(periods))
