"""
t-Motive Matrices

Phi (multiplication by sigma on M_rho), Theta and V, the matrix Upsilon of
twisted Anderson generating functions, and the rigid analytic
trivialization Psi = V^(-1) (Upsilon^(1))^(-1) with its residual checks.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from ..drinfeld.module import DrinfeldModule
from ..drinfeld.agf import agf
from ..drinfeld.quasi import Biderivation, quasi_period
from ..puiseux.number import PuiseuxNumber
from ..series.tate import TateSeries
from ..series.matrix import TateMatrix, ResidualReport, residual, puiseux_inverse
from ..errors import NotNormalized, SingularUpsilon, NonUnitConstantTerm

log = logging.getLogger("drinfeld.tmotive")


def _require_normalized(rho: DrinfeldModule):
    if not rho.normalized:
        raise NotNormalized(f"k_r = {rho.kappa[-1]!r}; normalize the module first")


def _kappa(rho: DrinfeldModule, i: int) -> PuiseuxNumber:
    """k_i with k_r = 1 and k_i = 0 past the rank."""
    if i == rho.rank:
        return PuiseuxNumber.one(rho.tower)
    return rho.kappa_ext(i)


def constant_matrix(rows: Sequence[Sequence[PuiseuxNumber]], N: int) -> TateMatrix:
    return TateMatrix([[TateSeries.constant(c, N) for c in r] for r in rows])


def build_phi(rho: DrinfeldModule, N: int) -> TateMatrix:
    """
    Companion matrix: rows e_2 .. e_r, then
    ((t - th), -k_1^(-1), ..., -k_(r-1)^(-(r-1))).
    """
    _require_normalized(rho)
    r, tower = rho.rank, rho.tower
    rows = []
    for i in range(r - 1):
        rows.append([TateSeries.one(tower, N) if j == i + 1 else TateSeries.zero(tower, N) for j in range(r)])
    last = [TateSeries.t_minus_theta(tower, N)]
    for i in range(1, r):
        last.append(TateSeries.constant(-rho.kappa[i - 1].frob_power(-i), N))
    rows.append(last)
    return TateMatrix(rows)


def phi_det_report(rho: DrinfeldModule, N: int) -> ResidualReport:
    """det Phi = (-1)^(r-1) (t - th)."""
    expected = TateSeries.t_minus_theta(rho.tower, N)
    if rho.rank % 2 == 0:
        expected = -expected
    return residual("det Phi = +-(t - th)", build_phi(rho, N).det(), expected)


def build_theta(rho: DrinfeldModule, N: int) -> TateMatrix:
    """Row 1 = (0, ..., 0, t - th); row i+1 = e_i in the first r-1 columns, -k_i last."""
    _require_normalized(rho)
    r, tower = rho.rank, rho.tower
    zero = TateSeries.zero(tower, N)
    first = [zero] * (r - 1) + [TateSeries.t_minus_theta(tower, N)]
    rows = [first]
    for i in range(1, r):
        row = [TateSeries.one(tower, N) if j == i - 1 else zero for j in range(r - 1)]
        row.append(TateSeries.constant(-rho.kappa[i - 1], N))
        rows.append(row)
    return TateMatrix(rows)


def v_entries(rho: DrinfeldModule) -> List[List[PuiseuxNumber]]:
    """V_ij = k_(i+j-1)^(-(j-1)) (1-based), with k_r = 1."""
    r = rho.rank
    return [[_kappa(rho, i + j + 1).frob_power(-j) for j in range(r)] for i in range(r)]


def build_v(rho: DrinfeldModule, N: int) -> TateMatrix:
    _require_normalized(rho)
    return constant_matrix(v_entries(rho), N)


def build_upsilon(rho: DrinfeldModule, periods: Sequence[PuiseuxNumber], N: int) -> TateMatrix:
    """
    Upsilon_ij = f_i^(j-1) for the generating functions f_i of the periods.

    Raises:
        SingularUpsilon: det Upsilon is zero to precision
    """
    _require_normalized(rho)
    gens = [agf(rho, w, N) for w in periods]
    upsilon = TateMatrix([[f.twist(j) for j in range(rho.rank)] for f in gens])
    if upsilon.det().is_zero():
        raise SingularUpsilon("det Upsilon vanishes to precision")
    return upsilon


def v_phi_report(rho: DrinfeldModule, N: int) -> ResidualReport:
    """V^(-1) Phi = Theta V, entrywise in t."""
    V = build_v(rho, N)
    return residual("V^(-1) Phi = Theta V", V.twist(-1) @ build_phi(rho, N), build_theta(rho, N) @ V)


def upsilon_theta_report(rho: DrinfeldModule, upsilon: TateMatrix) -> ResidualReport:
    """Upsilon^(1) = Upsilon Theta."""
    return residual("Upsilon^(1) = Upsilon Theta", upsilon.twist(1), upsilon @ build_theta(rho, upsilon.N))


def upsilon_at_theta_report(rho: DrinfeldModule, upsilon: TateMatrix,
                            periods: Sequence[PuiseuxNumber]) -> ResidualReport:
    """
    At t = th, Upsilon^(1)_ij = F_(tau^j)(w_i) for j < r and the last column
    is -w_i - sum_s k_s F_(tau^s)(w_i).
    """
    r = rho.rank
    twisted = upsilon.twist(1)
    lhs, rhs = [], []
    for i, w in enumerate(periods):
        quasi = [quasi_period(rho, Biderivation.tau(rho.tower, s), w) for s in range(1, r)]
        for j in range(1, r):
            lhs.append(twisted[i, j - 1].eval_at_theta())
            rhs.append(quasi[j - 1])
        last = -w
        for s in range(1, r):
            last = last - rho.kappa[s - 1] * quasi[s - 1]
        lhs.append(twisted[i, r - 1].eval_at_theta())
        rhs.append(last)
    return residual("Upsilon^(1)(th) against quasi-periods", lhs, rhs)


@dataclass
class TMotiveData:
    """Phi, Theta, V, Upsilon and Psi of one module, with residual reports."""
    phi: TateMatrix
    theta: TateMatrix
    v: TateMatrix
    upsilon: TateMatrix
    psi: Optional[TateMatrix]
    N: int
    reports: List[ResidualReport] = field(default_factory=list)
    fallback: bool = False

    @property
    def psi_inverse(self) -> TateMatrix:
        """Psi^(-1) = Upsilon^(1) V."""
        return self.upsilon.twist(1) @ self.v

    def summary(self) -> Dict[str, object]:
        return {
            "N": self.N,
            "rank": self.phi.shape[0],
            "fallback": self.fallback,
            "reports": [r.to_dict() for r in self.reports],
        }


def build_psi(rho: DrinfeldModule, periods: Sequence[PuiseuxNumber], N: int) -> TMotiveData:
    """
    Psi = V^(-1) (Upsilon^(1))^(-1) and the residual of Psi^(-1) = Phi Psi.

    When Upsilon^(1) has a singular constant term the two equivalent
    identities V^(-1) Phi = Theta V and Upsilon^(1) = Upsilon Theta are
    reported instead and `fallback` is set.
    """
    phi = build_phi(rho, N)
    theta = build_theta(rho, N)
    V = build_v(rho, N)
    upsilon = build_upsilon(rho, periods, N)
    data = TMotiveData(phi, theta, V, upsilon, None, N)
    data.reports.append(v_phi_report(rho, N))
    data.reports.append(upsilon_theta_report(rho, upsilon))
    try:
        v_inv = constant_matrix(puiseux_inverse(v_entries(rho)), N)
        psi = v_inv @ upsilon.twist(1).inv()
    except NonUnitConstantTerm as exc:
        log.warning("Upsilon^(1) is not invertible term by term (%s); using the equivalent identities", exc)
        data.fallback = True
        return data
    data.psi = psi
    data.reports.append(residual("Psi^(-1) = Phi Psi", psi.twist(-1), phi @ psi))
    return data
