"""
Extension Blocks

For u with alpha = exp_rho(u), the extension X_alpha of the trivial motive
by M_rho is represented by Phi_alpha = [[Phi, 0], [h^T, 1]] and trivialized
by Psi_alpha = [[Psi, 0], [g^T Psi, 1]]. Push-outs along endomorphisms
multiply the bottom row by E; Baer sums add bottom rows.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .matrices import TMotiveData, _kappa
from ..drinfeld.module import DrinfeldModule
from ..drinfeld.agf import agf
from ..drinfeld.exponential import exp_eval
from ..puiseux.number import PuiseuxNumber
from ..series.tate import TateSeries
from ..series.matrix import TateMatrix, ResidualReport, residual
from ..relations.finder import coefficient_matrix
from ..algebra.fields import FieldTower
from ..algebra.linalg import solve_affine
from ..errors import ShapeMismatch, InsufficientPrecision

log = logging.getLogger("drinfeld.tmotive")

Row = List[TateSeries]


@dataclass
class ExtBlock:
    """Extension data of one point u."""
    u: PuiseuxNumber
    alpha: PuiseuxNumber
    f: TateSeries
    h: Row
    g: Row
    phi_alpha: TateMatrix
    psi_alpha: Optional[TateMatrix]
    reports: List[ResidualReport] = field(default_factory=list)

    def g_first_at_theta(self) -> PuiseuxNumber:
        """g_1(th) = u - alpha."""
        return self.g[0].eval_at_theta()


def bordered(top: TateMatrix, bottom: Row) -> TateMatrix:
    """[[top, 0], [bottom, 1]]."""
    n, m = top.shape
    if len(bottom) != m:
        raise ShapeMismatch(f"bottom row of length {len(bottom)} under a {n}x{m} block")
    tower, N = top.tower, top.N
    rows = [list(r) + [TateSeries.zero(tower, N)] for r in top.rows]
    rows.append(list(bottom) + [TateSeries.one(tower, N)])
    return TateMatrix(rows)


def h_row(rho: DrinfeldModule, alpha: PuiseuxNumber, N: int) -> Row:
    """h_alpha^T = (alpha, 0, ..., 0)."""
    return [TateSeries.constant(alpha, N)] + [TateSeries.zero(rho.tower, N)] * (rho.rank - 1)


def g_row(rho: DrinfeldModule, f: TateSeries, alpha: PuiseuxNumber) -> Row:
    """
    g_1 = -(t - th) f - alpha and, for k >= 2,
    g_k = -sum_{s=k}^{r} k_s^(-(k-1)) f^(s-k+1), with k_r = 1.
    """
    r, N = rho.rank, f.N
    first = -(TateSeries.t_minus_theta(f.tower, N) * f) - alpha
    row = [first]
    for k in range(2, r + 1):
        acc = TateSeries.zero(f.tower, N)
        for s in range(k, r + 1):
            acc = acc + f.twist(s - k + 1) * _kappa(rho, s).frob_power(-(k - 1))
        row.append(-acc)
    return row


def _as_column(row: Row) -> TateMatrix:
    return TateMatrix([[x] for x in row])


def _as_row(row: Row) -> TateMatrix:
    return TateMatrix([list(row)])


def build_ext(rho: DrinfeldModule, u: PuiseuxNumber, data: TMotiveData) -> ExtBlock:
    """
    Extension block of u on top of the t-motive data, with residuals of
    Phi^T g^(-1) = g + h and Psi_alpha^(-1) = Phi_alpha Psi_alpha.
    """
    N = data.N
    alpha = exp_eval(rho, u)
    f = agf(rho, u, N)
    h = h_row(rho, alpha, N)
    g = g_row(rho, f, alpha)
    phi_alpha = bordered(data.phi, h)
    block = ExtBlock(u, alpha, f, h, g, phi_alpha, None)
    gcol = _as_column(g)
    block.reports.append(residual("Phi^T g^(-1) = g + h", data.phi.transpose() @ gcol.twist(-1),
                                  gcol + _as_column(h)))
    block.reports.append(residual("g_1(th) = u - alpha", block.g_first_at_theta(), u - alpha))
    if data.psi is not None:
        bottom = (_as_row(g) @ data.psi).rows[0]
        psi_alpha = bordered(data.psi, bottom)
        block.psi_alpha = psi_alpha
        block.reports.append(residual("Psi_alpha^(-1) = Phi_alpha Psi_alpha",
                                      psi_alpha.twist(-1), phi_alpha @ psi_alpha))
    log.info("extension block for u (val %s): alpha val %s", u.val, alpha.val)
    return block


def pushout_row(v_row: Row, E: TateMatrix) -> Row:
    """v E for the push-out of an extension along an endomorphism."""
    if len(v_row) != E.shape[0]:
        raise ShapeMismatch(f"row of length {len(v_row)} against a {E.shape} matrix")
    return (_as_row(v_row) @ E).rows[0]


def baer_sum(*rows: Row) -> Row:
    if not rows:
        raise ShapeMismatch("Baer sum of no extensions")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ShapeMismatch("Baer sum of rows of different lengths")
    out = list(rows[0])
    for r in rows[1:]:
        out = [a + b for a, b in zip(out, r)]
    return out


def build_phi_n(data: TMotiveData, blocks: Sequence[ExtBlock], endos: Sequence[TateMatrix]) -> TateMatrix:
    """Phi_N with bottom row sum h_i^T E_i."""
    rows = [pushout_row(b.h, E) for b, E in zip(blocks, endos)]
    return bordered(data.phi, baer_sum(*rows))


def build_psi_n(data: TMotiveData, blocks: Sequence[ExtBlock],
                endos: Sequence[TateMatrix]) -> Tuple[TateMatrix, ResidualReport]:
    """Psi_N with bottom row sum g_i^T E_i Psi, and its difference-equation residual."""
    if data.psi is None:
        raise InsufficientPrecision("Psi is unavailable in fallback mode")
    rows = [(_as_row(pushout_row(b.g, E)) @ data.psi).rows[0] for b, E in zip(blocks, endos)]
    psi_n = bordered(data.psi, baer_sum(*rows))
    phi_n = build_phi_n(data, blocks, endos)
    return psi_n, residual("Psi_N^(-1) = Phi_N Psi_N", psi_n.twist(-1), phi_n @ psi_n)


# ----------------------------------------------------------------------
# triviality witnesses


@dataclass
class TrivialityWitness:
    """
    gamma with gamma^(-1) Phi - gamma = v, searched over entries
    sum c beta_s th^a t^b with bounded degrees. Absence is evidence only.
    """
    found: bool
    gamma: Optional[Row] = None
    gamma_first_at_theta: Optional[PuiseuxNumber] = None
    report: Optional[ResidualReport] = None
    unknowns: int = 0
    equations: int = 0

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "gamma_first_at_theta": repr(self.gamma_first_at_theta) if self.found else None,
            "report": self.report.to_dict() if self.report else None,
            "unknowns": self.unknowns,
            "equations": self.equations,
        }


def _coboundary(gamma: Row, phi: TateMatrix) -> Row:
    g = _as_row(gamma)
    return (g.twist(-1) @ phi - g).rows[0]


def search_triviality_witness(rho: DrinfeldModule, v_row: Row, phi: TateMatrix,
                              theta_degree: int = 2, t_degree: int = 1,
                              field_degree: Optional[int] = None, safety: int = 4) -> TrivialityWitness:
    """
    Best-effort search for gamma in F_(q^d)[th, t]^r solving
    gamma^(-1) Phi - gamma = v; the map is F_q-linear in gamma.
    """
    r, N = rho.rank, phi.N
    d = field_degree if field_degree is not None else rho.tower.d
    tower = rho.tower.join(FieldTower.get(rho.tower.p, rho.tower.e, d))
    for x in v_row:
        tower = tower.join(x.tower)
    betas = tower.generator() ** np.arange(tower.d)
    basis: List[Row] = []
    for k in range(r):
        for a in range(theta_degree + 1):
            for b in range(t_degree + 1):
                for s in range(tower.d):
                    entry = TateSeries.t_power(tower, b, N, PuiseuxNumber.monomial(tower, betas[s], a))
                    row = [TateSeries.zero(tower, N) for _ in range(r)]
                    row[k] = entry
                    basis.append(row)
    images = [_coboundary(gamma, phi) for gamma in basis]

    blocks, rhs = [], []
    for k in range(r):
        for m in range(N):
            column = [img[k].coeffs[m] for img in images] + [v_row[k].coeffs[m]]
            if all(c.is_exact_zero() for c in column):
                continue
            caps = [c.cap for c in column if not c.is_exact_zero()]
            M = coefficient_matrix(column, min(caps) - safety)
            if M.shape[0] == 0:
                continue
            blocks.append(M[:, :-1])
            rhs.append(M[:, -1])
    base = tower.base()
    if not blocks:
        return TrivialityWitness(True, [TateSeries.zero(tower, N)] * r,
                                 PuiseuxNumber.zero(tower), unknowns=len(basis))
    A = base.GF(np.vstack([np.asarray(b) for b in blocks]))
    y = base.GF(np.concatenate([np.asarray(b) for b in rhs]))
    x = solve_affine(A, y)
    if x is None:
        log.info("no triviality witness with deg_th <= %d, deg_t <= %d", theta_degree, t_degree)
        return TrivialityWitness(False, unknowns=len(basis), equations=A.shape[0])
    gamma = [TateSeries.zero(tower, N) for _ in range(r)]
    for coeff, row in zip(x, basis):
        if int(coeff) == 0:
            continue
        gamma = [g + e * PuiseuxNumber.const(tower, base.embed(coeff, tower)) for g, e in zip(gamma, row)]
    report = residual("gamma^(-1) Phi - gamma = v", _coboundary(gamma, phi), v_row)
    return TrivialityWitness(True, gamma, gamma[0].eval_at_theta(), report, len(basis), A.shape[0])
