"""
Torsion Towers and Periods

t-power torsion towers rho_t(x_(m+1)) = x_m, rho_t(x_0) = 0, and the periods
they produce through omega = th^(m+1) log_rho(x_m). Rank r modules get r
towers seeded at F_q-independent t-torsion points.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional

from .module import DrinfeldModule
from .exponential import exp_eval, log_eval
from ..puiseux.number import PuiseuxNumber
from ..puiseux.newton import newton_roots, dominant_root
from ..algebra.fields import FieldTower
from ..series.matrix import ResidualReport, vanishing, residual
from ..errors import TowerDead, LogDivergence, DrinfeldError

log = logging.getLogger("drinfeld.core")


@dataclass
class Period:
    """A period together with the tower level it was read off."""
    omega: PuiseuxNumber
    level: int
    tower: List[PuiseuxNumber]
    exp_check: ResidualReport
    stability: Optional[ResidualReport] = None


@dataclass
class PeriodData:
    """
    Lattice generators w_1 .. w_r of a Drinfeld module.

    Attributes:
        periods: One Period per seed
        seeds: The t-torsion points the towers start from
        torsion_count: Number of nonzero t-torsion points found (q^r - 1 when complete)
        flags: Sanity warnings raised while building the basis
    """
    periods: List[Period]
    seeds: List[PuiseuxNumber]
    torsion_count: int
    flags: List[str] = field(default_factory=list)
    matrix: Optional[list] = None

    @property
    def omegas(self) -> List[PuiseuxNumber]:
        return [p.omega for p in self.periods]


def _rho_t_coeffs(rho: DrinfeldModule, constant: PuiseuxNumber) -> List[PuiseuxNumber]:
    """Dense coefficients of rho_t(x) + constant as a polynomial in x."""
    q, r = rho.q, rho.rank
    zero = PuiseuxNumber.zero(rho.tower)
    coeffs = [zero] * (q ** r + 1)
    coeffs[0] = constant
    coeffs[1] = PuiseuxNumber.theta(rho.tower)
    for j, k in enumerate(rho.kappa, start=1):
        coeffs[q ** j] = coeffs[q ** j] + k
    return coeffs


def torsion_points(rho: DrinfeldModule) -> List[PuiseuxNumber]:
    """Nonzero roots of rho_t(x) / x, in newton_roots order."""
    full = _rho_t_coeffs(rho, PuiseuxNumber.zero(rho.tower))
    roots = newton_roots(full[1:])
    points = []
    for x, mult in roots:
        points.extend([x] * mult)
    log.info("found %d nonzero t-torsion points (expected %d)", len(points), rho.q ** rho.rank - 1)
    return points


def torsion_tower(rho: DrinfeldModule, depth: int, branch: int = 0,
                  seed: Optional[PuiseuxNumber] = None) -> List[PuiseuxNumber]:
    """
    x_0 .. x_depth with rho_t(x_0) = 0 and rho_t(x_(m+1)) = x_m.

    Args:
        depth: Last level to compute
        branch: Index of x_0 among the nonzero t-torsion points
        seed: Use this x_0 instead of the branch selector

    Raises:
        TowerDead: no nonzero t-torsion point exists to precision
    """
    if seed is None:
        points = torsion_points(rho)
        if not points:
            raise TowerDead("rho_t(x) = 0 has no nonzero root to precision")
        seed = points[branch % len(points)]
    if seed.is_zero():
        raise TowerDead("tower seed is zero to precision")
    tower = [seed]
    for m in range(1, depth + 1):
        x = dominant_root(_rho_t_coeffs(rho, -tower[-1]))
        if x.is_zero():
            raise TowerDead(f"level {m} of the torsion tower is zero to precision")
        log.debug("tower level %d: valuation %s", m, x.val)
        tower.append(x)
    return tower


def period_from_tower(rho: DrinfeldModule, tower: List[PuiseuxNumber]) -> Period:
    """
    omega = th^(m+1) log(x_m) at the first level m where the log converges
    and exp(omega) vanishes to precision.

    Raises:
        LogDivergence: no level of the tower is inside the convergence disk
    """
    for m, x in enumerate(tower):
        try:
            omega = log_eval(rho, x).shift(m + 1)
        except LogDivergence as exc:
            log.debug("level %d: %s", m, exc)
            continue
        check = vanishing(f"exp(omega) = 0 at level {m}", exp_eval(rho, omega), omega)
        if not check.passed:
            log.debug("level %d: exp(omega) does not vanish (gain %s)", m, check.min_valuation)
            continue
        stability = None
        if m + 1 < len(tower):
            try:
                nxt = log_eval(rho, tower[m + 1]).shift(m + 2)
                stability = residual(f"omega stable from level {m} to {m + 1}", omega, nxt)
            except LogDivergence:
                pass
        log.info("period of valuation %s from level %d", omega.val, m)
        return Period(omega, m, tower, check, stability)
    raise LogDivergence(f"no level among {len(tower)} lies in the log convergence region")


def _fq_elements(tower: FieldTower):
    base = tower.base()
    return [e for e in base.embed(base.GF.elements, tower)]


def in_fq_span(x: PuiseuxNumber, basis: List[PuiseuxNumber]) -> bool:
    """Whether x equals some F_q-combination of `basis` to precision."""
    if not basis:
        return x.is_zero()
    scalars = _fq_elements(x.tower)
    for combo in product(scalars, repeat=len(basis)):
        acc = PuiseuxNumber.zero(x.tower)
        for c, b in zip(combo, basis):
            if int(c):
                acc = acc + b.scale(c)
        if (x - acc).is_zero():
            return True
    return False


def torsion_basis(rho: DrinfeldModule, branch: int = 0):
    """
    r F_q-independent t-torsion points, starting from the branch-th one.

    Returns:
        (seeds, count, flags)
    """
    points = torsion_points(rho)
    if not points:
        raise TowerDead("rho_t(x) = 0 has no nonzero root to precision")
    flags = []
    expected = rho.q ** rho.rank - 1
    if len(points) != expected:
        flags.append(f"found {len(points)} nonzero t-torsion points, expected {expected}")
    start = branch % len(points)
    seeds = [points[start]]
    ordered = points[start + 1:] + points[:start]
    common = seeds[0].tower
    for x in ordered:
        if len(seeds) == rho.rank:
            break
        common = common.join(x.tower)
        lifted = [s.lift_tower(common) for s in seeds]
        if not in_fq_span(x.lift_tower(common), lifted):
            seeds.append(x)
    if len(seeds) < rho.rank:
        flags.append(f"only {len(seeds)} F_q-independent t-torsion points")
        log.warning("torsion basis incomplete: %s", flags[-1])
    return seeds, len(points), flags


def lattice_periods(rho: DrinfeldModule, depth: int = 4, branch: int = 0) -> PeriodData:
    """
    Periods w_1 .. w_r from towers over a torsion basis.

    The two rank-2 seeds are F_q-independent by construction; whether the
    periods generate the whole lattice is left to the relation checks.
    """
    seeds, count, flags = torsion_basis(rho, branch)
    periods = []
    for i, seed in enumerate(seeds):
        tower = torsion_tower(rho, depth, seed=seed)
        periods.append(period_from_tower(rho, tower))
        log.info("w_%d has valuation %s", i + 1, periods[-1].omega.val)
    return PeriodData(periods, seeds, count, flags)


def carlitz_period_oracle(tower: FieldTower) -> PuiseuxNumber:
    """
    (-th)^(q/(q-1)) prod_{i>=1} (1 - th^(1-q^i))^(-1), for one choice of
    the (q-1)-th root of -th.
    """
    q = tower.q
    theta = PuiseuxNumber.theta(tower)
    coeffs = [PuiseuxNumber.zero(tower)] * q
    coeffs[0] = theta
    coeffs[q - 1] = PuiseuxNumber.one(tower)
    root = newton_roots(coeffs)[0][0] if q > 2 else -theta
    value = -theta * root
    i = 1
    while q ** i - 1 <= PuiseuxNumber.window:
        factor = PuiseuxNumber.one(tower) - PuiseuxNumber.monomial(tower, 1, 1 - q ** i)
        value = value / factor
        i += 1
    return value


def matches_up_to_fq(a: PuiseuxNumber, b: PuiseuxNumber) -> bool:
    """a / b is a nonzero constant of F_q to precision."""
    if a.is_zero() or b.is_zero():
        raise DrinfeldError("cannot compare a value that is zero to precision")
    return (a / b).in_fq_const()
