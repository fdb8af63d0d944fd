"""
Morphisms and Endomorphisms

Twisted polynomials b with b rho_t = rho'_t b, searched in bounded tau-degree
B with coefficients in F_(q^d)[th]. Equating tau- and th-coefficients gives
a system that is linear over F_q once each F_(q^d) coefficient is written
in the basis 1, g, ..., g^(d-1); its kernel is an F_q-basis of the bounded
morphism space.
"""

import logging
from dataclasses import dataclass
from math import lcm
from typing import Dict, List, Optional, Tuple

import numpy as np

from .module import DrinfeldModule
from .twisted import TwistedPoly
from ..algebra.fields import FieldTower
from ..algebra.polynomials import Poly, RationalFn
from ..algebra.linalg import nullspace, function_field_rank
from ..puiseux.number import PuiseuxNumber
from ..errors import InconclusiveBound, DrinfeldError

log = logging.getLogger("drinfeld.core")


@dataclass
class Morphism:
    """b = sum coeffs[j] tau^j with exact coefficients in F_(q^d)[th]."""
    coeffs: List[Poly]

    @property
    def tower(self) -> FieldTower:
        return self.coeffs[0].tower

    @property
    def degree(self) -> int:
        nz = [j for j, c in enumerate(self.coeffs) if not c.is_zero()]
        return nz[-1] if nz else -1

    @property
    def constant_term(self) -> Poly:
        """The differential db = b_0."""
        return self.coeffs[0]

    def twisted(self) -> TwistedPoly:
        return TwistedPoly(self.tower, [PuiseuxNumber.from_poly(c) for c in self.coeffs])

    def __repr__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if j == 0 else ("*tau" if j == 1 else f"*tau^{j}")
            parts.append(f"({c!r}){mono}")
        return " + ".join(parts) if parts else "0"


def compose_exact(a: List[Poly], b: List[Poly]) -> List[Poly]:
    """(sum a_i tau^i)(sum b_j tau^j) with exact polynomial coefficients."""
    tower = a[0].tower.join(b[0].tower)
    out = [Poly.zero(tower) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if y.is_zero():
                continue
            out[i + j] = out[i + j] + x * y.frob_power(i)
    return out


def _rho_t_exact(rho: DrinfeldModule, tower: FieldTower) -> List[Poly]:
    return [Poly.monomial(tower, 1)] + [k.lift(tower) for k in rho.exact_kappa()]


def is_morphism(b: List[Poly], rho: DrinfeldModule, rho2: DrinfeldModule) -> bool:
    tower = b[0].tower
    lhs = compose_exact(b, _rho_t_exact(rho, tower))
    rhs = compose_exact(_rho_t_exact(rho2, tower), b)
    return all((x - y).is_zero() for x, y in zip(lhs, rhs))


def default_theta_degree(rho: DrinfeldModule, rho2: DrinfeldModule, B: int) -> int:
    deg = max([k.degree for k in rho.exact_kappa() + rho2.exact_kappa()] + [0])
    r = min(rho.rank, rho2.rank)
    return (1 + deg) * rho.q ** (-(-B // r))


def hom_solver(rho: DrinfeldModule, rho2: DrinfeldModule, B: int, d: int = 1,
               theta_degree: Optional[int] = None) -> List[Morphism]:
    """
    F_q-basis of {b : deg_tau b <= B, b rho_t = rho2_t b}.

    Args:
        rho, rho2: Modules with exact coefficients
        B: tau-degree bound
        d: Search coefficients in F_(q^d) (joined with the modules' fields)
        theta_degree: th-degree bound for each coefficient

    Raises:
        NotExact: a coefficient is not a polynomial in th
    """
    if rho.q != rho2.q:
        raise DrinfeldError("morphisms need modules over the same F_q")
    base = rho.tower.base()
    tower = FieldTower.get(base.p, base.e, lcm(d, rho.tower.d, rho2.tower.d))
    L = theta_degree if theta_degree is not None else default_theta_degree(rho, rho2, B)
    q = tower.q
    left = _rho_t_exact(rho, tower)
    right = _rho_t_exact(rho2, tower)
    # kappa_k^(q^j) for every j <= B
    twisted_left = [[k.frob_power(j) for k in left] for j in range(B + 1)]
    gens = tower.generator() ** np.arange(tower.d)

    columns: List[Dict[Tuple[int, int], object]] = []
    index: List[Tuple[int, int, int]] = []
    for j in range(B + 1):
        for l in range(L + 1):
            for s in range(tower.d):
                beta = gens[s]
                col: Dict[Tuple[int, int], object] = {}
                for k, kj in enumerate(twisted_left[j]):
                    for deg, c in enumerate(kj.coeffs()):
                        if c != 0:
                            key = (j + k, l + deg)
                            col[key] = col.get(key, tower.GF(0)) + beta * c
                for k, kp in enumerate(right):
                    bq = tower.frob(beta, k)
                    for deg, c in enumerate(kp.coeffs()):
                        if c != 0:
                            key = (j + k, l * q ** k + deg)
                            col[key] = col.get(key, tower.GF(0)) - bq * c
                columns.append(col)
                index.append((j, l, s))
    keys = sorted({key for col in columns for key in col})
    if not keys:
        raise DrinfeldError("empty morphism system")
    pos = {key: i for i, key in enumerate(keys)}
    M = base.GF.Zeros((len(keys) * tower.d, len(columns)))
    for c, col in enumerate(columns):
        values = tower.GF.Zeros(len(keys))
        for key, v in col.items():
            values[pos[key]] = v
        M[:, c] = tower.coordinates_over_fq(values).reshape(-1)
    log.info("morphism system: %d equations over F_%d, %d unknowns (B=%d, L=%d, d=%d)",
             M.shape[0], q, M.shape[1], B, L, tower.d)
    kernel = nullspace(M)
    out = []
    for vec in kernel:
        coords = base.GF.Zeros((B + 1, L + 1, tower.d))
        for c, (j, l, s) in enumerate(index):
            coords[j, l, s] = vec[c]
        coeffs = [Poly(tower, tower.from_coordinates(coords[j]), 'th') for j in range(B + 1)]
        if not is_morphism(coeffs, rho, rho2):
            raise DrinfeldError("kernel vector fails the morphism identity")
        out.append(Morphism(coeffs))
    log.info("found %d-dimensional morphism space over F_%d", len(out), q)
    return out


def _differential_rank(morphisms: List[Morphism]) -> int:
    """Rank over F_q(th) of the differentials db, coordinatewise over F_q."""
    if not morphisms:
        return 0
    rows = []
    for b in morphisms:
        tower = b.tower
        base = tower.base()
        coords = tower.coordinates_over_fq(b.constant_term.coeffs())
        rows.append([RationalFn(Poly(base, coords[:, s], 'th')) for s in range(tower.d)])
    return function_field_rank(rows)


def endo_ring_degree(rho: DrinfeldModule, B: Optional[int] = None, d: Optional[int] = None,
                     confirm: bool = True) -> int:
    """
    Rank s of End(rho) over F_q[t], read from the bounded search.

    An endomorphism is determined by its differential and d(rho_a) = a(th),
    so s is the dimension over F_q(th) of the span of the differentials.

    Raises:
        InconclusiveBound: raising B by one changes s
    """
    B = B if B is not None else 2 * rho.rank
    d = d if d is not None else rho.rank
    s = _differential_rank(hom_solver(rho, rho, B, d))
    if confirm:
        s_next = _differential_rank(hom_solver(rho, rho, B + 1, d))
        if s_next != s:
            raise InconclusiveBound(f"endomorphism rank {s} at B = {B} but {s_next} at B = {B + 1}")
    log.info("End(rho) has rank %d (verified up to B=%d, d=%d)", s, B, d)
    return s
