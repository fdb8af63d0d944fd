"""
Drinfeld Modules

A Drinfeld F_q[t]-module is fixed by rho_t = th + k_1 tau + ... + k_r tau^r.
Coefficients are PuiseuxNumbers; when every k_j is a polynomial in th the
exact polynomials are kept alongside so symbolic checks and the
morphism solver can run.
"""

import logging
import threading
from typing import List, Optional, Sequence, Tuple

from .twisted import TwistedPoly
from ..algebra.fields import FieldTower
from ..algebra.polynomials import Poly
from ..puiseux.number import PuiseuxNumber
from ..errors import DrinfeldError, ParseError, NotExact

log = logging.getLogger("drinfeld.core")


class DrinfeldModule:
    """
    Drinfeld module of rank r over F_q.

    Attributes:
        tower: Field F_(q^d) the coefficients are written over
        kappa: k_1 .. k_r as PuiseuxNumbers (k_r nonzero)
        exact: Matching list of Poly in th, or None when some k_j is not a polynomial
        name: Label used in reports
    """

    def __init__(self, tower: FieldTower, kappa: Sequence[PuiseuxNumber],
                 exact: Optional[Sequence[Poly]] = None, name: str = ""):
        if not kappa:
            raise DrinfeldError("a Drinfeld module needs rank at least 1")
        if kappa[-1].is_zero():
            raise DrinfeldError("leading coefficient k_r vanishes to precision")
        self.tower = tower
        self.kappa: List[PuiseuxNumber] = list(kappa)
        self.exact: Optional[List[Poly]] = list(exact) if exact is not None else None
        self.name = name
        # exp / log coefficient caches, grown under the lock
        self._alpha: List[PuiseuxNumber] = [PuiseuxNumber.one(tower)]
        self._beta: List[PuiseuxNumber] = [PuiseuxNumber.one(tower)]
        self._lock = threading.Lock()

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def from_polys(cls, tower: FieldTower, kappa: Sequence[Poly], name: str = "") -> "DrinfeldModule":
        return cls(tower, [PuiseuxNumber.from_poly(k) for k in kappa], kappa, name)

    @classmethod
    def carlitz(cls, q: int) -> "DrinfeldModule":
        tower = FieldTower.for_q(q)
        return cls.from_polys(tower, [Poly.one(tower)], name=f"carlitz-q{q}")

    @classmethod
    def from_descriptor(cls, desc) -> "DrinfeldModule":
        """
        Build from a ModuleDescriptor; kappa literals may be polynomials
        in th or Puiseux literals.
        """
        from ..parsers.parser_factory import get_factory

        tower = FieldTower.for_q(desc.q, desc.d)
        factory = get_factory()
        polys: List[Optional[Poly]] = []
        values: List[PuiseuxNumber] = []
        for text in desc.kappa:
            poly = factory.parse(text, 'poly', tower=tower, var='th')
            if poly is not None:
                polys.append(poly)
                values.append(PuiseuxNumber.from_poly(poly))
                continue
            value = factory.parse(text, 'puiseux', tower=tower)
            if value is None:
                raise ParseError(f"kappa entry {text!r} is neither a polynomial nor a Puiseux literal")
            polys.append(None)
            values.append(value)
        exact = polys if all(p is not None for p in polys) else None
        module = cls(tower, values, exact, desc.name or "")
        log.info("built %r", module)
        return module

    # ------------------------------------------------------------------
    # structure

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def rank(self) -> int:
        return len(self.kappa)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def normalized(self) -> bool:
        """True when k_r = 1."""
        return (self.kappa[-1] - 1).is_zero() and self.kappa[-1].val == 0

    def kappa_ext(self, j: int) -> PuiseuxNumber:
        """k_0 = th, k_1 .. k_r, and 0 beyond the rank."""
        if j == 0:
            return PuiseuxNumber.theta(self.tower)
        if 1 <= j <= self.rank:
            return self.kappa[j - 1]
        return PuiseuxNumber.zero(self.tower)

    def exact_kappa(self) -> List[Poly]:
        if self.exact is None:
            raise NotExact(f"module {self.name or ''} has non-polynomial coefficients")
        return self.exact

    def rho_t(self) -> TwistedPoly:
        return TwistedPoly(self.tower, [PuiseuxNumber.theta(self.tower)] + self.kappa)

    def rho_a(self, a: Poly) -> TwistedPoly:
        """
        Image of a in F_q[t] by Horner composition with rho_t.

        Args:
            a: Poly in t over F_q
        """
        tower = self.tower.join(a.tower)
        coeffs = a.lift(tower).coeffs()
        rt = self.rho_t()
        acc = TwistedPoly.zero(tower)
        for k in range(coeffs.size - 1, -1, -1):
            acc = acc * rt + TwistedPoly(tower, [PuiseuxNumber.const(tower, coeffs[k])])
        return acc

    def __call__(self, x: PuiseuxNumber) -> PuiseuxNumber:
        """rho_t(x)."""
        return self.rho_t()(x)

    def normalize(self) -> Tuple["DrinfeldModule", PuiseuxNumber]:
        """
        Isomorphic module with k_r = 1.

        Conjugates by c with c^(q^r - 1) = 1/k_r, the root chosen first in
        the newton_roots ordering. Returns the new module and c.
        """
        from ..puiseux.newton import newton_roots

        if self.normalized:
            return self, PuiseuxNumber.one(self.tower)
        r, q = self.rank, self.q
        deg = q ** r - 1
        coeffs = [PuiseuxNumber.zero(self.tower)] * (deg + 1)
        coeffs[0] = -self.kappa[-1].inv()
        coeffs[deg] = PuiseuxNumber.one(self.tower)
        roots = newton_roots(coeffs)
        c = roots[0][0]
        c_inv = c.inv()
        kappa = [c_inv * k * c.frob_power(j + 1) for j, k in enumerate(self.kappa)]
        kappa[-1] = PuiseuxNumber.one(c.tower)
        module = DrinfeldModule(c.tower, kappa, None, f"{self.name}-normalized" if self.name else "")
        log.info("normalized by c = %r", c)
        return module, c

    def with_caches_from(self, other: "DrinfeldModule") -> "DrinfeldModule":
        self._alpha, self._beta = other._alpha, other._beta
        return self

    def __repr__(self) -> str:
        terms = " + ".join(f"({k!r})*tau^{j + 1}" for j, k in enumerate(self.kappa) if not k.is_exact_zero())
        return f"<DrinfeldModule {self.name or ''} rank {self.rank} over F_{self.q}: th + {terms}>"
