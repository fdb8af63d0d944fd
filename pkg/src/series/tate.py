"""
Tate Series

Power series sum_m c_m t^m truncated at t^N, with PuiseuxNumber
coefficients. Twisting raises every coefficient to the q^n-th power and
fixes t. Specialization at t = th needs a certificate that the tail
beyond t^N is negligible.
"""

import json
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from ..algebra.fields import FieldTower
from ..algebra.polynomials import Poly
from ..puiseux.number import PuiseuxNumber, EXACT
from ..errors import InsufficientTruncation, TowerMismatch

log = logging.getLogger("drinfeld.series")

Scalar = Union[PuiseuxNumber, int]

# monotone window for tail certificates
TAIL_WINDOW = 5


class TateSeries:
    """
    Truncated series in t over Puiseux coefficients.

    Attributes:
        tower: Coefficient field
        N: Truncation; coefficients of t^m for m >= N are unknown
        coeffs: List of N PuiseuxNumber
    """

    __slots__ = ("tower", "N", "coeffs")

    def __init__(self, tower: FieldTower, N: int, coeffs: Sequence[PuiseuxNumber]):
        coeffs = list(coeffs)[:N]
        zero = PuiseuxNumber.zero(tower)
        coeffs += [zero] * (N - len(coeffs))
        self.tower = tower
        self.N = N
        self.coeffs = coeffs

    @classmethod
    def zero(cls, tower: FieldTower, N: int) -> "TateSeries":
        return cls(tower, N, [])

    @classmethod
    def constant(cls, c: Scalar, N: int, tower: FieldTower = None) -> "TateSeries":
        if isinstance(c, int):
            c = PuiseuxNumber.const(tower, c)
        return cls(c.tower, N, [c])

    @classmethod
    def one(cls, tower: FieldTower, N: int) -> "TateSeries":
        return cls.constant(PuiseuxNumber.one(tower), N)

    @classmethod
    def t_power(cls, tower: FieldTower, k: int, N: int, coeff: Optional[PuiseuxNumber] = None) -> "TateSeries":
        coeffs = [PuiseuxNumber.zero(tower)] * k + [coeff if coeff is not None else PuiseuxNumber.one(tower)]
        return cls(tower, N, coeffs)

    @classmethod
    def t_minus_theta(cls, tower: FieldTower, N: int) -> "TateSeries":
        return cls(tower, N, [-PuiseuxNumber.theta(tower), PuiseuxNumber.one(tower)])

    @classmethod
    def from_t_poly(cls, poly: Poly, N: int) -> "TateSeries":
        """Exact polynomial in t with constant coefficients."""
        coeffs = [PuiseuxNumber.const(poly.tower, c) for c in poly.coeffs()]
        return cls(poly.tower, N, coeffs)

    # ------------------------------------------------------------------
    # arithmetic

    def _check(self, other: "TateSeries") -> "TateSeries":
        if not isinstance(other, TateSeries):
            raise TypeError(f"cannot combine TateSeries with {type(other).__name__}")
        if not self.tower.same_base(other.tower):
            raise TowerMismatch(f"series over {self.tower} and {other.tower}")
        return other

    def __add__(self, other):
        if not isinstance(other, TateSeries):
            return self + TateSeries.constant(self._scalar(other), self.N)
        other = self._check(other)
        N = min(self.N, other.N)
        return TateSeries(self.tower.join(other.tower), N,
                          [self.coeffs[m] + other.coeffs[m] for m in range(N)])

    __radd__ = __add__

    def __neg__(self):
        return TateSeries(self.tower, self.N, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TateSeries):
            c = self._scalar(other)
            return TateSeries(self.tower.join(c.tower), self.N, [x * c for x in self.coeffs])
        other = self._check(other)
        N = min(self.N, other.N)
        a = [(i, c) for i, c in enumerate(self.coeffs[:N]) if not c.is_exact_zero()]
        b = [(j, c) for j, c in enumerate(other.coeffs[:N]) if not c.is_exact_zero()]
        out: List[Optional[PuiseuxNumber]] = [None] * N
        for i, x in a:
            for j, y in b:
                if i + j >= N:
                    break
                term = x * y
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        tower = self.tower.join(other.tower)
        zero = PuiseuxNumber.zero(tower)
        return TateSeries(tower, N, [c if c is not None else zero for c in out])

    __rmul__ = __mul__

    def _scalar(self, c) -> PuiseuxNumber:
        if isinstance(c, PuiseuxNumber):
            return c
        return PuiseuxNumber.const(self.tower, c)

    def mul_t(self, k: int = 1) -> "TateSeries":
        """Multiply by t^k; the truncation stays at N."""
        zero = PuiseuxNumber.zero(self.tower)
        return TateSeries(self.tower, self.N, [zero] * k + self.coeffs[:self.N - k])

    def twist(self, n: int) -> "TateSeries":
        """f^(n) = sum c_m^(q^n) t^m."""
        if n == 0:
            return self
        return TateSeries(self.tower, self.N, [c.frob_power(n) for c in self.coeffs])

    def truncate(self, N: int) -> "TateSeries":
        return TateSeries(self.tower, min(N, self.N), self.coeffs[:N])

    def lift_tower(self, tower: FieldTower) -> "TateSeries":
        return TateSeries(tower, self.N, [c.lift_tower(tower) for c in self.coeffs])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def constant_term(self) -> PuiseuxNumber:
        return self.coeffs[0]

    def gauss_valuation(self) -> Fraction:
        """min_m val(c_m) over the known coefficients."""
        return min(c.val for c in self.coeffs)

    def is_unit(self) -> bool:
        """Constant term nonzero and strictly dominant in absolute value."""
        c0 = self.coeffs[0]
        if c0.is_zero():
            return False
        return all(c.val > c0.val for c in self.coeffs[1:])

    # ------------------------------------------------------------------
    # specialization

    def term_valuations(self) -> List[Fraction]:
        """val(c_m th^m); zero coefficients contribute their cap."""
        return [c.val - m for m, c in enumerate(self.coeffs)]

    def tail_certificate(self, target: Optional[Fraction] = None, window: int = TAIL_WINDOW) -> Fraction:
        """
        Check that sum_{m >= N} c_m th^m is negligible.

        The last `window` term valuations must be non-decreasing and at
        least `target` when a target is given.

        Returns:
            The valuation bound on the tail

        Raises:
            InsufficientTruncation: the certificate fails
        """
        tail = self.coeffs[-window:]
        if all(c.is_exact_zero() for c in tail):
            return Fraction(EXACT)
        vals = self.term_valuations()[-window:]
        if len(vals) < window:
            raise InsufficientTruncation(f"need at least {window} coefficients, have {self.N}")
        trending = all(b >= a for a, b in zip(vals, vals[1:]))
        if not trending:
            raise InsufficientTruncation(
                f"term valuations {[str(v) for v in vals]} are not increasing at N = {self.N}")
        bound = vals[-1]
        if target is not None and bound < target:
            raise InsufficientTruncation(
                f"tail valuation {bound} below target {target} at N = {self.N}")
        return bound

    def eval_at_theta(self, target: Optional[Fraction] = None, window: int = TAIL_WINDOW) -> PuiseuxNumber:
        """
        sum_m c_m th^m with a tail certificate.

        The result's cap is lowered to the tail bound, so it never claims
        digits that the truncation hides.
        """
        bound = self.tail_certificate(target, window)
        acc = PuiseuxNumber.zero(self.tower)
        for m, c in enumerate(self.coeffs):
            if c.is_exact_zero():
                continue
            acc = acc + c.shift(m)
        if bound < acc.cap:
            acc = acc.truncate(bound)
        log.debug("eval_at_theta: value valuation %s, cap %s, tail bound %s", acc.val, acc.cap, bound)
        return acc

    def residue_at_theta(self, target: Optional[Fraction] = None) -> PuiseuxNumber:
        """eval_at_theta((t - th) * f)."""
        return (TateSeries.t_minus_theta(self.tower, self.N) * self).eval_at_theta(target)

    # ------------------------------------------------------------------
    # serialization

    def to_dict(self) -> dict:
        return {"N": self.N, "coeffs": [repr(c) for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, tower: FieldTower) -> "TateSeries":
        from ..parsers.parser_factory import parse_puiseux_literal
        coeffs = [parse_puiseux_literal(text, tower) for text in data["coeffs"]]
        return cls(tower, int(data["N"]), coeffs)

    def __repr__(self) -> str:
        shown = [f"({c!r})*t^{m}" for m, c in enumerate(self.coeffs[:4]) if not c.is_exact_zero()]
        return f"TateSeries(N={self.N}: {' + '.join(shown)}{' + ...' if self.N > 4 else ''})"
