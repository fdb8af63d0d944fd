"""
Truncated Puiseux Numbers

Elements of F_{q^d}((th^{-1/e})) known up to an absolute precision cap.
A PuiseuxNumber stores

    value = sum_k coeffs[k] * th^{-(n0 + k)/e}  +  O(th^{-ncap/e})

so the valuation is measured with val(1/th) = +1 and the term with index n
has valuation n/e. Every result is clipped to a relative window of
`PuiseuxNumber.window` valuation units beyond its leading term; clipping
only ever lowers the cap.
"""

import contextlib
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Tuple, Union

import numpy as np

from ..algebra.fields import FieldTower
from ..algebra.polynomials import Poly, RationalFn
from ..errors import ZeroToPrec, DivisionByZero

# cap index of an exact zero
EXACT = 1 << 62

Number = Union["PuiseuxNumber", int]


class PuiseuxNumber:
    """
    Truncated element of F_{q^d}((th^{-1/e})).

    Attributes:
        tower: Coefficient field F_(q^d)
        e: Ramification index
        n0: Index of the leading coefficient (valuation n0/e)
        coeffs: FieldArray of coefficients for indices n0 .. ncap-1
        ncap: Cap index; all indices >= ncap are unknown
    """

    __slots__ = ("tower", "e", "n0", "coeffs", "ncap")

    window: int = 64

    def __init__(self, tower: FieldTower, e: int, n0: int, coeffs, ncap: int, normalize: bool = True):
        self.tower = tower
        self.e = e
        self.n0 = n0
        self.ncap = ncap
        # one stored coefficient per index in n0 .. ncap-1
        if ncap < EXACT:
            size = max(ncap - n0, 0)
            if coeffs.size > size:
                coeffs = coeffs[:size]
            elif coeffs.size < size:
                padded = tower.GF.Zeros(size)
                padded[:coeffs.size] = coeffs
                coeffs = padded
        self.coeffs = coeffs
        if normalize:
            self._normalize()

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def zero(cls, tower: FieldTower, cap: Optional[Fraction] = None, e: int = 1) -> "PuiseuxNumber":
        """Exact zero, or zero known only up to the given cap."""
        if cap is None:
            return cls(tower, 1, EXACT, tower.GF.Zeros(0), EXACT, normalize=False)
        cap = Fraction(cap)
        e = lcm(e, cap.denominator)
        n = int(cap * e)
        return cls(tower, e, n, tower.GF.Zeros(0), n)

    @classmethod
    def const(cls, tower: FieldTower, c) -> "PuiseuxNumber":
        """Exact constant c in F_(q^d) (int or FieldArray scalar)."""
        value = tower.GF(int(c) % tower.p) if isinstance(c, int) else tower.GF(int(c))
        if value == 0:
            return cls.zero(tower)
        return cls(tower, 1, 0, tower.GF([int(value)]), cls.window)

    @classmethod
    def one(cls, tower: FieldTower) -> "PuiseuxNumber":
        return cls.const(tower, 1)

    @classmethod
    def monomial(cls, tower: FieldTower, coeff, exponent: Union[int, Fraction] = 1) -> "PuiseuxNumber":
        """coeff * th^exponent; the exponent may be fractional."""
        exponent = Fraction(exponent)
        value = tower.GF(int(coeff) % tower.p) if isinstance(coeff, int) else tower.GF(int(coeff))
        if value == 0:
            return cls.zero(tower)
        e = exponent.denominator
        n0 = -exponent.numerator
        return cls(tower, e, n0, tower.GF([int(value)]), n0 + cls.window * e)

    @classmethod
    def theta(cls, tower: FieldTower) -> "PuiseuxNumber":
        return cls.monomial(tower, 1, 1)

    @classmethod
    def from_terms(cls, tower: FieldTower, e: int, terms: dict, cap: Optional[Fraction] = None) -> "PuiseuxNumber":
        """
        Build from {index n: coefficient} (term th^{-n/e}) and an optional cap.
        """
        live = {n: c for n, c in terms.items() if int(c) != 0}
        if not live:
            return cls.zero(tower, cap, e)
        lo = min(live)
        if cap is None:
            ncap = lo + cls.window * e
        else:
            cap = Fraction(cap)
            m = lcm(e, cap.denominator) // e
            if m > 1:
                live = {n * m: c for n, c in live.items()}
                e, lo = e * m, lo * m
            ncap = int(cap * e)
        arr = tower.GF.Zeros(max(ncap - lo, 0))
        for n, c in live.items():
            if n < ncap:
                arr[n - lo] = int(c)
        return cls(tower, e, lo, arr, ncap)

    @classmethod
    def from_poly(cls, poly: Poly) -> "PuiseuxNumber":
        """Exact polynomial in th (expanded around th = infinity)."""
        if poly.is_zero():
            return cls.zero(poly.tower)
        deg = poly.degree
        arr = poly.coeffs()[::-1].copy()
        return cls(poly.tower, 1, -deg, arr, -deg + max(cls.window, deg + 1))

    @classmethod
    def from_rational(cls, f: RationalFn) -> "PuiseuxNumber":
        return cls.from_poly(f.num) / cls.from_poly(f.den)

    # ------------------------------------------------------------------
    # metadata

    @property
    def val(self) -> Fraction:
        """Valuation (the cap when the value is zero to precision)."""
        if self.n0 >= EXACT:
            return Fraction(EXACT)
        return Fraction(self.n0, self.e)

    @property
    def cap(self) -> Fraction:
        if self.ncap >= EXACT:
            return Fraction(EXACT)
        return Fraction(self.ncap, self.e)

    @property
    def rel_prec(self) -> Fraction:
        """Number of valuation units known beyond the leading term."""
        return self.cap - self.val

    def is_zero(self) -> bool:
        """True when indistinguishable from zero at the cap."""
        return self.coeffs.size == 0

    def is_exact_zero(self) -> bool:
        return self.ncap >= EXACT

    def lead(self):
        if self.is_zero():
            raise ZeroToPrec("leading coefficient of a value that is zero to precision")
        return self.coeffs[0]

    def coefficient(self, exponent: Fraction):
        """Coefficient of th^exponent (0 if absent, error beyond the cap)."""
        n = -Fraction(exponent) * self.e
        if n.denominator != 1:
            return self.tower.GF(0)
        n = int(n)
        if n >= self.ncap:
            raise ZeroToPrec(f"th^{exponent} lies beyond the precision cap {self.cap}")
        if n < self.n0:
            return self.tower.GF(0)
        return self.coeffs[n - self.n0]

    # ------------------------------------------------------------------
    # normal form

    def _normalize(self):
        nz = np.nonzero(np.asarray(self.coeffs))[0]
        if nz.size == 0:
            self.n0 = self.ncap
            self.coeffs = self.tower.GF.Zeros(0)
        elif nz[0] > 0:
            self.n0 += int(nz[0])
            self.coeffs = self.coeffs[int(nz[0]):]
        if self.ncap < EXACT:
            limit = self.n0 + self.window * self.e
            if self.ncap > limit:
                self.coeffs = self.coeffs[:limit - self.n0]
                self.ncap = limit
        # smallest ramification compatible with the occupied indices
        if self.e > 1 and self.ncap < EXACT:
            g = self.e
            if self.coeffs.size:
                g = gcd(g, self.n0)
                live = np.nonzero(np.asarray(self.coeffs))[0]
                for k in live[1:]:
                    g = gcd(g, int(k))
                    if g == 1:
                        break
            if g > 1:
                new_cap = self.ncap // g
                if self.coeffs.size:
                    new_n0 = self.n0 // g
                    self.coeffs = self.coeffs[::g][:max(new_cap - new_n0, 0)]
                    self.n0 = new_n0
                else:
                    self.n0 = new_cap
                self.ncap = new_cap
                self.e //= g
                if self.coeffs.size == 0:
                    self.n0 = self.ncap
        elif self.ncap >= EXACT:
            self.e = 1

    def with_window(self, window: int) -> "PuiseuxNumber":
        """Lower the cap to at most `window` units beyond the leading term."""
        if self.is_zero() or self.ncap >= EXACT:
            return self
        limit = self.n0 + window * self.e
        if self.ncap <= limit:
            return self
        return PuiseuxNumber(self.tower, self.e, self.n0, self.coeffs[:limit - self.n0], limit)

    def truncate(self, cap: Fraction) -> "PuiseuxNumber":
        """Lower the absolute cap."""
        cap = Fraction(cap)
        if cap >= self.cap:
            return self
        x = self.lift_e(lcm(self.e, cap.denominator))
        n = int(cap * x.e)
        if n <= x.n0:
            return PuiseuxNumber(x.tower, x.e, n, x.tower.GF.Zeros(0), n)
        return PuiseuxNumber(x.tower, x.e, x.n0, x.coeffs[:n - x.n0], n)

    # ------------------------------------------------------------------
    # lifting

    def lift_e(self, e: int) -> "PuiseuxNumber":
        if e == self.e:
            return self
        if e % self.e:
            raise ValueError(f"cannot lift ramification {self.e} to {e}")
        m = e // self.e
        if self.ncap >= EXACT:
            return PuiseuxNumber(self.tower, e, self.n0, self.coeffs, self.ncap, normalize=False)
        arr = self.tower.GF.Zeros((self.ncap - self.n0) * m)
        arr[::m] = self.coeffs
        return PuiseuxNumber(self.tower, e, self.n0 * m, arr, self.ncap * m, normalize=False)

    def lift_tower(self, tower: FieldTower) -> "PuiseuxNumber":
        if tower is self.tower:
            return self
        return PuiseuxNumber(tower, self.e, self.n0, self.tower.embed(self.coeffs, tower), self.ncap, normalize=False)

    def lift(self, tower: FieldTower, e: int) -> "PuiseuxNumber":
        return self.lift_tower(tower).lift_e(e)

    def _pair(self, other) -> Tuple["PuiseuxNumber", "PuiseuxNumber"]:
        if isinstance(other, int):
            other = PuiseuxNumber.const(self.tower, other)
        elif not isinstance(other, PuiseuxNumber):
            other = PuiseuxNumber.const(self.tower, other)
        if other.tower is self.tower and other.e == self.e:
            return self, other
        tower = self.tower.join(other.tower)
        e = lcm(self.e, other.e)
        return self.lift(tower, e), other.lift(tower, e)

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other: Number) -> "PuiseuxNumber":
        x, y = self._pair(other)
        if x.ncap >= EXACT and x.is_zero():
            return y
        if y.ncap >= EXACT and y.is_zero():
            return x
        ncap = min(x.ncap, y.ncap)
        n0 = min(x.n0, y.n0, ncap)
        arr = x.tower.GF.Zeros(ncap - n0)
        for src in (x, y):
            hi = min(src.ncap, ncap, src.n0 + src.coeffs.size)
            if src.n0 < hi:
                arr[src.n0 - n0:hi - n0] += src.coeffs[:hi - src.n0]
        return PuiseuxNumber(x.tower, x.e, n0, arr, ncap)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxNumber":
        return PuiseuxNumber(self.tower, self.e, self.n0, -self.coeffs, self.ncap, normalize=False)

    def __sub__(self, other: Number) -> "PuiseuxNumber":
        x, y = self._pair(other)
        return x + (-y)

    def __rsub__(self, other: Number) -> "PuiseuxNumber":
        return (-self) + other

    def __mul__(self, other: Number) -> "PuiseuxNumber":
        x, y = self._pair(other)
        if x.ncap >= EXACT and x.is_zero():
            return x
        if y.ncap >= EXACT and y.is_zero():
            return y
        ncap = min(x.n0 + y.ncap, y.n0 + x.ncap)
        n0 = x.n0 + y.n0
        if x.is_zero() or y.is_zero() or ncap <= n0:
            return PuiseuxNumber(x.tower, x.e, ncap, x.tower.GF.Zeros(0), ncap)
        L = ncap - n0
        prod = np.convolve(x.coeffs[:L], y.coeffs[:L])[:L]
        return PuiseuxNumber(x.tower, x.e, n0, prod, ncap)

    __rmul__ = __mul__

    def scale(self, c) -> "PuiseuxNumber":
        """Multiply by a constant of the coefficient field."""
        c = self.tower.GF(int(c))
        if c == 0:
            return PuiseuxNumber.zero(self.tower)
        return PuiseuxNumber(self.tower, self.e, self.n0, self.coeffs * c, self.ncap, normalize=False)

    def shift(self, exponent: Union[int, Fraction]) -> "PuiseuxNumber":
        """Multiply by th^exponent exactly."""
        exponent = Fraction(exponent)
        x = self.lift_e(lcm(self.e, exponent.denominator))
        k = int(exponent * x.e)
        if x.ncap >= EXACT:
            return x
        return PuiseuxNumber(x.tower, x.e, x.n0 - k, x.coeffs, x.ncap - k, normalize=False)

    def inv(self) -> "PuiseuxNumber":
        if self.is_zero():
            raise ZeroToPrec(f"inverse of a value that is zero to precision {self.cap}")
        L = self.ncap - self.n0
        arr = _series_inverse(self.coeffs, L)
        return PuiseuxNumber(self.tower, self.e, -self.n0, arr, -self.n0 + L)

    def __truediv__(self, other: Number) -> "PuiseuxNumber":
        x, y = self._pair(other)
        if y.ncap >= EXACT and y.is_zero():
            raise DivisionByZero("division by exact zero")
        return x * y.inv()

    def __rtruediv__(self, other: Number) -> "PuiseuxNumber":
        y, x = self._pair(other)
        return x / y

    def __pow__(self, n: int) -> "PuiseuxNumber":
        if n < 0:
            return self.inv() ** (-n)
        result = PuiseuxNumber.one(self.tower)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frob_power(self, n: int) -> "PuiseuxNumber":
        """
        x -> x^(q^n), computed by exponent scaling and coefficient Frobenius.

        For n < 0 the exponents are divided by q^|n|, which multiplies the
        ramification index; the relative window shrinks accordingly.
        """
        if n == 0:
            return self
        tower = self.tower
        if self.ncap >= EXACT:
            return self
        coeffs = tower.frob(self.coeffs, n)
        if n < 0:
            return PuiseuxNumber(tower, self.e * tower.q ** (-n), self.n0, coeffs, self.ncap)
        step = tower.q ** n
        n0 = self.n0 * step
        ncap = self.ncap * step
        if self.coeffs.size:
            ncap = min(ncap, n0 + self.window * self.e)
        keep = (ncap - n0 + step - 1) // step if ncap > n0 else 0
        arr = tower.GF.Zeros(max(ncap - n0, 0))
        arr[::step] = coeffs[:keep]
        return PuiseuxNumber(tower, self.e, n0, arr, ncap)

    # ------------------------------------------------------------------
    # comparison

    def equals_to_prec(self, other: Number) -> bool:
        return (self - other).is_zero()

    def sort_key(self) -> Tuple[Fraction, int]:
        """(valuation, leading coefficient) for deterministic ordering."""
        if self.is_zero():
            return (self.val, -1)
        return (self.val, int(self.lead()))

    def in_fq_const(self) -> bool:
        """True if the value is an F_q constant up to its cap."""
        if self.is_zero():
            return True
        if self.n0 != 0 or np.any(np.asarray(self.coeffs[1:])):
            return False
        return bool(self.tower.in_fq(self.coeffs[0]))

    def __repr__(self) -> str:
        from ..parsers.puiseux_parser import format_puiseux
        return format_puiseux(self)


def _series_inverse(a, L: int):
    """First L coefficients of 1/a(x), a[0] != 0, by Newton doubling."""
    GF = type(a)
    b = GF([int(a[0] ** -1)])
    two = GF(2 % GF.characteristic)
    n = 1
    while n < L:
        n = min(2 * n, L)
        ab = np.convolve(a[:n], b)[:n]
        corr = -ab
        corr[0] = corr[0] + two
        b = np.convolve(b, corr)[:n]
    return b[:L]


@contextlib.contextmanager
def working_precision(window: int):
    """Temporarily change the relative window of new results."""
    old = PuiseuxNumber.window
    PuiseuxNumber.window = window
    try:
        yield
    finally:
        PuiseuxNumber.window = old


def set_precision(window: int):
    PuiseuxNumber.window = window
