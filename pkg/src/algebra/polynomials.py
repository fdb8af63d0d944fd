"""
Dense Univariate Polynomials and Rational Functions

Poly wraps galois.Poly and remembers its variable ('th' for theta, 't'
for the Tate variable) and its FieldTower. RationalFn keeps numerator and
denominator in lowest terms with a monic denominator.
"""

import numpy as np
import galois

from .fields import FieldTower
from ..errors import DivisionByZero, TowerMismatch

VARIABLES = ('th', 't')


class Poly:
    """
    Polynomial in one variable over F_(q^d).

    Attributes:
        tower: Coefficient field
        var: Variable tag, 'th' or 't'
        poly: Underlying galois.Poly
    """

    __slots__ = ("tower", "var", "poly")

    def __init__(self, tower: FieldTower, coeffs, var: str = 'th'):
        """
        Args:
            tower: Coefficient field
            coeffs: Ascending coefficients (ints, FieldArray) or a galois.Poly
            var: 'th' or 't'
        """
        if var not in VARIABLES:
            raise ValueError(f"variable must be one of {VARIABLES}, got {var!r}")
        self.tower = tower
        self.var = var
        if isinstance(coeffs, galois.Poly):
            self.poly = coeffs
        else:
            arr = tower.GF(np.asarray(coeffs, dtype=np.int64)) if not isinstance(coeffs, galois.FieldArray) else coeffs
            if arr.size == 0:
                arr = tower.GF([0])
            self.poly = galois.Poly(arr, field=tower.GF, order="asc")

    # construction helpers

    @classmethod
    def zero(cls, tower: FieldTower, var: str = 'th') -> "Poly":
        return cls(tower, [0], var)

    @classmethod
    def one(cls, tower: FieldTower, var: str = 'th') -> "Poly":
        return cls(tower, [1], var)

    @classmethod
    def monomial(cls, tower: FieldTower, n: int, coeff=1, var: str = 'th') -> "Poly":
        c = tower.GF.Zeros(n + 1)
        c[n] = coeff
        return cls(tower, c, var)

    @classmethod
    def constant(cls, tower: FieldTower, value, var: str = 'th') -> "Poly":
        return cls(tower, tower.GF([int(value)]), var)

    # properties

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return -1 if self.is_zero() else int(self.poly.degree)

    def coeffs(self, length: int = None):
        """Ascending coefficient FieldArray, optionally zero padded or cut."""
        asc = self.poly.coeffs[::-1]
        if length is None:
            return asc.copy()
        out = self.tower.GF.Zeros(length)
        n = min(length, asc.size)
        out[:n] = asc[:n]
        return out

    def is_zero(self) -> bool:
        return self.poly.degree == 0 and self.poly.coeffs[0] == 0

    def leading(self):
        return self.poly.coeffs[0]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return Poly(self.tower, self.poly // galois.Poly([self.leading()], field=self.tower.GF), self.var)

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly.constant(self.tower, other % self.tower.p, self.var)
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.var != self.var:
            raise TowerMismatch(f"variables differ: {self.var} vs {other.var}")
        return other

    def lift(self, tower: FieldTower) -> "Poly":
        if tower is self.tower:
            return self
        return Poly(tower, self.tower.embed(self.coeffs(), tower), self.var)

    def _pair(self, other):
        other = self._coerce(other)
        joined = self.tower.join(other.tower)
        return self.lift(joined), other.lift(joined)

    def __add__(self, other):
        a, b = self._pair(other)
        return Poly(a.tower, a.poly + b.poly, a.var)

    def __sub__(self, other):
        a, b = self._pair(other)
        return Poly(a.tower, a.poly - b.poly, a.var)

    def __mul__(self, other):
        a, b = self._pair(other)
        return Poly(a.tower, a.poly * b.poly, a.var)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Poly(self.tower, -self.poly, self.var)

    def __pow__(self, n: int):
        return Poly(self.tower, self.poly ** n, self.var)

    def __divmod__(self, other):
        a, b = self._pair(other)
        if b.is_zero():
            raise DivisionByZero("polynomial division by zero")
        quo, rem = divmod(a.poly, b.poly)
        return Poly(a.tower, quo, a.var), Poly(a.tower, rem, a.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly.constant(self.tower, other % self.tower.p, self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._pair(other)
        return a.poly == b.poly

    def __hash__(self):
        return hash((self.var, tuple(int(c) for c in self.coeffs())))

    def frob(self, n: int = 1) -> "Poly":
        """Apply x -> x^(q^n) to every coefficient (the variable is fixed)."""
        return Poly(self.tower, self.tower.frob(self.coeffs(), n), self.var)

    def frob_power(self, n: int) -> "Poly":
        """The q^n-th power of the polynomial, n >= 0."""
        if n < 0:
            raise ValueError("frob_power needs n >= 0 on polynomials")
        step = self.tower.q ** n
        src = self.tower.frob(self.coeffs(), n)
        out = self.tower.GF.Zeros(step * (src.size - 1) + 1)
        out[::step] = src
        return Poly(self.tower, out, self.var)

    def __call__(self, x):
        return self.poly(x)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self._pair(other)
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        return Poly(a.tower, galois.gcd(a.poly, b.poly), a.var).monic()

    def roots(self, tower: FieldTower = None):
        """
        Roots with multiplicity in the given field (default: own field).

        Returns:
            List of (root, multiplicity) sorted by integer representation
        """
        target = tower or self.tower
        p = self.lift(target)
        if p.degree <= 0:
            return []
        found, mult = p.poly.roots(multiplicity=True)
        pairs = [(found[i], int(mult[i])) for i in range(found.size)]
        return sorted(pairs, key=lambda item: int(item[0]))

    def __repr__(self) -> str:
        from ..parsers.poly_parser import format_poly
        return format_poly(self)


class RationalFn:
    """
    Quotient num/den of polynomials in lowest terms, den monic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        if den is None:
            den = Poly.one(num.tower, num.var)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        num, den = num._pair(den)
        if num.is_zero():
            den = Poly.one(num.tower, num.var)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading()
            if lead != 1:
                inv = galois.Poly([lead ** -1], field=den.tower.GF)
                num = Poly(num.tower, num.poly * inv, num.var)
                den = Poly(den.tower, den.poly * inv, den.var)
        self.num = num
        self.den = den

    @property
    def tower(self) -> FieldTower:
        return self.num.tower

    @property
    def var(self) -> str:
        return self.num.var

    @classmethod
    def from_int(cls, tower: FieldTower, value: int, var: str = 'th') -> "RationalFn":
        return cls(Poly.constant(tower, value % tower.p, var))

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, Poly):
            return RationalFn(other)
        if isinstance(other, int):
            return RationalFn.from_int(self.tower, other, self.var)
        raise TypeError(f"cannot combine RationalFn with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, other):
        o = self._coerce(other)
        return RationalFn(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFn(self.num * o.num, self.den * o.den)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def inv(self) -> "RationalFn":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((hash(self.num), hash(self.den)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def frob_power(self, n: int) -> "RationalFn":
        """(num/den)^(q^n) for n >= 0."""
        return RationalFn(self.num.frob_power(n), self.den.frob_power(n))

    def lift(self, tower: FieldTower) -> "RationalFn":
        return RationalFn(self.num.lift(tower), self.den.lift(tower))

    def evaluate(self, x):
        den = self.den(x)
        if np.any(den == 0):
            raise DivisionByZero("pole at evaluation point")
        return self.num(x) / den

    def expand(self, n: int):
        """
        First n coefficients of the power-series expansion at var = 0.

        Returns:
            FieldArray of length n
        """
        d0 = self.den.coeffs(1)[0]
        if d0 == 0:
            raise DivisionByZero("denominator vanishes at 0; no power series")
        num = self.num.coeffs(n)
        den = self.den.coeffs(min(n, self.den.degree + 1))
        out = self.tower.GF.Zeros(n)
        inv0 = d0 ** -1
        for k in range(n):
            acc = num[k]
            upper = min(k, den.size - 1)
            if upper >= 1:
                acc = acc - np.sum(den[1:upper + 1] * out[k - 1::-1][:upper])
            out[k] = acc * inv0
        return out

    def __repr__(self) -> str:
        if self.den.degree == 0:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

