"""
Twisted Polynomials

Polynomials sum c_i tau^i with PuiseuxNumber coefficients, multiplied by
the rule tau * c = c^q * tau. Morphisms, rho_a and biderivation images are
all TwistedPoly.
"""

from typing import List, Sequence, Union

from ..algebra.fields import FieldTower
from ..puiseux.number import PuiseuxNumber

Coeff = Union[PuiseuxNumber, int]


class TwistedPoly:
    """
    Element of K{tau}.

    Attributes:
        tower: Coefficient field
        coeffs: c_0 .. c_s (trailing exact zeros stripped)
    """

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs: Sequence[Coeff]):
        self.tower = tower
        cs = [c if isinstance(c, PuiseuxNumber) else PuiseuxNumber.const(tower, c) for c in coeffs]
        while cs and cs[-1].is_exact_zero():
            cs.pop()
        self.coeffs: List[PuiseuxNumber] = cs

    @classmethod
    def zero(cls, tower: FieldTower) -> "TwistedPoly":
        return cls(tower, [])

    @classmethod
    def one(cls, tower: FieldTower) -> "TwistedPoly":
        return cls(tower, [1])

    @classmethod
    def tau(cls, tower: FieldTower, j: int = 1) -> "TwistedPoly":
        return cls(tower, [0] * j + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> PuiseuxNumber:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return PuiseuxNumber.zero(self.tower)

    def __add__(self, other: "TwistedPoly") -> "TwistedPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return TwistedPoly(self.tower.join(other.tower),
                           [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __neg__(self) -> "TwistedPoly":
        return TwistedPoly(self.tower, [-c for c in self.coeffs])

    def __sub__(self, other: "TwistedPoly") -> "TwistedPoly":
        return self + (-other)

    def __mul__(self, other: Union["TwistedPoly", PuiseuxNumber, int]) -> "TwistedPoly":
        """Composition: (sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^(q^i) tau^(i+j)."""
        if not isinstance(other, TwistedPoly):
            other = TwistedPoly(self.tower, [other])
        if not self.coeffs or not other.coeffs:
            return TwistedPoly.zero(self.tower.join(other.tower))
        out = [PuiseuxNumber.zero(self.tower)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_exact_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_exact_zero():
                    continue
                out[i + j] = out[i + j] + a * b.frob_power(i)
        return TwistedPoly(self.tower.join(other.tower), out)

    def __rmul__(self, c: Union[PuiseuxNumber, int]) -> "TwistedPoly":
        return TwistedPoly(self.tower, [c]) * self

    def __call__(self, z: PuiseuxNumber) -> PuiseuxNumber:
        """Evaluate sum c_i z^(q^i)."""
        acc = PuiseuxNumber.zero(self.tower)
        for i, c in enumerate(self.coeffs):
            if c.is_exact_zero():
                continue
            acc = acc + c * z.frob_power(i)
        return acc

    def star(self) -> List[PuiseuxNumber]:
        """Coefficients c_i^(-i) of b* = sum c_i^(-i) sigma^i."""
        return [c.frob_power(-i) for i, c in enumerate(self.coeffs)]

    def equals_to_prec(self, other: "TwistedPoly") -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coefficient(i).equals_to_prec(other.coefficient(i)) for i in range(n))

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_exact_zero():
                continue
            mono = "" if i == 0 else ("tau" if i == 1 else f"tau^{i}")
            parts.append(f"({c!r})*{mono}" if mono else f"({c!r})")
        return " + ".join(parts) if parts else "0"
