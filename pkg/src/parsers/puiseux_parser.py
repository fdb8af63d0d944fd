"""
Puiseux Literal Parser

Truncated Puiseux numbers written as

    c0*th^(a0/e) + c1*th^(a1/e) + ... + O(th^(-V))

Exponents may be integers ("th^2", "th^(-3)") or fractions ("th^(1/2)").
Without an O-term the literal is exact up to the working window.
"""

import re
from fractions import Fraction
from math import lcm
from typing import Optional

from .base import LiteralParser
from .field_parser import FieldLiteralParser, field_coeff_text
from .poly_parser import _COEF
from ..algebra.fields import FieldTower
from ..errors import ParseError

_EXP = r'(?:(?P<exp>-?\d+)|\((?P<fexp>-?\d+(?:/\d+)?)\))'
_TERM = re.compile(rf'^(?:{_COEF}\*)?th(?:\^{_EXP})?$')
_BIG_O = re.compile(r'^O\((?:th(?:\^(?:(?P<exp>-?\d+)|\((?P<fexp>-?\d+(?:/\d+)?)\)))?|(?P<one>1))\)$')


def _exponent(m) -> Fraction:
    if m.group('exp') is not None:
        return Fraction(int(m.group('exp')))
    if m.group('fexp') is not None:
        return Fraction(m.group('fexp'))
    return Fraction(1)


class PuiseuxLiteralParser(LiteralParser):
    """
    Parser for PuiseuxNumber literals.

    Example:
        "th + 1 + th^(-1/2) + O(th^(-4))" over F_3
    """

    def __init__(self):
        super().__init__("puiseux")
        self.field_parser = FieldLiteralParser()

    def can_parse(self, text: str) -> bool:
        try:
            terms = self.split_terms(text)
        except ParseError:
            return False
        for _, term in terms:
            if not (_TERM.match(term) or _BIG_O.match(term) or self.field_parser.can_parse(term)):
                return False
        return True

    def parse(self, text: str, tower: FieldTower = None, **context):
        """
        Parse a Puiseux literal.

        Args:
            text: Literal in the grammar above
            tower: Coefficient field

        Returns:
            PuiseuxNumber, or None if the text does not match
        """
        from ..puiseux.number import PuiseuxNumber

        if tower is None:
            raise ParseError("Puiseux literal needs a field tower")
        try:
            terms = self.split_terms(text)
        except ParseError:
            return None
        GF = tower.GF
        found = {}
        cap: Optional[Fraction] = None
        for sign, term in terms:
            m_o = _BIG_O.match(term)
            if m_o:
                if cap is not None:
                    raise ParseError(f"more than one O-term in {text!r}")
                cap = Fraction(0) if m_o.group('one') else -_exponent(m_o)
                continue
            m = _TERM.match(term)
            if m:
                coef = GF(1)
                if m.group('coef') is not None:
                    coef = self.field_parser.parse(self.unwrap(m.group('coef')), tower=tower)
                    if coef is None:
                        return None
                exponent = _exponent(m)
            else:
                coef = self.field_parser.parse(self.unwrap(term), tower=tower)
                if coef is None:
                    return None
                exponent = Fraction(0)
            if sign < 0:
                coef = -coef
            found[exponent] = found.get(exponent, GF(0)) + coef
        e = 1
        for exponent in found:
            e = lcm(e, exponent.denominator)
        if cap is not None:
            e = lcm(e, cap.denominator)
        indexed = {int(-exponent * e): c for exponent, c in found.items()}
        return PuiseuxNumber.from_terms(tower, e, indexed, cap)


def _exponent_text(exponent: Fraction) -> str:
    if exponent.denominator == 1 and exponent >= 0:
        return str(exponent.numerator)
    return f"({exponent.numerator}/{exponent.denominator})" if exponent.denominator != 1 else f"({exponent.numerator})"


def format_puiseux(x) -> str:
    """Render in the literal grammar; terms by increasing valuation."""
    if x.is_exact_zero():
        return "0"
    parts = []
    for k in range(x.coeffs.size):
        c = x.coeffs[k]
        if c == 0:
            continue
        exponent = -Fraction(x.n0 + k, x.e)
        coef = field_coeff_text(c, x.tower)
        if exponent == 0:
            parts.append(coef)
            continue
        mono = "th" if exponent == 1 else f"th^{_exponent_text(exponent)}"
        parts.append(mono if coef == "1" else f"{coef}*{mono}")
    parts.append(f"O(th^{_exponent_text(-x.cap)})")
    return " + ".join(parts)
