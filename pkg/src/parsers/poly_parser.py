"""
Polynomial Literal Parser

Polynomials in th (theta) or t with coefficients in F_(q^d), e.g.
"th^2+th+1", "(g+1)*t^3 + 2", "g*th".
"""

import re
from typing import Dict, Optional, Tuple

from .base import LiteralParser
from .field_parser import FieldLiteralParser, field_coeff_text
from ..algebra.fields import FieldTower
from ..algebra.polynomials import Poly
from ..errors import ParseError

_COEF = r'(?P<coef>\([^()]*\)|\d+|g(?:\^\d+)?|\d+\*g(?:\^\d+)?)'


def _term_pattern(var: str):
    return re.compile(rf'^(?:{_COEF}\*)?{var}(?:\^(?P<exp>\d+))?$')


_TERMS = {var: _term_pattern(var) for var in ('th', 't')}


class PolyLiteralParser(LiteralParser):
    """
    Parser for polynomial literals in one variable.

    Example:
        "th^2+th+1" over F_2 -> Poly th^2 + th + 1
    """

    def __init__(self):
        super().__init__("poly")
        self.field_parser = FieldLiteralParser()

    def can_parse(self, text: str) -> bool:
        try:
            terms = self.split_terms(text)
        except ParseError:
            return False
        for _, term in terms:
            if not (_TERMS['th'].match(term) or _TERMS['t'].match(term) or self.field_parser.can_parse(term)):
                return False
        return True

    def parse_coefficient(self, text: Optional[str], tower: FieldTower):
        if text is None:
            return tower.GF(1)
        value = self.field_parser.parse(self.unwrap(text), tower=tower)
        if value is None:
            raise ParseError(f"bad coefficient {text!r}")
        return value

    def parse_terms(self, text: str, tower: FieldTower, var: str) -> Optional[Dict[int, object]]:
        """Degree -> coefficient map, or None when a term does not match."""
        try:
            terms = self.split_terms(text)
        except ParseError:
            return None
        pattern = _TERMS[var]
        acc: Dict[int, object] = {}
        for sign, term in terms:
            m = pattern.match(term)
            if m:
                coef = self.parse_coefficient(m.group('coef'), tower)
                exp = int(m.group('exp')) if m.group('exp') else 1
            else:
                coef = self.field_parser.parse(self.unwrap(term), tower=tower)
                if coef is None:
                    return None
                exp = 0
            if sign < 0:
                coef = -coef
            acc[exp] = acc.get(exp, tower.GF(0)) + coef
        return acc

    def parse(self, text: str, tower: FieldTower = None, var: str = 'th', **context) -> Optional[Poly]:
        """
        Parse a polynomial literal.

        Args:
            text: Literal such as "th^2+1"
            tower: Coefficient field
            var: 'th' or 't'

        Returns:
            Poly, or None if the text is not a polynomial literal
        """
        if tower is None:
            raise ParseError("polynomial literal needs a field tower")
        acc = self.parse_terms(text, tower, var)
        if acc is None:
            return None
        deg = max(acc) if acc else 0
        coeffs = tower.GF.Zeros(deg + 1)
        for k, c in acc.items():
            coeffs[k] = c
        return Poly(tower, coeffs, var)


def _monomial(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def format_term(coef_text: str, mono: str) -> Tuple[str, str]:
    """(sign, body) of coefficient times monomial."""
    if not mono:
        return "+", coef_text
    if coef_text == "1":
        return "+", mono
    return "+", f"{coef_text}*{mono}"


def format_poly(poly: Poly) -> str:
    """Render descending terms, e.g. "th^2 + (g+1)*th + 1"."""
    if poly.is_zero():
        return "0"
    coeffs = poly.coeffs()
    parts = []
    for k in range(coeffs.size - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        _, body = format_term(field_coeff_text(c, poly.tower), _monomial(poly.var, k))
        parts.append(body)
    return " + ".join(parts)
