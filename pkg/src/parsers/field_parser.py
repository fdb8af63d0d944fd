"""
Finite Field Literal Parser

Elements of F_(q^d) written as polynomials in the generator symbol g
with integer coefficients mod p, e.g. "g^2+g+1", "2*g+1", "g^5".
"""

import re
from typing import Optional

from .base import LiteralParser
from ..algebra.fields import FieldTower
from ..errors import ParseError

_TERM = re.compile(r'^(?:(?P<coef>\d+)\*?)?(?P<gen>g)(?:\^(?P<exp>\d+))?$|^(?P<const>\d+)$')


class FieldLiteralParser(LiteralParser):
    """
    Parser for F_(q^d) literals in the generator g.

    Example:
        "g^2+g+1" in F_(2^3) -> the element g^2 + g + 1
    """

    def __init__(self):
        super().__init__("field")

    def can_parse(self, text: str) -> bool:
        try:
            terms = self.split_terms(text)
        except ParseError:
            return False
        return all(_TERM.match(self.unwrap(t)) for _, t in terms)

    def parse(self, text: str, tower: FieldTower = None, **context) -> Optional[object]:
        """
        Parse a literal into a scalar of tower.GF.

        Args:
            text: Literal such as "g^2+1"
            tower: Field the element lives in

        Returns:
            FieldArray scalar, or None if the text is not a field literal
        """
        if tower is None:
            raise ParseError("field literal needs a field tower")
        text = self.unwrap(self.compact(text))
        try:
            terms = self.split_terms(text)
        except ParseError:
            return None
        GF = tower.GF
        g = tower.generator()
        acc = GF(0)
        for sign, term in terms:
            m = _TERM.match(self.unwrap(term))
            if not m:
                return None
            if m.group('const') is not None:
                value = GF(int(m.group('const')) % tower.p)
            else:
                coef = int(m.group('coef')) % tower.p if m.group('coef') else 1
                exp = int(m.group('exp')) if m.group('exp') else 1
                value = GF(coef) * g ** exp
            acc = acc + value if sign > 0 else acc - value
        return acc


def format_field_elem(x, tower: FieldTower) -> str:
    """
    Render a field element in the g-grammar.

    For fields of degree > 1 over F_p the integer representation of galois
    is the base-p digit vector in powers of the Conway root, which is g.
    """
    value = int(x)
    if tower.degree == 1 or value < tower.p:
        return str(value)
    digits = []
    while value:
        digits.append(value % tower.p)
        value //= tower.p
    parts = []
    for k in range(len(digits) - 1, -1, -1):
        c = digits[k]
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
            continue
        mono = "g" if k == 1 else f"g^{k}"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts)


def needs_parens(text: str) -> bool:
    """True when a rendered coefficient must be bracketed inside a product."""
    return '+' in text or '-' in text


def field_coeff_text(x, tower: FieldTower) -> str:
    text = format_field_elem(x, tower)
    return f"({text})" if needs_parens(text) else text


def parse_field_array(texts, tower: FieldTower):
    """Parse a list of literals into a 1-D FieldArray."""
    parser = FieldLiteralParser()
    out = tower.GF.Zeros(len(texts))
    for i, t in enumerate(texts):
        value = parser.parse(str(t), tower=tower)
        if value is None:
            raise ParseError(f"not a field literal: {t!r}")
        out[i] = value
    return out
