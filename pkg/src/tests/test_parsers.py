"""
Parser Test Suite

Tests the literal parsers with sample text for each grammar: field
elements, polynomials, Puiseux numbers and module descriptors.
"""

import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.algebra import FieldTower, Poly
from src.puiseux import working_precision
from src.parsers import (
    ParserFactory, PREDEFINED_DESCRIPTORS, detect_format,
    format_field_elem, format_poly, format_puiseux,
    parse_field_literal, parse_poly_literal, parse_puiseux_literal, parse_descriptor,
)
from src.parsers.base import LiteralParser
from src.errors import ParseError


def test_field_literals():
    """Test 1: elements of F_8 in the generator g"""
    print("\n=== Test 1: Field Literals ===")
    t = FieldTower.for_q(2, 3)
    g = t.generator()
    x = parse_field_literal("g^2+g+1", t)
    assert x == g ** 2 + g + t.GF(1), "g^2 + g + 1"
    assert parse_field_literal("(g+1)", t) == g + t.GF(1), "outer parentheses dropped"
    assert parse_field_literal("3", t) == t.GF(1), "integers reduce mod p"
    assert parse_field_literal(format_field_elem(x, t), t) == x
    try:
        parse_field_literal("h+1", t)
        assert False, "h is not the generator"
    except ParseError:
        pass
    print("PASSED")


def test_poly_literals():
    """Test 2: polynomials in th and t"""
    print("\n=== Test 2: Polynomial Literals ===")
    t = FieldTower.for_q(2)
    p = parse_poly_literal("th^2 + th + 1", t)
    assert p == Poly(t, [1, 1, 1])
    assert format_poly(Poly(t, [1, 0, 1])) == "th^2 + 1"
    s = parse_poly_literal("t^3 + 1", t, var='t')
    assert s.var == 't' and s.degree == 3
    assert parse_poly_literal("th - th", t).is_zero(), "terms cancel over F_2"
    t4 = FieldTower.for_q(2, 2)
    p4 = parse_poly_literal("(g+1)*th + g", t4)
    assert p4.degree == 1
    assert parse_poly_literal(format_poly(p4), t4) == p4
    print("PASSED")


def test_puiseux_literals():
    """Test 3: ramified exponents and the O-term"""
    print("\n=== Test 3: Puiseux Literals ===")
    with working_precision(16):
        t = FieldTower.for_q(3)
        x = parse_puiseux_literal("th + 1 + th^(-1/2) + O(th^(-4))", t)
        assert x.val == -1 and x.e == 2
        assert x.cap == 4, "O(th^-4) caps the valuation at 4"
        assert x.coefficient(Fraction(-1, 2)) == 1
        y = parse_puiseux_literal(format_puiseux(x), t)
        assert (y - x).is_zero()
        exact = parse_puiseux_literal("2*th^2", t)
        assert exact.val == -2 and exact.coefficient(2) == 2
        try:
            parse_puiseux_literal("th + O(th^(-2)) + O(th^(-3))", t)
            assert False, "two O-terms"
        except ParseError:
            pass
    print("PASSED")


def test_descriptors():
    """Test 4: predefined names, JSON text and JSON files"""
    print("\n=== Test 4: Descriptors ===")
    desc = parse_descriptor("rank2-cm-q2")
    assert (desc.q, desc.rank, desc.kappa, desc.d) == (2, 2, ['0', '1'], 2)
    desc = parse_descriptor('{"q": 3, "rank": 1, "kappa": [1]}')
    assert desc.kappa == ['1'], "kappa entries become literals"

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "module.json")
        with open(path, "w") as f:
            json.dump({"q": 4, "rank": 2, "kappa": ["g", "1"], "precision": {"window": 32}}, f)
        desc = parse_descriptor(path)
        assert desc.q == 4 and desc.precision == {"window": 32}

    bad = [
        '{"q": 6, "rank": 1, "kappa": ["1"]}',
        '{"q": 2, "rank": 2, "kappa": ["1"]}',
        '{"q": 2, "rank": 1, "kappa": ["1"], "precision": {"depth": 3}}',
        '{"q": 2, "rank": 1,',
        'no-such-module',
    ]
    for text in bad:
        try:
            parse_descriptor(text)
            assert False, f"accepted {text!r}"
        except ParseError:
            pass
    assert set(PREDEFINED_DESCRIPTORS) >= {"carlitz-q2", "carlitz-q3", "rank2-noncm-q2", "rank2-cm-q2"}
    print("PASSED")


def test_format_detection():
    """Test 5: the factory picks the most specific grammar"""
    print("\n=== Test 5: Format Detection ===")
    cases = {
        "carlitz-q2": "descriptor",
        '{"q": 2}': "descriptor",
        "g^2+1": "field",
        "th^2+1": "poly",
        "th^(1/2) + O(th^(-4))": "puiseux",
        "x + y": None,
    }
    for text, expected in cases.items():
        assert detect_format(text) == expected, f"{text!r} detected as {detect_format(text)}"
    factory = ParserFactory()
    assert [p["name"] for p in factory.list_parsers()] == ["descriptor", "field", "poly", "puiseux"]
    assert factory.get_parser("POLY") is not None
    assert factory.parse("x + y") is None
    print("PASSED")


def test_term_splitting():
    """Test 6: signs, exponents and parentheses"""
    print("\n=== Test 6: Term Splitting ===")
    assert LiteralParser.split_terms("th^(-2) - g + 1") == [(1, "th^(-2)"), (-1, "g"), (1, "1")]
    assert LiteralParser.split_terms("-th") == [(-1, "th")]
    assert LiteralParser.unwrap("(g+1)") == "g+1"
    assert LiteralParser.unwrap("(g)*(g)") == "(g)*(g)"
    for text in ["(th + 1", "th +", "", "th + + 1"]:
        try:
            LiteralParser.split_terms(text)
            assert False, f"split {text!r}"
        except ParseError:
            pass
    print("PASSED")


def main():
    test_field_literals()
    test_poly_literals()
    test_puiseux_literals()
    test_descriptors()
    test_format_detection()
    test_term_splitting()
    print("\n" + "=" * 50)
    print("ALL TESTS PASSED!")
    print("=" * 50)


if __name__ == "__main__":
    try:
        main()
    except AssertionError as e:
        print(f"\nTEST FAILED: {e}")
        sys.exit(1)
