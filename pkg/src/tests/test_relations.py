"""
Relations Test Suite

Bounded-height relation search over F_q[th] and its summaries.
"""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

import numpy as np

from src.algebra import FieldTower, Poly
from src.puiseux import PuiseuxNumber, working_precision
from src.parsers import parse_descriptor
from src.drinfeld import DrinfeldModule, lattice_periods, log_eval, period_matrix
from src.relations import (
    find_relations, certificate_rank, primitive_relations, kspan_dim,
    relation_summary, combine, coefficient_matrix, proportional,
)
from src.errors import InsufficientPrecision


def _values(t):
    return [PuiseuxNumber.from_poly(Poly(t, c)) for c in ([1], [0, 1], [1, 1])]


def test_constant_relation():
    """Test 1: 1 + th - (1 + th) = 0 is the only relation at height 0"""
    print("\n=== Test 1: Height 0 ===")
    with working_precision(16):
        t = FieldTower.for_q(2)
        values = _values(t)
        certs = find_relations(values, D=0)
        assert len(certs) == 1, "one F_2-relation with constant coefficients"
        cert = certs[0]
        assert cert.degree == 0
        assert combine(cert.coeffs, values).is_zero(), "direct summation vanishes"
        assert certificate_rank(certs) == 1
        assert kspan_dim(values, D=0) == 2
        assert str(cert).startswith("(")
    print("PASSED")


def test_height_one():
    """Test 2: at height 1 the three values span a line over F_2(th)"""
    print("\n=== Test 2: Height 1 ===")
    with working_precision(16):
        t = FieldTower.for_q(2)
        values = _values(t)
        certs = find_relations(values, D=1, recompute=lambda: _values(t))
        assert len(certs) >= 3
        assert all(c.reverified for c in certs), "relations survive a doubled window"
        assert kspan_dim(values, D=1) == 1
        primitive = primitive_relations(certs)
        assert len(primitive) == 2
    print("PASSED")


def test_summary():
    """Test 3: JSON-ready summary labels the outcome"""
    print("\n=== Test 3: Relation Summary ===")
    with working_precision(16):
        t = FieldTower.for_q(2)
        summary = relation_summary(_values(t), D=0)
        assert summary["values"] == 3 and summary["height"] == 0
        assert summary["span_dimension"] == 2
        assert summary["label"] == "1 relation(s) at height <= 0"
        assert len(summary["certificates"]) == 1
    print("PASSED")


def test_no_relation_is_labelled():
    """Test 4: the Carlitz period has no small relation with 1"""
    print("\n=== Test 4: No Relation ===")
    with working_precision(20):
        rho = DrinfeldModule.carlitz(2)
        omega = lattice_periods(rho, depth=2).omegas[0]
        values = [omega, PuiseuxNumber.one(rho.tower)]
        assert find_relations(values, D=1) == []
        summary = relation_summary(values, D=1)
        assert summary["span_dimension"] == 2
        assert summary["label"].startswith("no relation at height <= 1, precision")
    print("PASSED")


def test_insufficient_precision():
    """Test 5: too few equations for the unknowns"""
    print("\n=== Test 5: Insufficient Precision ===")
    with working_precision(12):
        t = FieldTower.for_q(2)
        values = _values(t)
        try:
            find_relations(values, D=10)
            assert False, "height 10 needs a wider window"
        except InsufficientPrecision:
            pass
        M = coefficient_matrix(values, 3)
        assert M.shape == (4, 3), "coefficients of th^1 .. th^-2"
        try:
            find_relations([PuiseuxNumber.zero(t)], D=0)
            assert False, "exact zeros have no cap"
        except InsufficientPrecision:
            pass
    print("PASSED")


def test_planted_relations():
    """Test 6: planted relations of height <= 3 among up to 6 values are recovered"""
    print("\n=== Test 6: Planted Relations ===")
    rng = np.random.default_rng(11)
    recovered = 0
    with working_precision(48):
        t = FieldTower.for_q(2)
        for trial in range(20):
            m = int(rng.integers(2, 7))
            D = int(rng.integers(0, 4))
            values = []
            for _ in range(m - 1):
                bits = rng.integers(0, 2, size=48)
                bits[0] = 1
                values.append(PuiseuxNumber.from_terms(t, 1, dict(enumerate(bits))))
            coeffs = [rng.integers(0, 2, size=D + 1) for _ in range(m - 1)]
            coeffs[0][0] = 1
            planted = [Poly(t, c) for c in coeffs] + [Poly.one(t)]
            values.append(-combine(planted[:-1], values))
            certs = find_relations(values, D)
            assert certs, f"trial {trial}: nothing found (m={m}, D={D})"
            assert certificate_rank(certs) == 1, f"trial {trial}: spurious relations"
            if all(proportional(c.coeffs, planted) for c in certs):
                recovered += 1
    assert recovered == 20, f"recovered {recovered}/20"
    print("PASSED")


def test_period_entries_independent():
    """Test 7: no height-3 relation among periods, quasi-periods and log(1)"""
    print("\n=== Test 7: Independent Period Entries ===")
    with working_precision(48):
        carlitz = DrinfeldModule.carlitz(2)
        omega = lattice_periods(carlitz, depth=3).omegas[0]
        log_one = log_eval(carlitz, PuiseuxNumber.one(carlitz.tower))
        assert find_relations([omega, log_one], D=3) == []

        rho = DrinfeldModule.from_descriptor(parse_descriptor("rank2-noncm-q2"))
        P = period_matrix(rho, lattice_periods(rho, depth=3).omegas)
        entries = [x for row in P for x in row]
        assert len(entries) == 4
        summary = relation_summary(entries, D=3)
        assert summary["span_dimension"] == 4
        assert summary["label"].startswith("no relation at height <= 3")
    print("PASSED")



def main():
    test_constant_relation()
    test_height_one()
    test_summary()
    test_no_relation_is_labelled()
    test_insufficient_precision()
    test_planted_relations()
    test_period_entries_independent()
    print("\n" + "=" * 50)
    print("ALL TESTS PASSED!")
    print("=" * 50)


if __name__ == "__main__":
    try:
        main()
    except AssertionError as e:
        print(f"\nTEST FAILED: {e}")
        sys.exit(1)
