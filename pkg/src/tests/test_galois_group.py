"""
Galois Group Test Suite

Transcendence predictions, centralizer dimensions and the combined report.
"""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.algebra import FieldTower, RationalFn
from src.puiseux import PuiseuxNumber
from src.parsers import parse_descriptor
from src.drinfeld import DrinfeldModule
from src.galois_group import (
    EndoAlgebra, centralizer_dim, commutator_system, generated_dimension, identity_matrix,
    galois_report, predicted_trdeg_periods, predicted_trdeg_logs,
)
from src.errors import BadDivisibility, ShapeMismatch, DrinfeldError


def _const(tower, k):
    return RationalFn.from_int(tower, k, 't')


def _companion(tower):
    """Companion matrix of x^2 + x + 1 over F_2."""
    return [[_const(tower, 0), _const(tower, 1)], [_const(tower, 1), _const(tower, 1)]]


def test_predictions():
    """Test 1: r^2/s and r(r/s + n)"""
    print("\n=== Test 1: Predictions ===")
    assert predicted_trdeg_periods(1, 1) == 1, "Carlitz period: one transcendental"
    assert predicted_trdeg_periods(2, 1) == 4
    assert predicted_trdeg_periods(2, 2) == 2, "CM halves the degree"
    assert predicted_trdeg_logs(2, 1, 1) == 6
    assert predicted_trdeg_logs(1, 1, 3) == 4
    for args in [(3, 2), (0, 1)]:
        try:
            predicted_trdeg_periods(*args)
            assert False, f"s must divide r: {args}"
        except BadDivisibility:
            pass
    try:
        predicted_trdeg_logs(2, 1, -1)
        assert False, "negative log count"
    except BadDivisibility:
        pass
    print("PASSED")


def test_centralizer_of_identity():
    """Test 2: the centralizer of scalars is all of Mat_r"""
    print("\n=== Test 2: Trivial Algebra ===")
    t = FieldTower.for_q(2)
    algebra = EndoAlgebra.trivial(t, 2)
    assert centralizer_dim(algebra) == 4
    assert len(commutator_system(algebra.gens)) == 4, "one condition per entry"
    assert generated_dimension(algebra) == 1
    print("PASSED")


def test_centralizer_of_field():
    """Test 3: a quadratic field in Mat_2 is its own centralizer"""
    print("\n=== Test 3: Quadratic Field ===")
    t = FieldTower.for_q(2)
    algebra = EndoAlgebra([_companion(t)], 2, ["zeta"])
    assert len(algebra.gens) == 2 and algebra.labels[0] == "1", "identity added"
    assert centralizer_dim(algebra) == 2
    assert generated_dimension(algebra, degree=3) == 2, "zeta^2 = zeta + 1"
    print("PASSED")


def test_block_diagonal():
    """Test 4: diag(zeta, zeta) in Mat_4 has an 8-dimensional centralizer"""
    print("\n=== Test 4: Block Diagonal ===")
    t = FieldTower.for_q(2)
    C = _companion(t)
    zero = _const(t, 0)
    g = [[zero] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            g[i][j] = C[i][j]
            g[i + 2][j + 2] = C[i][j]
    algebra = EndoAlgebra([identity_matrix(t, 4), g], 4)
    assert len(algebra.gens) == 2, "identity already present"
    assert centralizer_dim(algebra) == 8
    try:
        EndoAlgebra([C], 3)
        assert False, "2x2 generator in a size-3 algebra"
    except ShapeMismatch:
        pass
    print("PASSED")


def test_galois_report():
    """Test 5: reports for the Carlitz and a CM module"""
    print("\n=== Test 5: Galois Report ===")
    carlitz = DrinfeldModule.carlitz(2)
    t = carlitz.tower
    report = galois_report(carlitz, EndoAlgebra.trivial(t, 1), B=1, d=1, n_logs=2)
    assert (report.r, report.s) == (1, 1)
    assert report.centralizer_dimension == 1 and report.consistent
    assert report.predicted_logs == 3
    assert report.to_dict()["consistent"] is True

    cm = DrinfeldModule.from_descriptor(parse_descriptor("rank2-cm-q2"))
    report = galois_report(cm, EndoAlgebra([_companion(cm.tower)], 2), B=2, d=2)
    assert report.s == 2 and report.predicted_periods == 2
    assert report.centralizer_dimension == 2 and report.consistent

    try:
        galois_report(carlitz, EndoAlgebra.trivial(t, 2), B=1, d=1)
        assert False, "algebra size must match the rank"
    except DrinfeldError:
        pass
    print("PASSED")


def test_report_needs_evidence():
    """Test 6: no algebra or no exact coefficients means no consistency claim"""
    print("\n=== Test 6: Inconclusive Reports ===")
    carlitz = DrinfeldModule.carlitz(2)
    report = galois_report(carlitz, None, B=1, d=1)
    assert report.s == 1 and report.centralizer_dimension is None
    assert not report.consistent, "nothing computed on the centralizer side"
    assert any("no eta algebra" in n for n in report.notes)

    relations = {"label": "no relation at height <= 2, precision 10"}
    report = galois_report(carlitz, EndoAlgebra.trivial(carlitz.tower, 1), B=1, d=1, relations=relations)
    assert report.consistent and report.relations == relations
    assert report.notes == ["relation finder: no relation at height <= 2, precision 10"]

    t = carlitz.tower
    skew = DrinfeldModule(t, [PuiseuxNumber.theta(t).inv(), PuiseuxNumber.one(t)], name="skew")
    assert not skew.is_exact
    report = galois_report(skew, EndoAlgebra.trivial(t, 2))
    assert report.inconclusive and report.s is None
    assert report.predicted_periods is None and report.centralizer_dimension is None
    assert not report.consistent
    assert report.to_dict()["consistent"] is False
    print("PASSED")



def main():
    test_predictions()
    test_centralizer_of_identity()
    test_centralizer_of_field()
    test_block_diagonal()
    test_galois_report()
    test_report_needs_evidence()
    print("\n" + "=" * 50)
    print("ALL TESTS PASSED!")
    print("=" * 50)


if __name__ == "__main__":
    try:
        main()
    except AssertionError as e:
        print(f"\nTEST FAILED: {e}")
        sys.exit(1)
