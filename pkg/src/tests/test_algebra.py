"""
Algebra Test Suite

Finite field towers, polynomials, rational functions, linear algebra and
rational reconstruction.
"""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

import numpy as np

from src.algebra import (
    FieldTower, FieldElem, Poly, RationalFn, large_fields, tables_fingerprint,
    rank, nullspace, solve_affine, function_field_rank, rational_reconstruct,
)
from src.errors import FieldTooLarge, TowerMismatch, InsufficientData, NoMatch, DivisionByZero


def test_tower_construction():
    """Test 1: towers from q and their joins"""
    print("\n=== Test 1: Field Towers ===")
    t4 = FieldTower.for_q(4)
    assert (t4.p, t4.e, t4.d, t4.q) == (2, 2, 1, 4), "q = 4 is 2^2"
    assert FieldTower.for_q(4) is t4, "towers are cached"
    a, b = FieldTower.for_q(2, 2), FieldTower.for_q(2, 3)
    assert a.join(b).d == 6, "join takes the lcm of the degrees"
    try:
        FieldTower.for_q(6)
        assert False, "6 is not a prime power"
    except TowerMismatch:
        pass
    try:
        a.join(FieldTower.for_q(3))
        assert False, "different characteristics do not join"
    except TowerMismatch:
        pass
    print("PASSED")


def test_degree_cap():
    """Test 2: the field degree cap and its temporary override"""
    print("\n=== Test 2: Degree Cap ===")
    old = FieldTower.max_degree
    try:
        FieldTower.get(2, 1, old + 1)
        assert False, "degree above the cap must be refused"
    except FieldTooLarge:
        pass
    with large_fields(old + 1):
        assert FieldTower.max_degree == old + 1
    assert FieldTower.max_degree == old, "cap restored on exit"
    print("PASSED")


def test_frobenius_and_embedding():
    """Test 3: Frobenius has order d, embeddings are ring maps"""
    print("\n=== Test 3: Frobenius and Embeddings ===")
    t3 = FieldTower.for_q(2, 3)
    x = t3.GF(np.arange(8))
    assert np.array_equal(t3.frob(x, 3), x), "x^(q^d) = x"
    assert np.array_equal(t3.frob(t3.frob(x, -1), 1), x), "negative powers invert"
    assert int(np.sum(t3.in_fq(x))) == 2, "F_2 inside F_8 has two elements"

    t2, t6 = FieldTower.for_q(2, 2), FieldTower.for_q(2, 6)
    a = t2.GF([0, 1, 2, 3])
    b = t2.GF([3, 2, 1, 1])
    ea, eb = t2.embed(a, t6), t2.embed(b, t6)
    assert np.array_equal(t2.embed(a * b, t6), ea * eb), "embedding is multiplicative"
    assert np.array_equal(t2.embed(a + b, t6), ea + eb), "embedding is additive"
    assert np.array_equal(t6.restrict(ea, t2), a), "restrict undoes embed"
    print("PASSED")


def test_coordinates():
    """Test 4: F_q-coordinates in the basis 1, g, ..., g^(d-1)"""
    print("\n=== Test 4: Coordinates over F_q ===")
    t = FieldTower.for_q(2, 3)
    x = t.GF(np.arange(8))
    coords = t.coordinates_over_fq(x)
    assert coords.shape == (8, 3)
    assert np.array_equal(t.from_coordinates(coords), x), "coordinates determine the element"
    print("PASSED")


def test_field_elements():
    """Test 5: scalar arithmetic across towers"""
    print("\n=== Test 5: Field Elements ===")
    t2, t3 = FieldTower.for_q(2, 2), FieldTower.for_q(2, 3)
    g = FieldElem(t2, int(t2.generator()))
    h = FieldElem(t3, int(t3.generator()))
    s = g + h
    assert s.tower.d == 6, "sum lives in the joined tower"
    assert (g * g.inv()) == FieldElem(t2, 1)
    assert g.frob(2) == g, "g is fixed by x^(q^2) in F_4"
    try:
        FieldElem(t2, 0).inv()
        assert False, "zero has no inverse"
    except DivisionByZero:
        pass
    print("PASSED")


def test_polynomials():
    """Test 6: polynomial arithmetic and q-powers"""
    print("\n=== Test 6: Polynomials ===")
    t = FieldTower.for_q(2)
    p = Poly(t, [1, 1])
    assert p * p == Poly(t, [1, 0, 1]), "(1 + th)^2 = 1 + th^2 in characteristic 2"
    assert p.frob_power(1) == p * p
    assert p.degree == 1 and Poly.zero(t).degree == -1
    q, r = divmod(Poly(t, [1, 0, 1]), p)
    assert q == p and r.is_zero()
    t3 = FieldTower.for_q(3)
    x = Poly(t3, [0, 1])
    assert (x ** 3).frob_power(0) == x.frob_power(1), "x^3 is the q-power for q = 3"
    print("PASSED")


def test_rational_functions():
    """Test 7: lowest terms, inverses and power-series expansion"""
    print("\n=== Test 7: Rational Functions ===")
    t = FieldTower.for_q(2)
    num = Poly(t, [0, 1], 't') * Poly(t, [1, 1], 't')
    den = Poly(t, [1, 1], 't') * Poly(t, [1, 0, 1], 't')
    f = RationalFn(num, den)
    assert f.den.degree == 2 and f.num.degree == 1, "common factor cancelled"
    assert f * f.inv() == 1
    geometric = RationalFn(Poly.one(t, 't'), Poly(t, [1, 1], 't'))
    assert np.array_equal(geometric.expand(6), t.GF(np.ones(6, dtype=int))), "1/(1+t) = 1 + t + t^2 + ..."
    try:
        RationalFn(Poly.one(t), Poly.zero(t))
        assert False, "zero denominator"
    except DivisionByZero:
        pass
    print("PASSED")


def test_linear_algebra():
    """Test 8: rank, kernel and affine solutions over GF"""
    print("\n=== Test 8: Linear Algebra ===")
    GF = FieldTower.for_q(2).GF
    M = GF([[1, 1], [1, 1]])
    assert rank(M) == 1
    K = nullspace(M)
    assert K.shape == (1, 2)
    assert not np.any(M @ K[0]), "kernel vector is killed by M"
    x = solve_affine(GF([[1, 0], [0, 1]]), GF([1, 1]))
    assert np.array_equal(x, GF([1, 1]))
    assert solve_affine(M, GF([1, 0])) is None, "inconsistent system has no solution"

    t = FieldTower.for_q(2)
    th = RationalFn(Poly(t, [0, 1]))
    one = RationalFn.from_int(t, 1)
    assert function_field_rank([[one, th], [th, th * th]]) == 1
    assert function_field_rank([[one, th], [th, one]]) == 2
    print("PASSED")


def test_rational_reconstruction():
    """Test 9: Berlekamp-Massey reconstruction and its failures"""
    print("\n=== Test 9: Rational Reconstruction ===")
    t = FieldTower.for_q(2)
    target = RationalFn(Poly(t, [1, 1], 't'), Poly(t, [1, 1, 1], 't'))
    seq = target.expand(10)
    assert rational_reconstruct(seq, 2, t) == target
    try:
        rational_reconstruct(seq[:4], 2, t)
        assert False, "too few terms"
    except InsufficientData:
        pass
    try:
        rational_reconstruct(t.GF([0, 0, 0, 0, 0, 1]), 2, t)
        assert False, "no degree-2 function has this expansion"
    except NoMatch:
        pass
    print("PASSED")


def test_fingerprint_is_stable():
    """Test 10: the field-table fingerprint ignores order and duplicates"""
    print("\n=== Test 10: Table Fingerprint ===")
    a, b = FieldTower.for_q(2), FieldTower.for_q(2, 3)
    assert tables_fingerprint([a, b]) == tables_fingerprint([b, a, a])
    assert tables_fingerprint([a]) != tables_fingerprint([b])
    print("PASSED")


def main():
    test_tower_construction()
    test_degree_cap()
    test_frobenius_and_embedding()
    test_coordinates()
    test_field_elements()
    test_polynomials()
    test_rational_functions()
    test_linear_algebra()
    test_rational_reconstruction()
    test_fingerprint_is_stable()
    print("\n" + "=" * 50)
    print("ALL TESTS PASSED!")
    print("=" * 50)


if __name__ == "__main__":
    try:
        main()
    except AssertionError as e:
        print(f"\nTEST FAILED: {e}")
        sys.exit(1)
