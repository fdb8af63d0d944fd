"""
Drinfeld Module Test Suite

Module construction, exponential and logarithm, periods, generating
functions, quasi-periods and bounded morphism search.
"""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

import numpy as np

from src.algebra import FieldTower, Poly, RationalFn
from src.puiseux import PuiseuxNumber, working_precision
from src.parsers import parse_descriptor
from src.drinfeld import (
    DrinfeldModule, TwistedPoly,
    exp_coeffs, log_coeffs, exp_coeffs_exact, log_coeffs_exact, exp_eval, log_eval,
    functional_equation_residual, log_exp_residual, exp_log_roundtrip,
    lattice_periods, carlitz_period_oracle, matches_up_to_fq,
    agf, agf_closed_form, agf_functional_residual, agf_residue_check, closed_form_terms,
    Biderivation, quasi_period, hom_solver, endo_ring_degree,
)
from src.drinfeld.quasi import semilinearity_report, first_column_report
from src.errors import LogDivergence, DrinfeldError
from src.series import residual


def _module(name):
    return DrinfeldModule.from_descriptor(parse_descriptor(name))


def test_rho_a():
    """Test 1: rho_(t^2) of the Carlitz module over F_2"""
    print("\n=== Test 1: rho_a ===")
    with working_precision(16):
        rho = DrinfeldModule.carlitz(2)
        t = rho.tower
        b = rho.rho_a(Poly(t, [0, 0, 1], 't'))
        th = PuiseuxNumber.theta(t)
        expected = TwistedPoly(t, [th * th, th + th * th, PuiseuxNumber.one(t)])
        assert b.degree == 2
        assert b.equals_to_prec(expected), "th^2 + (th + th^2) tau + tau^2"
        x = th.inv()
        assert (rho(x) - (th * x + x * x)).is_zero(), "rho_t(x) = th x + x^q"
    print("PASSED")


def test_exponential_coefficients():
    """Test 2: a_1 = 1/(th^q - th) exactly and as a Puiseux number"""
    print("\n=== Test 2: Exponential Coefficients ===")
    with working_precision(16):
        rho = DrinfeldModule.carlitz(2)
        t = rho.tower
        th2_minus_th = Poly(t, [0, 1, 1])
        a = exp_coeffs_exact(rho, 2)
        assert a[1] == RationalFn(Poly.one(t), th2_minus_th)
        b = log_coeffs_exact(rho, 2)
        assert b[1] == RationalFn(Poly.one(t), th2_minus_th), "1/(th - th^2) = 1/(th^2 + th) over F_2"
        approx = exp_coeffs(rho, 2)[1]
        assert (approx * PuiseuxNumber.from_poly(th2_minus_th) - 1).is_zero()
        assert functional_equation_residual(rho, 4).passed
        assert log_exp_residual(rho, 4).passed
    print("PASSED")


def test_exp_log():
    """Test 3: exp(log z) = z and divergence at the disk boundary"""
    print("\n=== Test 3: exp and log ===")
    with working_precision(16):
        rho = DrinfeldModule.carlitz(2)
        t = rho.tower
        one = PuiseuxNumber.one(t)
        assert exp_log_roundtrip(rho, one).passed
        z = PuiseuxNumber.theta(t).inv()
        assert (exp_eval(rho, z) - z).val > z.val, "exp(z) = z + smaller terms"
        try:
            log_eval(rho, PuiseuxNumber.monomial(t, 1, 2))
            assert False, "log diverges at val(z) = -q/(q-1)"
        except LogDivergence:
            pass
    print("PASSED")


def test_carlitz_period():
    """Test 4: Carlitz period against the product formula"""
    print("\n=== Test 4: Carlitz Period ===")
    with working_precision(20):
        rho = DrinfeldModule.carlitz(2)
        pd = lattice_periods(rho, depth=2)
        assert pd.torsion_count == 1, "q^r - 1 nonzero t-torsion points"
        omega = pd.omegas[0]
        assert pd.periods[0].exp_check.passed
        assert matches_up_to_fq(omega, carlitz_period_oracle(rho.tower))
        assert exp_eval(rho, omega).val > omega.val + 8
    print("PASSED")


def test_generating_function():
    """Test 5: Anderson generating function of a period"""
    print("\n=== Test 5: Generating Functions ===")
    with working_precision(20):
        rho = DrinfeldModule.carlitz(2)
        omega = lattice_periods(rho, depth=2).omegas[0]
        N = 6
        f = agf(rho, omega, N)
        assert agf_functional_residual(rho, omega, f).passed
        closed = agf_closed_form(rho, omega, N)
        assert (f.coeffs[0] - closed.coeffs[0]).val > f.coeffs[0].val + 8
    print("PASSED")


def test_quasi_periods():
    """Test 6: first column and semilinearity of quasi-periodic functions"""
    print("\n=== Test 6: Quasi-Periods ===")
    with working_precision(20):
        rho = DrinfeldModule.carlitz(2)
        omega = lattice_periods(rho, depth=2).omegas[0]
        assert first_column_report(rho, [omega]).passed
        u = PuiseuxNumber.theta(rho.tower).inv()
        assert semilinearity_report(rho, Biderivation.tau(rho.tower, 1), u).passed
        assert quasi_period(rho, Biderivation.zero(rho.tower), u).is_zero()
    print("PASSED")


def test_carlitz_morphisms():
    """Test 7: End of the Carlitz module in tau-degree <= 1 is {1, th + tau}"""
    print("\n=== Test 7: Carlitz Endomorphisms ===")
    rho = DrinfeldModule.carlitz(2)
    basis = hom_solver(rho, rho, 1, 1)
    assert len(basis) == 2, "F_q-span of 1 and rho_t"
    assert sorted(b.degree for b in basis) == [0, 1]
    assert endo_ring_degree(rho, 2, 1) == 1
    print("PASSED")


def test_cm_module():
    """Test 8: th + tau^2 over F_2 has CM by F_4; th + tau + tau^2 does not"""
    print("\n=== Test 8: Endomorphism Rank ===")
    assert endo_ring_degree(_module("rank2-cm-q2"), 2, 2) == 2
    assert endo_ring_degree(_module("rank2-noncm-q2"), 2, 2) == 1
    print("PASSED")


def test_normalize():
    """Test 9: conjugating to k_r = 1"""
    print("\n=== Test 9: Normalization ===")
    with working_precision(16):
        t = FieldTower.for_q(2)
        rho = DrinfeldModule.from_polys(t, [Poly.one(t), Poly(t, [0, 1])], name="skew")
        assert not rho.normalized
        norm, c = rho.normalize()
        assert norm.normalized
        assert ((c ** 3) * PuiseuxNumber.theta(t) - 1).is_zero(), "c^(q^r - 1) = 1/k_r"
        x = PuiseuxNumber.theta(t).inv()
        # c^(-1) rho_t(c x) = rho'_t(x)
        assert (rho(c * x) / c - norm(x.lift_tower(norm.tower))).is_zero()
        try:
            DrinfeldModule(t, [PuiseuxNumber.zero(t)])
            assert False, "k_r must be nonzero"
        except DrinfeldError:
            pass
    print("PASSED")


def _direct_sum(coeffs, z):
    """sum_i c_i z^(q^i) over the given coefficients."""
    acc = PuiseuxNumber.zero(z.tower)
    for i, c in enumerate(coeffs):
        if not c.is_exact_zero():
            acc = acc + c * z.frob_power(i)
    return acc


def test_vanishing_first_coefficient():
    """Test 10: th + tau^2 has a_1 = b_1 = 0; exp and log still sum every term"""
    print("\n=== Test 10: Zero Coefficients ===")
    with working_precision(32):
        rho = _module("rank2-cm-q2")
        t = rho.tower
        alpha = exp_coeffs(rho, 6)
        assert alpha[1].is_exact_zero(), "k_1 = 0 gives a_1 = 0"
        z = PuiseuxNumber.theta(t)
        value = exp_eval(rho, z)
        assert value.coefficient(0) == 1, "a_2 th^4 = 1 + th^-3 + ... contributes to th^0"
        assert residual("exp(th)", value, _direct_sum(alpha, z)).passed

        beta = log_coeffs(rho, 9)
        assert beta[1].is_exact_zero()
        w = PuiseuxNumber.monomial(t, 1, -5)
        logged = log_eval(rho, w)
        assert residual("log(th^-5)", logged, _direct_sum(beta, w)).passed
        assert exp_log_roundtrip(rho, w).passed
    print("PASSED")


def test_random_functional_equation():
    """Test 11: exp(th z) = rho_t(exp z) through z^(q^8) for 20 random modules"""
    print("\n=== Test 11: Random Functional Equations ===")
    rng = np.random.default_rng(1729)
    for n in range(20):
        q = int(rng.choice([2, 3, 4]))
        r = int(rng.integers(1, 4))
        t = FieldTower.for_q(q)
        kappa = []
        for j in range(r):
            coeffs = rng.integers(0, q, size=3)
            if j == r - 1 and not coeffs.any():
                coeffs[0] = 1
            kappa.append(Poly(t, coeffs))
        rho = DrinfeldModule.from_polys(t, kappa, name=f"random-{n}")
        report = functional_equation_residual(rho, 8)
        assert report.passed, f"{rho.name} (q={q}, r={r}): {report.detail}"
        assert report.compared == 18, "a = t and a = t^2 at z^(q^0) .. z^(q^8)"
    print("PASSED")


def test_carlitz_period_full_window():
    """Test 12: Carlitz periods for q = 2, 3 agree with the product formula in 30 slots"""
    print("\n=== Test 12: Carlitz Periods at Window 48 ===")
    with working_precision(48):
        for q in (2, 3):
            rho = DrinfeldModule.carlitz(q)
            omega = lattice_periods(rho, depth=3).omegas[0]
            assert omega.rel_prec >= 30, f"q={q}: only {omega.rel_prec} slots"
            assert matches_up_to_fq(omega, carlitz_period_oracle(rho.tower)), f"q={q}: period differs"
    print("PASSED")


def test_rank2_periods():
    """Test 13: both rank-2 examples have two periods with exp(w) = 0"""
    print("\n=== Test 13: Rank-2 Periods ===")
    with working_precision(24):
        for name in ("rank2-noncm-q2", "rank2-cm-q2"):
            rho = _module(name)
            pd = lattice_periods(rho, depth=3)
            assert len(pd.periods) == 2, f"{name}: {pd.flags}"
            for p in pd.periods:
                assert p.exp_check.passed, f"{name}: exp(w) gain {p.exp_check.min_valuation}"
            w1, w2 = pd.omegas
            assert not (w1 / w2).in_fq_const(), f"{name}: periods are F_q-proportional"
    print("PASSED")


def test_agf_random_points():
    """Test 14: agf identities for 10 random u per module at N = 48"""
    print("\n=== Test 14: Generating Functions at Random Points ===")
    rng = np.random.default_rng(7)
    with working_precision(96):
        for name in ("carlitz-q2", "rank2-noncm-q2"):
            rho = _module(name)
            t = rho.tower
            for _ in range(10):
                u = PuiseuxNumber.one(t)
                for j, c in enumerate(rng.integers(0, rho.q, size=3), start=1):
                    if c:
                        u = u + PuiseuxNumber.monomial(t, int(c), -j)
                f = agf(rho, u, 48)
                functional = agf_functional_residual(rho, u, f)
                assert functional.passed and functional.min_valuation >= 30, \
                    f"{name}: functional equation gain {functional.min_valuation}"
                residue = agf_residue_check(rho, u, f)
                assert residue.passed and residue.min_valuation >= 30, \
                    f"{name}: value at t = th gain {residue.min_valuation}"
    print("PASSED")


def test_closed_form_length():
    """Test 15: the closed form keeps every term inside the working window"""
    print("\n=== Test 15: Closed Form Length ===")
    with working_precision(24):
        rho = DrinfeldModule.carlitz(3)
        u = PuiseuxNumber.monomial(rho.tower, 1, 11)
        # a_9 u^(3^9) th^(-3^9) is the leading term
        assert closed_form_terms(rho, u) >= 10
        report = residual("agf = closed form", agf(rho, u, 2), agf_closed_form(rho, u, 2))
        assert report.passed, report.detail
    print("PASSED")



def main():
    test_rho_a()
    test_exponential_coefficients()
    test_exp_log()
    test_carlitz_period()
    test_generating_function()
    test_quasi_periods()
    test_carlitz_morphisms()
    test_cm_module()
    test_normalize()
    test_vanishing_first_coefficient()
    test_random_functional_equation()
    test_carlitz_period_full_window()
    test_rank2_periods()
    test_agf_random_points()
    test_closed_form_length()
    print("\n" + "=" * 50)
    print("ALL TESTS PASSED!")
    print("=" * 50)


if __name__ == "__main__":
    try:
        main()
    except AssertionError as e:
        print(f"\nTEST FAILED: {e}")
        sys.exit(1)
