"""
t-Motive Test Suite

Phi, V and Psi of small modules, endomorphism matrices, extension blocks
of logarithm points, Baer sums and triviality witnesses.
"""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

import numpy as np

from src.algebra import FieldTower, Poly
from src.puiseux import PuiseuxNumber, working_precision
from src.parsers import parse_descriptor
from src.series import TateSeries, TateMatrix, residual
from src.drinfeld import DrinfeldModule, TwistedPoly, lattice_periods, log_eval, endo_ring_degree
from src.tmotive import (
    build_phi, build_psi, phi_det_report, v_phi_report,
    build_ext, pushout_row, baer_sum, build_phi_n, build_psi_n,
    search_triviality_witness, module_matrix_of_endo, eta_of_endo,
    endomorphism_generators, eta_generators,
)
from src.tmotive.matrices import v_entries, build_theta
from src.tmotive.extensions import h_row
from src.tmotive.endomorphisms import commutation_report, reconstruct_entry, _e11_relation
from src.relations import proportional
from src.galois_group import EndoAlgebra, centralizer_dim
from src.errors import NotNormalized, ShapeMismatch

N = 8


def _carlitz_data():
    rho = DrinfeldModule.carlitz(2)
    omega = lattice_periods(rho, depth=2).omegas[0]
    return rho, build_psi(rho, [omega], N)


def test_phi_and_v():
    """Test 1: companion matrix, det Phi and V for ranks 1 and 2"""
    print("\n=== Test 1: Phi and V ===")
    with working_precision(16):
        rho = DrinfeldModule.carlitz(2)
        phi = build_phi(rho, N)
        assert phi.shape == (1, 1)
        assert residual("Phi = t - th", phi[0, 0], TateSeries.t_minus_theta(rho.tower, N)).passed
        assert phi_det_report(rho, N).passed

        rank2 = DrinfeldModule.from_descriptor(parse_descriptor("rank2-noncm-q2"))
        V = v_entries(rank2)
        assert (V[0][0] - rank2.kappa[0]).is_zero(), "V_11 = k_1"
        assert (V[0][1] - 1).is_zero() and (V[1][0] - 1).is_zero()
        assert V[1][1].is_zero(), "k_3 = 0 past the rank"
        assert build_theta(rank2, N).shape == (2, 2)
        assert phi_det_report(rank2, N).passed
        assert v_phi_report(rank2, N).passed
    print("PASSED")


def test_requires_normalized():
    """Test 2: Phi is only built for k_r = 1"""
    print("\n=== Test 2: Normalization Required ===")
    with working_precision(16):
        t = FieldTower.for_q(2)
        rho = DrinfeldModule.from_polys(t, [Poly.one(t), Poly(t, [0, 1])])
        try:
            build_phi(rho, N)
            assert False, "k_2 = th is not normalized"
        except NotNormalized:
            pass
    print("PASSED")


def test_carlitz_psi():
    """Test 3: rigid analytic trivialization of the Carlitz module"""
    print("\n=== Test 3: Carlitz Psi ===")
    with working_precision(20):
        rho, data = _carlitz_data()
        assert not data.fallback and data.psi is not None
        for report in data.reports:
            assert report.passed, f"{report.identity}: {report.detail}"
        prod = data.psi_inverse @ data.psi
        assert residual("Psi^-1 Psi = 1", prod, TateMatrix.identity(rho.tower, 1, N)).passed
        assert data.summary()["rank"] == 1
    print("PASSED")


def test_endomorphism_matrix():
    """Test 4: rho_t acts on the t-motive as multiplication by t"""
    print("\n=== Test 4: Endomorphism Matrix ===")
    with working_precision(16):
        rho = DrinfeldModule.carlitz(2)
        phi = build_phi(rho, N)
        E = module_matrix_of_endo(rho.rho_t(), phi)
        assert residual("E = t", E[0, 0], TateSeries.t_power(rho.tower, 1, N)).passed
        assert commutation_report(E, phi).passed
    print("PASSED")


def test_reconstruct_entry():
    """Test 5: rational form of an F_q-valued series"""
    print("\n=== Test 5: Entry Reconstruction ===")
    with working_precision(12):
        t = FieldTower.for_q(2)
        # 1/(1 + t) = 1 + t + t^2 + ...
        series = TateSeries(t, N, [PuiseuxNumber.one(t) for _ in range(N)])
        f = reconstruct_entry(series, 1)
        assert f.den.degree == 1 and f.num.degree == 0
        assert np.array_equal(np.asarray(f.expand(N)), np.ones(N, dtype=int))
    print("PASSED")


def test_eta_of_carlitz_t():
    """Test 6: eta of rho_t is t"""
    print("\n=== Test 6: eta of rho_t ===")
    with working_precision(20):
        rho, data = _carlitz_data()
        cert = eta_of_endo(rho, rho.rho_t(), data)
        assert cert.passed, [r.identity for r in cert.reports if not r]
        eta = cert.rational[0][0]
        expected = np.zeros(6, dtype=int)
        expected[1] = 1
        assert np.array_equal(np.asarray(eta.expand(6)), expected), "eta = t"
        assert (cert.e11_at_theta - PuiseuxNumber.theta(rho.tower)).is_zero(), "E_11(th) = th"

        gens = endomorphism_generators(rho, 1, 1)
        assert len(gens) == 1, "End of the Carlitz module has rank 1"
        certs = eta_generators(rho, data, gens)
        assert len(certs) == 1 and certs[0].passed
    print("PASSED")


def test_extension_block():
    """Test 7: extension of u = log(1) and its push-out by rho_t"""
    print("\n=== Test 7: Extension Block ===")
    with working_precision(20):
        rho, data = _carlitz_data()
        u = log_eval(rho, PuiseuxNumber.one(rho.tower))
        block = build_ext(rho, u, data)
        assert (block.alpha - 1).is_zero(), "exp(log 1) = 1"
        for report in block.reports:
            assert report.passed, f"{report.identity}: {report.detail}"
        # g_1 = -(t - th) f - alpha = -f^(1) when rho_t f = t f + alpha
        assert residual("g_1 = -f^(1)", block.g[0], -block.f.twist(1)).passed

        E = module_matrix_of_endo(rho.rho_t(), data.phi)
        psi_n, report = build_psi_n(data, [block], [E])
        assert psi_n.shape == (2, 2)
        assert report.passed, report.detail
        assert build_phi_n(data, [block], [E]).shape == (2, 2)
    print("PASSED")


def test_baer_sum():
    """Test 8: rows add, and mismatched rows are refused"""
    print("\n=== Test 8: Baer Sum ===")
    with working_precision(12):
        t = FieldTower.for_q(3)
        row = [TateSeries.t_minus_theta(t, N), TateSeries.one(t, N)]
        total = baer_sum(row, [-x for x in row])
        assert all(x.is_zero() for x in total)
        try:
            baer_sum(row, row[:1])
            assert False, "rows of different lengths"
        except ShapeMismatch:
            pass
        try:
            baer_sum()
            assert False, "empty sum"
        except ShapeMismatch:
            pass
    print("PASSED")


def test_triviality_witness():
    """Test 9: t h_1 - h_(rho_t 1) splits with gamma = 1; h_1 alone does not"""
    print("\n=== Test 9: Triviality Witness ===")
    with working_precision(16):
        rho = DrinfeldModule.carlitz(2)
        phi = build_phi(rho, N)
        one = PuiseuxNumber.one(rho.tower)
        E = module_matrix_of_endo(rho.rho_t(), phi)
        pushed = pushout_row(h_row(rho, one, N), E)
        v = baer_sum(pushed, [-x for x in h_row(rho, rho(one), N)])
        witness = search_triviality_witness(rho, v, phi, theta_degree=2, t_degree=1)
        assert witness.found, "v = t - th - 1 is a coboundary"
        assert witness.report.passed
        assert (witness.gamma_first_at_theta - 1).is_zero(), "gamma = 1"
        assert witness.to_dict()["found"] is True

        none = search_triviality_witness(rho, h_row(rho, one, N), phi, theta_degree=2, t_degree=1)
        assert not none.found, "the extension of alpha = 1 does not split"
        assert none.unknowns == 6
    print("PASSED")


def test_e11_in_k_rho():
    """Test 10: E_11(th) in K_rho needs an actual relation with 1"""
    print("\n=== Test 10: E_11(th) in K_rho ===")
    with working_precision(20):
        rho, data = _carlitz_data()
        t = rho.tower
        cert = eta_of_endo(rho, rho.rho_t(), data)
        rows = {r.identity: r for r in cert.reports}
        assert rows["E_11(th) in K_rho"].passed
        assert cert.relation is not None
        assert proportional(cert.relation.coeffs, [Poly.one(t), Poly(t, [0, 1])]), "E_11(th) = th"

        one = TwistedPoly.one(t)
        relation, report = _e11_relation(one, one, lattice_periods(rho, depth=2).omegas[0])
        assert relation is None and not report.passed, "the period is not a constant"
    print("PASSED")


def test_cm_centralizers():
    """Test 11: s and the eta centralizer for the Carlitz, non-CM and CM modules"""
    print("\n=== Test 11: Endomorphism Algebras ===")
    with working_precision(32):
        cm = DrinfeldModule.from_descriptor(parse_descriptor("rank2-cm-q2"))
        assert endo_ring_degree(cm, 4, 2) == 2
        gens = endomorphism_generators(cm, 4, 2)
        assert len(gens) == 2 and all(g.degree == 0 for g in gens), "constants of F_4"
        assert any(not cm.tower.in_fq(g.constant_term.coeffs()[0]) for g in gens)

        cases = [
            (DrinfeldModule.carlitz(2), 1, 1, 1),
            (DrinfeldModule.from_descriptor(parse_descriptor("rank2-noncm-q2")), 2, 2, 4),
            (cm, 4, 2, 2),
        ]
        for rho, B, d, expected in cases:
            data = build_psi(rho, lattice_periods(rho, depth=3).omegas, N)
            assert not data.fallback, f"{rho.name}: Upsilon^(1) not invertible"
            endos = endomorphism_generators(rho, B, d)
            certs = eta_generators(rho, data, endos)
            for c in certs:
                assert c.passed, f"{rho.name} {c.b!r}: {[r.identity for r in c.reports if not r]}"
            assert eta_of_endo(rho, rho.rho_t(), data).passed, f"{rho.name}: eta of rho_t"
            dim = centralizer_dim(EndoAlgebra.from_etas(certs))
            assert dim == expected, f"{rho.name}: centralizer dimension {dim}, expected {expected}"
    print("PASSED")



def main():
    test_phi_and_v()
    test_requires_normalized()
    test_carlitz_psi()
    test_endomorphism_matrix()
    test_reconstruct_entry()
    test_eta_of_carlitz_t()
    test_extension_block()
    test_baer_sum()
    test_triviality_witness()
    test_e11_in_k_rho()
    test_cm_centralizers()
    print("\n" + "=" * 50)
    print("ALL TESTS PASSED!")
    print("=" * 50)


if __name__ == "__main__":
    try:
        main()
    except AssertionError as e:
        print(f"\nTEST FAILED: {e}")
        sys.exit(1)
