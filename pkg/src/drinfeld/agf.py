"""
Anderson Generating Functions

f_u(t) = sum_m exp_rho(u / th^(m+1)) t^m, truncated at t^N, and the checks
of its twisted functional equation.
"""

import logging
from typing import Optional

from .module import DrinfeldModule
from .exponential import exp_eval, exp_coeffs
from ..puiseux.number import PuiseuxNumber
from ..series.tate import TateSeries
from ..series.matrix import ResidualReport, residual

log = logging.getLogger("drinfeld.core")


def agf(rho: DrinfeldModule, u: PuiseuxNumber, N: int) -> TateSeries:
    """Anderson generating function of u, to t^N."""
    if u.is_exact_zero():
        return TateSeries.zero(rho.tower, N)
    coeffs = [exp_eval(rho, u.shift(-(m + 1))) for m in range(N)]
    return TateSeries(u.tower.join(rho.tower), N, coeffs)


def closed_form_terms(rho: DrinfeldModule, u: PuiseuxNumber, max_terms: int = 64) -> int:
    """
    Number of terms a_i u^(q^i) th^(-q^i) needed before they fall a full
    working window below the leading one. Higher t-coefficients shrink
    faster, so the count covers every m.
    """
    q = rho.q
    lead = None
    prev = None
    for i in range(max_terms):
        a_i = exp_coeffs(rho, i)[i]
        if a_i.is_exact_zero():
            continue
        v = (a_i * u.frob_power(i)).val + q ** i
        if lead is not None and v > prev and v >= lead + PuiseuxNumber.window:
            return i
        lead = v if lead is None else min(lead, v)
        prev = v
    log.warning("closed form of the agf truncated at %d terms", max_terms)
    return max_terms


def agf_closed_form(rho: DrinfeldModule, u: PuiseuxNumber, N: int, terms: Optional[int] = None) -> TateSeries:
    """
    Same series from sum_i a_i u^(q^i) / (th^(q^i) - t): the coefficient of
    t^m is sum_i a_i u^(q^i) th^(-q^i (m+1)). By default the sum runs until
    the working window is exhausted.
    """
    if u.is_exact_zero():
        return TateSeries.zero(rho.tower, N)
    terms = terms if terms is not None else closed_form_terms(rho, u)
    alpha = exp_coeffs(rho, terms)
    q = rho.q
    powers = [a * u.frob_power(i) for i, a in enumerate(alpha)]
    coeffs = []
    for m in range(N):
        acc = PuiseuxNumber.zero(u.tower)
        for i, p in enumerate(powers):
            acc = acc + p.shift(-(q ** i) * (m + 1))
        coeffs.append(acc)
    return TateSeries(u.tower.join(rho.tower), N, coeffs)


def twisted_combination(rho: DrinfeldModule, f: TateSeries) -> TateSeries:
    """k_1 f^(1) + ... + k_r f^(r)."""
    acc = TateSeries.zero(f.tower, f.N)
    for j, k in enumerate(rho.kappa, start=1):
        if k.is_exact_zero():
            continue
        acc = acc + f.twist(j) * k
    return acc


def agf_functional_residual(rho: DrinfeldModule, u: PuiseuxNumber, f: Optional[TateSeries] = None,
                            N: int = 24) -> ResidualReport:
    """
    k_1 f^(1) + ... + k_r f^(r) = (t - th) f + exp(u), coefficientwise.
    """
    f = f if f is not None else agf(rho, u, N)
    lhs = twisted_combination(rho, f)
    rhs = TateSeries.t_minus_theta(f.tower, f.N) * f + exp_eval(rho, u)
    return residual("agf functional equation", lhs, rhs)


def agf_residue_check(rho: DrinfeldModule, u: PuiseuxNumber, f: Optional[TateSeries] = None,
                      N: int = 24) -> ResidualReport:
    """At t = th the twisted combination specializes to exp(u) - u."""
    f = f if f is not None else agf(rho, u, N)
    value = twisted_combination(rho, f).eval_at_theta()
    return residual("agf at t = th", value, exp_eval(rho, u) - u)
