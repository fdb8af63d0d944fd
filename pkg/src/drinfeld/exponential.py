"""
Exponential and Logarithm

Coefficients of exp_rho(z) = sum a_i z^(q^i) and log_rho(z) = sum b_i z^(q^i),
their evaluation at Puiseux points, and exact checks of the functional
equation and of exp o log = log o exp = z.

The recursions are written once over a generic scalar type; the same code
runs on PuiseuxNumbers, on exact RationalFn in th, and on finite-field
elements after specializing th at a point of F_(q^k).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence

from .module import DrinfeldModule
from ..algebra.fields import FieldTower, large_fields
from ..algebra.polynomials import Poly, RationalFn
from ..puiseux.number import PuiseuxNumber, EXACT
from ..series.matrix import ResidualReport, residual
from ..errors import LogDivergence

log = logging.getLogger("drinfeld.core")

# q^I at or below this bound is checked with rational functions
RATIONAL_LIMIT = 64

LOG_WINDOW = 5


# ----------------------------------------------------------------------
# generic recursions


def _exp_recursion(theta_pow: Callable[[int], object], kappa: Sequence, frob: Callable, I: int, known: List) -> List:
    """
    a_i (th^(q^i) - th) = sum_{j=1}^{min(i, r)} k_j a_(i-j)^(q^j).

    `known` holds a_0 .. a_m already; it is extended in place to I.
    """
    r = len(kappa)
    theta = theta_pow(0)
    for i in range(len(known), I + 1):
        acc = None
        for j in range(1, min(i, r) + 1):
            term = kappa[j - 1] * frob(known[i - j], j)
            acc = term if acc is None else acc + term
        known.append(acc / (theta_pow(i) - theta))
    return known


def _log_recursion(theta_pow: Callable[[int], object], kappa: Sequence, frob: Callable, I: int, known: List) -> List:
    """b_i (th - th^(q^i)) = sum_{j=1}^{min(i, r)} b_(i-j) k_j^(q^(i-j))."""
    r = len(kappa)
    theta = theta_pow(0)
    for i in range(len(known), I + 1):
        acc = None
        for j in range(1, min(i, r) + 1):
            term = known[i - j] * frob(kappa[j - 1], i - j)
            acc = term if acc is None else acc + term
        known.append(acc / (theta - theta_pow(i)))
    return known


# ----------------------------------------------------------------------
# Puiseux coefficients


def _puiseux_theta_pow(tower: FieldTower):
    def theta_pow(i: int) -> PuiseuxNumber:
        return PuiseuxNumber.monomial(tower, 1, tower.q ** i)
    return theta_pow


def _puiseux_frob(x: PuiseuxNumber, n: int) -> PuiseuxNumber:
    return x.frob_power(n)


def exp_coeffs(rho: DrinfeldModule, I: int) -> List[PuiseuxNumber]:
    """a_0 .. a_I as PuiseuxNumbers, cached on the module."""
    if I < 0:
        raise ValueError("I must be non-negative")
    with rho._lock:
        if len(rho._alpha) <= I:
            _exp_recursion(_puiseux_theta_pow(rho.tower), rho.kappa, _puiseux_frob, I, rho._alpha)
        return rho._alpha[:I + 1]


def log_coeffs(rho: DrinfeldModule, I: int) -> List[PuiseuxNumber]:
    """b_0 .. b_I as PuiseuxNumbers, cached on the module."""
    if I < 0:
        raise ValueError("I must be non-negative")
    with rho._lock:
        if len(rho._beta) <= I:
            _log_recursion(_puiseux_theta_pow(rho.tower), rho.kappa, _puiseux_frob, I, rho._beta)
        return rho._beta[:I + 1]


# ----------------------------------------------------------------------
# exact coefficients


def _rational_frob(x: RationalFn, n: int) -> RationalFn:
    return x.frob_power(n)


def _rational_theta_pow(tower: FieldTower):
    def theta_pow(i: int) -> RationalFn:
        return RationalFn(Poly.monomial(tower, tower.q ** i))
    return theta_pow


def exp_coeffs_exact(rho: DrinfeldModule, I: int) -> List[RationalFn]:
    """
    a_0 .. a_I as rational functions of th.

    Raises:
        NotExact: some k_j is not a polynomial in th
    """
    kappa = [RationalFn(k) for k in rho.exact_kappa()]
    one = RationalFn(Poly.one(rho.tower))
    return _exp_recursion(_rational_theta_pow(rho.tower), kappa, _rational_frob, I, [one])


def log_coeffs_exact(rho: DrinfeldModule, I: int) -> List[RationalFn]:
    kappa = [RationalFn(k) for k in rho.exact_kappa()]
    one = RationalFn(Poly.one(rho.tower))
    return _log_recursion(_rational_theta_pow(rho.tower), kappa, _rational_frob, I, [one])


@dataclass
class _Specialization:
    """Scalars in which exact identities are checked."""
    label: str
    theta_pow: Callable
    kappa: list
    frob: Callable
    one: object
    is_zero: Callable


def _specialize(rho: DrinfeldModule, I: int) -> _Specialization:
    """
    Rational functions when q^I is small; otherwise th -> lam, a
    primitive element of F_(q^k) with d | k and k > I. No denominator
    th^(q^i) - th with 1 <= i <= I vanishes at lam.
    """
    kappa_polys = rho.exact_kappa()
    q = rho.q
    if q ** I <= RATIONAL_LIMIT:
        return _Specialization(
            label="rational",
            theta_pow=_rational_theta_pow(rho.tower),
            kappa=[RationalFn(k) for k in kappa_polys],
            frob=_rational_frob,
            one=RationalFn(Poly.one(rho.tower)),
            is_zero=lambda x: x.is_zero(),
        )
    d = rho.tower.d
    k = d * (I // d + 1)
    with large_fields(rho.tower.e * k):
        big = FieldTower.get(rho.tower.p, rho.tower.e, k)
    lam = big.generator()
    GF = big.GF
    kappa = [GF(k_.lift(big)(lam)) for k_ in kappa_polys]

    def theta_pow(i: int):
        return lam ** (q ** i)

    def frob(x, n: int):
        return x ** (q ** n)

    log.debug("specializing th at a generator of F_%d^%d", q, k)
    return _Specialization(
        label=f"specialized at a generator of F_({q}^{k})",
        theta_pow=theta_pow,
        kappa=kappa,
        frob=frob,
        one=GF(1),
        is_zero=lambda x: bool(x == 0),
    )


# ----------------------------------------------------------------------
# identity checks


def _rho_t_squared(kappa: Sequence, theta, frob: Callable) -> List:
    """Coefficients of rho_(t^2) = rho_t o rho_t, with k_0 = th."""
    full = [theta] + list(kappa)
    r = len(kappa)
    out = []
    for n in range(2 * r + 1):
        acc = None
        for i in range(max(0, n - r), min(n, r) + 1):
            term = full[i] * frob(full[n - i], i)
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def functional_equation_residual(rho: DrinfeldModule, I: int = 8) -> ResidualReport:
    """
    Check exp(a(th) z) = rho_a(exp(z)) through z^(q^I) for a = t and t^2.

    The a = t case restates the recursion; a = t^2 is an independent
    check of the computed coefficients. Exact modules are checked without
    rounding; otherwise the Puiseux coefficients are compared.
    """
    if not rho.is_exact:
        return _functional_equation_puiseux(rho, I)
    sp = _specialize(rho, I)
    theta = sp.theta_pow(0)
    alpha = _exp_recursion(sp.theta_pow, sp.kappa, sp.frob, I, [sp.one])
    full = [theta] + sp.kappa
    squared = _rho_t_squared(sp.kappa, theta, sp.frob)
    theta2 = theta * theta
    failures = []
    compared = 0
    for n in range(I + 1):
        # z^(q^n) coefficient of exp(th z) - rho_t(exp z)
        lhs = alpha[n] * sp.frob(theta, n)
        rhs = None
        for j in range(0, min(n, len(full) - 1) + 1):
            term = full[j] * sp.frob(alpha[n - j], j)
            rhs = term if rhs is None else rhs + term
        compared += 1
        if not sp.is_zero(lhs - rhs):
            failures.append(("t", n))
        lhs2 = alpha[n] * sp.frob(theta2, n)
        rhs2 = None
        for j in range(0, min(n, len(squared) - 1) + 1):
            term = squared[j] * sp.frob(alpha[n - j], j)
            rhs2 = term if rhs2 is None else rhs2 + term
        compared += 1
        if not sp.is_zero(lhs2 - rhs2):
            failures.append(("t^2", n))
    return _exact_report("exp(a z) = rho_a(exp z)", sp, compared, failures)


def log_exp_residual(rho: DrinfeldModule, I: int = 8) -> ResidualReport:
    """Check exp o log = log o exp = z through z^(q^I), exactly."""
    if not rho.is_exact:
        return _log_exp_puiseux(rho, I)
    sp = _specialize(rho, I)
    alpha = _exp_recursion(sp.theta_pow, sp.kappa, sp.frob, I, [sp.one])
    beta = _log_recursion(sp.theta_pow, sp.kappa, sp.frob, I, [sp.one])
    failures = []
    compared = 0
    for n in range(I + 1):
        el = sum((alpha[i] * sp.frob(beta[n - i], i) for i in range(1, n + 1)), alpha[0] * beta[n])
        le = sum((beta[i] * sp.frob(alpha[n - i], i) for i in range(1, n + 1)), beta[0] * alpha[n])
        target = sp.one if n == 0 else sp.one - sp.one
        compared += 2
        if not sp.is_zero(el - target):
            failures.append(("exp o log", n))
        if not sp.is_zero(le - target):
            failures.append(("log o exp", n))
    return _exact_report("exp o log = log o exp = z", sp, compared, failures)


def _exact_report(identity: str, sp: _Specialization, compared: int, failures) -> ResidualReport:
    passed = not failures
    detail = "" if passed else "nonzero at " + ", ".join(f"{a} z^(q^{n})" for a, n in failures[:6])
    log.info("%s (%s): %s", identity, sp.label, "pass" if passed else "FAIL")
    return ResidualReport(identity, float(EXACT) if passed else 0.0, 0.0, passed, compared, detail,
                          {"mode": sp.label})


def _functional_equation_puiseux(rho: DrinfeldModule, I: int) -> ResidualReport:
    alpha = exp_coeffs(rho, I)
    theta = PuiseuxNumber.theta(rho.tower)
    rt = rho.rho_t()
    rt2 = rt * rt
    lhs, rhs = [], []
    for n in range(I + 1):
        for a_theta, image in ((theta, rt), (theta * theta, rt2)):
            lhs.append(alpha[n] * a_theta.frob_power(n))
            acc = PuiseuxNumber.zero(rho.tower)
            for j in range(0, min(n, image.degree) + 1):
                acc = acc + image.coefficient(j) * alpha[n - j].frob_power(j)
            rhs.append(acc)
    report = residual("exp(a z) = rho_a(exp z)", lhs, rhs)
    report.extra["mode"] = "puiseux"
    return report


def _log_exp_puiseux(rho: DrinfeldModule, I: int) -> ResidualReport:
    alpha = exp_coeffs(rho, I)
    beta = log_coeffs(rho, I)
    lhs, rhs = [], []
    one = PuiseuxNumber.one(rho.tower)
    for n in range(1, I + 1):
        # the n-th coefficient of exp o log is a_n + sum_{i<n} a_i b_(n-i)^(q^i)
        lhs.append(alpha[n])
        rhs.append(-sum((alpha[i] * beta[n - i].frob_power(i) for i in range(1, n)), beta[n]))
        lhs.append(beta[n])
        rhs.append(-sum((beta[i] * alpha[n - i].frob_power(i) for i in range(1, n)), alpha[n]))
    report = residual("exp o log = log o exp = z", lhs, rhs) if lhs else \
        residual("exp o log = log o exp = z", [one], [one])
    report.extra["mode"] = "puiseux"
    return report


# ----------------------------------------------------------------------
# evaluation


def exp_eval(rho: DrinfeldModule, z: PuiseuxNumber, max_terms: int = 64) -> PuiseuxNumber:
    """
    exp_rho(z), summed until the terms shrink and the next one lies below
    the running cap.

    Exactly vanishing coefficients (k_1 = 0 gives a_1 = 0) are skipped
    and do not count as shrinking.
    """
    if z.is_zero():
        return PuiseuxNumber.zero(z.tower, None if z.is_exact_zero() else z.cap)
    acc = None
    prev = None
    for i in range(max_terms):
        a_i = exp_coeffs(rho, i)[i]
        if a_i.is_exact_zero():
            continue
        term = a_i * z.frob_power(i)
        shrinking = prev is not None and term.val > prev
        prev = term.val
        if acc is not None and shrinking and term.val >= acc.cap:
            log.debug("exp_eval: stopped after %d terms at cap %s", i, acc.cap)
            return acc
        acc = term if acc is None else acc + term
    log.warning("exp_eval: %d terms summed without reaching the cap %s", max_terms, acc.cap)
    return acc


def log_eval(rho: DrinfeldModule, z: PuiseuxNumber, window: int = LOG_WINDOW,
             max_terms: int = 40) -> PuiseuxNumber:
    """
    log_rho(z) with a convergence certificate.

    The last `window` term valuations val(b_i z^(q^i)) must increase
    strictly and the last one must reach the running cap. Terms with an
    exactly vanishing coefficient are left out of the window.

    Raises:
        LogDivergence: `window` consecutive terms fail to increase, or
            max_terms is reached without a certificate
    """
    if z.is_zero():
        return PuiseuxNumber.zero(z.tower, None if z.is_exact_zero() else z.cap)
    acc = None
    vals: List[Fraction] = []
    for i in range(max_terms):
        b_i = log_coeffs(rho, i)[i]
        if b_i.is_exact_zero():
            continue
        term = b_i * z.frob_power(i)
        vals.append(term.val)
        acc = term if acc is None else acc + term
        if len(vals) >= window:
            recent = vals[-window:]
            if all(b > a for a, b in zip(recent, recent[1:])):
                if recent[-1] >= acc.cap:
                    log.debug("log_eval: certified after %d terms, cap %s", i + 1, acc.cap)
                    return acc
            elif all(b <= a for a, b in zip(recent, recent[1:])):
                raise LogDivergence(
                    f"log terms stop decreasing in size at val(z) = {z.val}: "
                    f"valuations {[str(v) for v in recent]}")
    raise LogDivergence(f"log did not converge within {max_terms} terms at val(z) = {z.val}")


def exp_log_roundtrip(rho: DrinfeldModule, z: PuiseuxNumber) -> ResidualReport:
    """exp(log z) = z at a point inside the convergence disk of log."""
    return residual("exp(log z) = z", exp_eval(rho, log_eval(rho, z)), z)


def log_term_valuations(rho: DrinfeldModule, z: PuiseuxNumber, terms: int = 8) -> List[Fraction]:
    """val(b_i z^(q^i)) for the first `terms` terms."""
    return [(b * z.frob_power(i)).val for i, b in enumerate(log_coeffs(rho, terms - 1))]
