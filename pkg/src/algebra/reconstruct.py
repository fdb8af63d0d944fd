"""
Rational Reconstruction

Recovers f = P/Q in F_q(t) from the first coefficients of its power-series
expansion through the minimal linear recurrence (Berlekamp-Massey).
"""

import logging

import galois
import numpy as np

from .fields import FieldTower
from .polynomials import Poly, RationalFn
from ..errors import InsufficientData, NoMatch

log = logging.getLogger("drinfeld.algebra")


def berlekamp_massey(seq):
    """
    Shortest connection polynomial C with C(0) = 1 generating seq.

    Args:
        seq: 1-D FieldArray

    Returns:
        (C, L): C as galois.Poly, L the recurrence length
    """
    GF = type(seq)
    C = galois.Poly([1], field=GF)
    B = galois.Poly([1], field=GF)
    L = 0
    m = 1
    b = GF(1)
    for N in range(seq.size):
        c_asc = C.coeffs[::-1]
        if c_asc.size < L + 1:
            c_asc = np.concatenate([c_asc, GF.Zeros(L + 1 - c_asc.size)]).view(GF)
        d = seq[N]
        for i in range(1, L + 1):
            d = d + c_asc[i] * seq[N - i]
        if d == 0:
            m += 1
            continue
        T = galois.Poly(C.coeffs, field=GF)
        C = C - (d / b) * (B * galois.Poly.Degrees([m], coeffs=[1], field=GF))
        if 2 * L <= N:
            L = N + 1 - L
            B = T
            b = d
            m = 1
        else:
            m += 1
    return C, L


def rational_reconstruct(seq, max_deg: int, tower: FieldTower = None, var: str = 't') -> RationalFn:
    """
    Find P/Q with deg P, deg Q <= max_deg whose expansion is seq.

    Args:
        seq: 1-D FieldArray (coefficients of 1, t, t^2, ...)
        max_deg: Degree cap for numerator and denominator
        tower: Field of the coefficients (inferred from seq when omitted)
        var: Variable tag of the result

    Returns:
        RationalFn in lowest terms

    Raises:
        InsufficientData: fewer than 2*max_deg + 2 terms
        NoMatch: no rational function within the cap reproduces seq
    """
    if seq.size < 2 * max_deg + 2:
        raise InsufficientData(
            f"rational reconstruction at degree {max_deg} needs {2 * max_deg + 2} terms, got {seq.size}")
    GF = type(seq)
    if tower is None:
        tower = _tower_of(GF)
    C, L = berlekamp_massey(seq)
    Q = Poly(tower, C.coeffs[::-1].copy(), var)
    series = Poly(tower, seq.copy(), var)
    P = Poly(tower, (Q * series).coeffs(max(L, 1)), var)
    f = RationalFn(P, Q)
    if f.num.degree > max_deg or f.den.degree > max_deg:
        raise NoMatch(f"minimal recurrence has length {L}, beyond degree cap {max_deg}")
    if not np.array_equal(np.asarray(f.expand(seq.size)), np.asarray(seq)):
        raise NoMatch("reconstructed function does not reproduce the sequence")
    log.debug("reconstructed %r from %d terms", f, seq.size)
    return f


def _tower_of(GF) -> FieldTower:
    p = int(GF.characteristic)
    return FieldTower.get(p, int(GF.degree), 1)
