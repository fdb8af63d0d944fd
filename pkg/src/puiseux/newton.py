"""
Newton Polygon Root Finding

Roots of polynomials whose coefficients are PuiseuxNumbers. The lower
convex hull of the points (i, val P_i) gives the valuations of the roots;
each edge contributes a residue polynomial whose roots are the leading
coefficients. Simple residue roots are refined by Newton iteration,
repeated ones by recursion on the shifted polynomial.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

import galois

from .number import PuiseuxNumber, working_precision
from ..algebra.fields import FieldTower
from ..errors import WildRamification, ResidueFieldTooLarge, FieldTooLarge

log = logging.getLogger("drinfeld.puiseux")

Root = Tuple[PuiseuxNumber, int]


@dataclass(frozen=True)
class Segment:
    """One edge of the lower hull, from index `start` to `end`."""

    start: int
    end: int
    slope: Fraction

    @property
    def length(self) -> int:
        return self.end - self.start

    @property
    def root_valuation(self) -> Fraction:
        return -self.slope


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class NewtonPolygon:
    """
    Lower convex hull of (i, val P_i) over the coefficients that are
    nonzero to precision.
    """

    def __init__(self, points: Sequence[Tuple[int, Fraction]]):
        self.points = sorted(points)
        hull: List[Tuple[int, Fraction]] = []
        for pt in self.points:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
                hull.pop()
            hull.append(pt)
        self.vertices = hull
        self.segments = [
            Segment(a[0], b[0], Fraction(b[1] - a[1]) / (b[0] - a[0]))
            for a, b in zip(hull, hull[1:])
        ]

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[PuiseuxNumber]) -> "NewtonPolygon":
        return cls([(i, c.val) for i, c in enumerate(coeffs) if not c.is_zero()])

    def on_segment(self, seg: Segment, i: int, value: Fraction) -> bool:
        y0 = dict(self.vertices)[seg.start]
        return value == y0 + seg.slope * (i - seg.start)

    def slopes(self) -> List[Tuple[Fraction, int]]:
        """Root valuations with the number of roots of each."""
        return [(s.root_valuation, s.length) for s in self.segments]

    def __repr__(self) -> str:
        return f"NewtonPolygon(vertices={self.vertices})"


# ----------------------------------------------------------------------
# polynomial helpers


def evaluate(coeffs: Sequence[PuiseuxNumber], x: PuiseuxNumber) -> PuiseuxNumber:
    """Sum of P_i x^i over the nonzero coefficients."""
    q = x.tower.q
    acc = None
    power_cache = {}
    for i, c in enumerate(coeffs):
        if c.is_zero() and c.is_exact_zero():
            continue
        if i == 0:
            term = c
        else:
            if i not in power_cache:
                power_cache[i] = _power(x, i, q)
            term = c * power_cache[i]
        acc = term if acc is None else acc + term
    if acc is None:
        return PuiseuxNumber.zero(x.tower)
    return acc


def _power(x: PuiseuxNumber, i: int, q: int) -> PuiseuxNumber:
    n, k = i, 0
    while n % q == 0 and n > 1:
        n //= q
        k += 1
    if n == 1:
        return x.frob_power(k)
    return x ** i


def derivative(coeffs: Sequence[PuiseuxNumber]) -> List[PuiseuxNumber]:
    p = coeffs[0].tower.p if coeffs else 2
    out = []
    for i in range(1, len(coeffs)):
        m = i % p
        out.append(coeffs[i] * m if m else PuiseuxNumber.zero(coeffs[i].tower))
    return out


def taylor_shift(coeffs: Sequence[PuiseuxNumber], x0: PuiseuxNumber) -> List[PuiseuxNumber]:
    """Coefficients of Q(y) = P(x0 + y)."""
    p = x0.tower.p
    deg = len(coeffs) - 1
    powers = [PuiseuxNumber.one(x0.tower)]
    for _ in range(deg):
        powers.append(powers[-1] * x0)
    out = []
    for k in range(deg + 1):
        acc = PuiseuxNumber.zero(x0.tower)
        for i in range(k, deg + 1):
            c = coeffs[i]
            if c.is_zero() and c.is_exact_zero():
                continue
            b = _binom_mod(i, k, p)
            if b:
                acc = acc + (c * powers[i - k]) * b
        out.append(acc)
    return out


def _binom_mod(n: int, k: int, p: int) -> int:
    # Lucas
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        num = den = 1
        for j in range(ki):
            num *= ni - j
            den *= j + 1
        result = result * (num // den) % p
        n //= p
        k //= p
    return result


# ----------------------------------------------------------------------
# root finding


class _Solver:
    def __init__(self, allow_wild: bool, max_field_degree: int, max_ramification: int):
        self.allow_wild = allow_wild
        self.max_field_degree = max_field_degree
        self.max_ramification = max_ramification
        self.wild_deficit = 0

    def residue_roots(self, coeffs, poly: NewtonPolygon, seg: Segment):
        """Roots of the residue polynomial of `seg` in a large enough field."""
        tower = coeffs[seg.start].tower
        GF = tower.GF
        res = GF.Zeros(seg.length + 1)
        for i in range(seg.start, seg.end + 1):
            c = coeffs[i]
            if not c.is_zero() and poly.on_segment(seg, i, c.val):
                res[i - seg.start] = c.lead()
        R = galois.Poly(res, field=GF, order="asc")
        factors, _ = (R // galois.Poly([R.coeffs[0]], field=GF)).factors()
        ext = 1
        for f in factors:
            ext = lcm(ext, int(f.degree))
        if ext > 1:
            if tower.d * ext > self.max_field_degree:
                raise ResidueFieldTooLarge(
                    f"residue field F_(q^{tower.d * ext}) exceeds the cap F_(q^{self.max_field_degree})")
            try:
                target = tower.extend(ext)
            except FieldTooLarge as exc:
                raise ResidueFieldTooLarge(
                    f"residue polynomial needs degree {tower.degree * ext} over F_p") from exc
        else:
            target = tower
        R = galois.Poly(tower.embed(res, target), field=target.GF, order="asc")
        found, mult = R.roots(multiplicity=True)
        pairs = [(found[i], int(mult[i])) for i in range(found.size) if found[i] != 0]
        return target, sorted(pairs, key=lambda item: int(item[0]))

    def refine(self, coeffs, x: PuiseuxNumber) -> PuiseuxNumber:
        """Newton iteration x <- x - P(x)/P'(x) until P(x) vanishes to precision."""
        dcoeffs = derivative(coeffs)
        steps = max(PuiseuxNumber.window * x.e, 1).bit_length() + 4
        for step in range(steps):
            value = evaluate(coeffs, x)
            if value.is_zero():
                log.debug("newton step %d: residual zero to precision %s", step, value.cap)
                return x
            slope = evaluate(dcoeffs, x)
            if slope.is_zero():
                log.debug("newton step %d: derivative vanishes to precision", step)
                return x
            log.debug("newton step %d: residual valuation %s", step, value.val)
            nxt = x - value / slope
            if nxt.equals_to_prec(x):
                return nxt
            x = nxt
        return x

    def solve(self, coeffs: List[PuiseuxNumber], lower: Optional[Fraction], depth: int) -> List[Root]:
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        if len(coeffs) <= 1:
            return []
        roots: List[Root] = []
        zeros = 0
        while zeros < len(coeffs) and coeffs[zeros].is_zero():
            zeros += 1
        if zeros:
            roots.append((PuiseuxNumber.zero(coeffs[0].tower), zeros))
        poly = NewtonPolygon.from_coeffs(coeffs)
        for seg in poly.segments:
            v = seg.root_valuation
            if lower is not None and v <= lower:
                continue
            if v.denominator % coeffs[0].tower.p == 0:
                if not self.allow_wild:
                    raise WildRamification(
                        f"{seg.length} root(s) of valuation {v} need ramification divisible by p")
                self.wild_deficit += seg.length
                log.info("skipping %d wildly ramified root(s) of valuation %s", seg.length, v)
                continue
            e = lcm(v.denominator, max(c.e for c in coeffs))
            if e > self.max_ramification:
                raise ResidueFieldTooLarge(f"ramification {e} exceeds the cap {self.max_ramification}")
            target, pairs = self.residue_roots(coeffs, poly, seg)
            lifted = [c.lift_tower(target) for c in coeffs]
            for c, mu in pairs:
                x0 = PuiseuxNumber.monomial(target, c, -v)
                if mu == 1:
                    roots.append((self.refine(lifted, x0), 1))
                    continue
                log.debug("residue root of multiplicity %d at valuation %s, depth %d", mu, v, depth)
                shifted = taylor_shift(lifted, x0)
                found = self.solve(shifted, v, depth + 1)
                if not found:
                    roots.append((x0, mu))
                for y, m in found:
                    roots.append((x0 + y, m))
        return roots


def newton_roots(
    coeffs: Sequence[PuiseuxNumber],
    precision: Optional[int] = None,
    allow_wild: bool = False,
    max_field_degree: int = 12,
    max_ramification: int = 64,
) -> List[Root]:
    """
    All roots of P(x) = sum coeffs[i] x^i in an algebraic closure.

    Args:
        coeffs: Ascending coefficients; the last must be nonzero to precision
        precision: Relative window for the roots (defaults to the current one)
        allow_wild: Skip wildly ramified edges instead of raising
        max_field_degree: Largest residue extension d of F_(q^d)
        max_ramification: Largest ramification index

    Returns:
        List of (root, multiplicity), lifted to a common field and
        ramification, sorted by (valuation, leading coefficient)

    Raises:
        WildRamification: an edge slope has denominator divisible by p
        ResidueFieldTooLarge: a residue extension or ramification exceeds its cap
    """
    roots, _ = tame_roots(coeffs, precision, allow_wild, max_field_degree, max_ramification)
    return roots


def tame_roots(
    coeffs: Sequence[PuiseuxNumber],
    precision: Optional[int] = None,
    allow_wild: bool = True,
    max_field_degree: int = 12,
    max_ramification: int = 64,
) -> Tuple[List[Root], int]:
    """
    Like newton_roots but also reports how many roots were skipped as wild.
    """
    coeffs = list(coeffs)
    if not coeffs:
        return [], 0
    tower = coeffs[0].tower
    for c in coeffs[1:]:
        tower = tower.join(c.tower)
    coeffs = [c.lift_tower(tower) for c in coeffs]
    solver = _Solver(allow_wild, max_field_degree, max_ramification)
    window = precision if precision is not None else PuiseuxNumber.window
    with working_precision(window):
        roots = solver.solve(coeffs, None, 0)
    if not roots:
        return [], solver.wild_deficit
    common = roots[0][0].tower
    e = 1
    for x, _ in roots:
        common = common.join(x.tower)
        e = lcm(e, x.e)
    lifted = []
    for x, m in roots:
        y = x.lift_tower(common)
        if not y.is_exact_zero():
            y = y.lift_e(e)
        lifted.append((y, m))
    lifted.sort(key=lambda item: item[0].sort_key())
    log.debug("found %d root(s), %d skipped as wild", sum(m for _, m in lifted), solver.wild_deficit)
    return lifted, solver.wild_deficit


def dominant_root(
    coeffs: Sequence[PuiseuxNumber],
    precision: Optional[int] = None,
    max_field_degree: int = 12,
) -> PuiseuxNumber:
    """
    The root of largest valuation (smallest absolute value) of P.

    Only the first edge of the Newton polygon is solved. When that edge
    has a single root it is refined directly; otherwise the first root of
    the edge in newton_roots order is returned.

    Raises:
        WildRamification: the first edge is wildly ramified
    """
    coeffs = list(coeffs)
    tower = coeffs[0].tower
    for c in coeffs[1:]:
        tower = tower.join(c.tower)
    coeffs = [c.lift_tower(tower) for c in coeffs]
    if coeffs[0].is_zero():
        return PuiseuxNumber.zero(tower)
    window = precision if precision is not None else PuiseuxNumber.window
    with working_precision(window):
        poly = NewtonPolygon.from_coeffs(coeffs)
        seg = poly.segments[0]
        v = seg.root_valuation
        if v.denominator % tower.p == 0:
            raise WildRamification(f"dominant root of valuation {v} needs ramification divisible by p")
        if seg.length == 1:
            lead = -coeffs[seg.start].lead() / coeffs[seg.end].lead()
            x0 = PuiseuxNumber.monomial(tower, lead, -v)
            return _Solver(False, max_field_degree, 64).refine(coeffs, x0)
    roots = newton_roots(coeffs, precision, max_field_degree=max_field_degree)
    best = max(x.val for x, _ in roots)
    return next(x for x, _ in roots if x.val == best)
