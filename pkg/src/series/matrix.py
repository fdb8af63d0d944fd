"""
Tate Matrices and Residual Reports

Matrices with TateSeries entries (twist acts entrywise), inversion over
the series ring, and the residual bookkeeping shared by every identity
check.
"""

import logging
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .tate import TateSeries
from ..algebra.fields import FieldTower
from ..puiseux.number import PuiseuxNumber, EXACT
from ..errors import ShapeMismatch, NonUnitConstantTerm, ZeroToPrec

log = logging.getLogger("drinfeld.series")


class TateMatrix:
    """
    Matrix over the truncated Tate algebra.

    Attributes:
        rows: List of rows, each a list of TateSeries
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[TateSeries]]):
        self.rows = [list(r) for r in rows]
        if not self.rows or not self.rows[0]:
            raise ShapeMismatch("empty matrix")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ShapeMismatch("ragged matrix rows")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def N(self) -> int:
        return min(x.N for r in self.rows for x in r)

    @property
    def tower(self) -> FieldTower:
        return self.rows[0][0].tower

    def __getitem__(self, ij) -> TateSeries:
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, tower: FieldTower, n: int, N: int) -> "TateMatrix":
        return cls([[TateSeries.one(tower, N) if i == j else TateSeries.zero(tower, N)
                     for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, tower: FieldTower, n: int, m: int, N: int) -> "TateMatrix":
        return cls([[TateSeries.zero(tower, N) for _ in range(m)] for _ in range(n)])

    def transpose(self) -> "TateMatrix":
        n, m = self.shape
        return TateMatrix([[self.rows[i][j] for i in range(n)] for j in range(m)])

    def __add__(self, other: "TateMatrix") -> "TateMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return TateMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "TateMatrix":
        return TateMatrix([[-a for a in r] for r in self.rows])

    def __sub__(self, other: "TateMatrix") -> "TateMatrix":
        return self + (-other)

    def __matmul__(self, other: "TateMatrix") -> "TateMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        N = min(self.N, other.N)
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = TateSeries.zero(self.tower, N)
                for s in range(k):
                    a, b = self.rows[i][s], other.rows[s][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return TateMatrix(out)

    def scale(self, c) -> "TateMatrix":
        return TateMatrix([[a * c for a in r] for r in self.rows])

    def twist(self, n: int) -> "TateMatrix":
        """B^(n) entrywise."""
        return TateMatrix([[a.twist(n) for a in r] for r in self.rows])

    def constant_term(self) -> List[List[PuiseuxNumber]]:
        return [[a.coeffs[0] for a in r] for r in self.rows]

    def eval_at_theta(self, target: Optional[Fraction] = None) -> List[List[PuiseuxNumber]]:
        return [[a.eval_at_theta(target) for a in r] for r in self.rows]

    def inv(self) -> "TateMatrix":
        """
        Inverse in Mat_n of the series ring.

        Solves M_0 B_m = -sum_{k>=1} M_k B_(m-k) degree by degree, with
        M_0 inverted by Gaussian elimination over Puiseux numbers.

        Raises:
            NonUnitConstantTerm: the constant term matrix is singular to precision
        """
        n, m = self.shape
        if n != m:
            raise ShapeMismatch(f"cannot invert a {n}x{m} matrix")
        N = self.N
        tower = self.tower
        slices = [[[self.rows[i][j].coeffs[k] for j in range(n)] for i in range(n)] for k in range(N)]
        m0_inv = puiseux_inverse(slices[0])
        blocks = [m0_inv]
        for deg in range(1, N):
            acc = [[PuiseuxNumber.zero(tower) for _ in range(n)] for _ in range(n)]
            for k in range(1, deg + 1):
                Mk = slices[k]
                if all(x.is_exact_zero() for row in Mk for x in row):
                    continue
                acc = _padd(acc, _pmul(Mk, blocks[deg - k]))
            blocks.append(_pmul(m0_inv, [[-x for x in row] for row in acc]))
        return TateMatrix([[TateSeries(tower, N, [blocks[k][i][j] for k in range(N)])
                            for j in range(n)] for i in range(n)])

    def det(self) -> TateSeries:
        """Determinant by cofactor expansion (n <= 4 in practice)."""
        n, m = self.shape
        if n != m:
            raise ShapeMismatch("determinant of a non-square matrix")
        if n == 1:
            return self.rows[0][0]
        acc = TateSeries.zero(self.tower, self.N)
        for j in range(n):
            minor = TateMatrix([r[:j] + r[j + 1:] for r in self.rows[1:]])
            term = self.rows[0][j] * minor.det()
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    def to_dict(self) -> dict:
        return {"shape": list(self.shape), "rows": [[a.to_dict() for a in r] for r in self.rows]}

    def __repr__(self) -> str:
        return f"TateMatrix(shape={self.shape}, N={self.N})"


# ----------------------------------------------------------------------
# Puiseux matrices


def _pmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    tower = A[0][0].tower
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = PuiseuxNumber.zero(tower)
            for s in range(k):
                if A[i][s].is_exact_zero() or B[s][j].is_exact_zero():
                    continue
                acc = acc + A[i][s] * B[s][j]
            row.append(acc)
        out.append(row)
    return out


def _padd(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def puiseux_inverse(M: Sequence[Sequence[PuiseuxNumber]]) -> List[List[PuiseuxNumber]]:
    """
    Gauss-Jordan inverse of a square Puiseux matrix, pivoting on the
    entry of smallest valuation.

    Raises:
        NonUnitConstantTerm: no usable pivot in some column
    """
    n = len(M)
    tower = M[0][0].tower
    A = [list(r) + [PuiseuxNumber.one(tower) if i == j else PuiseuxNumber.zero(tower) for j in range(n)]
         for i, r in enumerate(M)]
    for col in range(n):
        candidates = [i for i in range(col, n) if not A[i][col].is_zero()]
        if not candidates:
            raise NonUnitConstantTerm(f"pivot column {col} vanishes to precision")
        piv = min(candidates, key=lambda i: A[i][col].val)
        A[col], A[piv] = A[piv], A[col]
        try:
            inv = A[col][col].inv()
        except ZeroToPrec as exc:
            raise NonUnitConstantTerm(str(exc)) from exc
        A[col] = [x * inv for x in A[col]]
        for i in range(n):
            if i == col or A[i][col].is_exact_zero():
                continue
            f = A[i][col]
            A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return [r[n:] for r in A]


# ----------------------------------------------------------------------
# residuals


@dataclass
class ResidualReport:
    """
    Outcome of comparing two sides of an identity coefficient by coefficient.

    gain = val(lhs - rhs) - min(val lhs, val rhs); min_valuation is the
    smallest gain and target the attained relative precision less the
    safety slots.
    """
    identity: str
    min_valuation: float
    target: float
    passed: bool
    compared: int = 0
    detail: str = ""
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def __bool__(self) -> bool:
        return self.passed


def _tate_depth(x) -> Optional[int]:
    """Smallest t-truncation among the Tate objects inside x."""
    if isinstance(x, (TateSeries, TateMatrix)):
        return x.N
    if isinstance(x, PuiseuxNumber):
        return None
    depths = [d for d in (_tate_depth(item) for item in x) if d is not None]
    return min(depths) if depths else None


def _flatten(x, N: Optional[int] = None) -> List[PuiseuxNumber]:
    if isinstance(x, PuiseuxNumber):
        return [x]
    if isinstance(x, TateSeries):
        return list(x.coeffs[:N])
    if isinstance(x, TateMatrix):
        return [c for r in x.rows for a in r for c in a.coeffs[:N]]
    out = []
    for item in x:
        out.extend(_flatten(item, N))
    return out


def residual(identity: str, lhs, rhs, safety: int = 4, floor: int = 8) -> ResidualReport:
    """
    Compare lhs and rhs (PuiseuxNumbers, series, matrices or nested lists).

    Series are compared up to the smaller t-truncation of the two sides.
    A pair that agrees while one side vanishes to precision counts with
    the cap of its difference measured against the smallest valuation in
    the comparison, so lost precision is caught by the floor.

    Args:
        identity: Name of the identity for the report
        lhs, rhs: Objects of the same shape
        safety: Valuation units allowed to be lost at the end of the window
        floor: Minimum attained relative precision for a pass

    Raises:
        ShapeMismatch: the two sides do not have the same shape
    """
    if isinstance(lhs, TateMatrix) and isinstance(rhs, TateMatrix) and lhs.shape != rhs.shape:
        raise ShapeMismatch(f"{identity}: comparing {lhs.shape} with {rhs.shape}")
    depths = [d for d in (_tate_depth(lhs), _tate_depth(rhs)) if d is not None]
    N = min(depths) if depths else None
    left, right = _flatten(lhs, N), _flatten(rhs, N)
    if len(left) != len(right):
        raise ShapeMismatch(f"{identity}: {len(left)} entries against {len(right)}")
    gains: List[Fraction] = []
    attained: List[Fraction] = []
    bases: List[Fraction] = []
    zero_caps: List[Fraction] = []
    exact = 0
    for a, b in zip(left, right):
        if a.is_exact_zero() and b.is_exact_zero():
            exact += 1
            continue
        diff = a - b
        if diff.is_zero() and (a.is_zero() or b.is_zero()):
            # both sides below the shared cap
            zero_caps.append(diff.cap)
            continue
        base = min(a.val, b.val)
        bases.append(base)
        gains.append(diff.val - base)
        attained.append(diff.cap - base)
    scale = min(bases) if bases else Fraction(0)
    for cap in zero_caps:
        gains.append(cap - scale)
        attained.append(cap - scale)
    if not gains:
        if exact:
            return ResidualReport(identity, float(EXACT), 0.0, True, exact, "both sides exactly zero")
        log.warning("%s: nothing to compare", identity)
        return ResidualReport(identity, 0.0, 0.0, False, 0, "nothing to compare")
    gain = min(gains)
    rel = min(attained)
    target = rel - safety
    passed = gain >= target and rel >= floor
    detail = "" if rel >= floor else f"attained relative precision {rel} below floor {floor}"
    report = ResidualReport(identity, float(gain), float(target), passed, len(gains) + exact, detail)
    log.info("%s: min gain %s, target %s, %s", identity, gain, target, "pass" if passed else "FAIL")
    return report


def vanishing(identity: str, value, reference: Iterable = None, safety: int = 4, floor: int = 8) -> ResidualReport:
    """
    Residual of a value that should be zero, measured relative to the
    size of the terms it was built from (reference), or absolutely.
    """
    values = _flatten(value)
    refs = _flatten(reference) if reference is not None else None
    if refs is not None and len(refs) != len(values):
        raise ShapeMismatch(f"{identity}: {len(values)} values against {len(refs)} references")
    if not values:
        return ResidualReport(identity, 0.0, 0.0, False, 0, "nothing to compare")
    gains, attained = [], []
    for k, v in enumerate(values):
        base = refs[k].val if refs is not None and not refs[k].is_zero() else Fraction(0)
        if v.is_exact_zero():
            continue
        gains.append(v.val - base)
        attained.append(v.cap - base)
    if not gains:
        return ResidualReport(identity, float(EXACT), 0.0, True, 0, "exact zero")
    gain, rel = min(gains), min(attained)
    target = rel - safety
    passed = gain >= target and rel >= floor
    detail = "" if rel >= floor else f"attained precision {rel} below floor {floor}"
    log.info("%s: min gain %s, target %s, %s", identity, gain, target, "pass" if passed else "FAIL")
    return ResidualReport(identity, float(gain), float(target), passed, len(gains), detail)
