"""
Finite Field Towers

Scalars of F_q and its extensions F_{q^d}. Every field is realised as
GF(p^{e*d}) with its Conway polynomial, so the representation is fixed
across runs and the inclusions F_{q^d} -> F_{q^{d'}} (d | d') are the
Conway-compatible maps on primitive elements.
"""

import contextlib
import hashlib
from functools import lru_cache
from math import lcm
from typing import Dict, Tuple, Optional

import numpy as np
import galois

from ..errors import DivisionByZero, TowerMismatch, FieldTooLarge

MAX_Q = 256


@lru_cache(maxsize=None)
def conway_field(p: int, m: int):
    """
    Get the FieldArray class for GF(p^m) defined by the Conway polynomial.

    Args:
        p: Characteristic
        m: Degree over F_p

    Returns:
        galois FieldArray subclass
    """
    if m == 1:
        return galois.GF(p)
    return galois.GF(p ** m, irreducible_poly=galois.conway_poly(p, m))


def discrete_log(x) -> np.ndarray:
    """Discrete logarithms of nonzero elements, base the primitive element."""
    return np.asarray(np.log(x), dtype=np.int64)


class FieldTower:
    """
    The field F_{q^d} with q = p^e, as GF(p^{e*d}).

    Instances are cached: FieldTower.get(p, e, d) always returns the same
    object for the same triple.
    """

    _cache: Dict[Tuple[int, int, int], "FieldTower"] = {}
    max_degree: int = 12

    def __init__(self, p: int, e: int, d: int):
        if not galois.is_prime(p):
            raise TowerMismatch(f"characteristic {p} is not prime")
        if e < 1 or d < 1:
            raise TowerMismatch(f"bad tower exponents e={e}, d={d}")
        if p ** e > MAX_Q:
            raise FieldTooLarge(f"q = {p}^{e} exceeds the supported bound {MAX_Q}")
        if e * d > max(FieldTower.max_degree, e):
            raise FieldTooLarge(
                f"F_(q^{d}) with q = {p}^{e} has degree {e * d} over F_{p}, "
                f"above the cap {FieldTower.max_degree}")
        self.p = p
        self.e = e
        self.d = d
        self.q = p ** e
        self.degree = e * d
        self.order = p ** (e * d)
        self.GF = conway_field(p, e * d)

    @classmethod
    def get(cls, p: int, e: int, d: int = 1) -> "FieldTower":
        key = (p, e, d)
        tower = cls._cache.get(key)
        if tower is None:
            tower = cls(p, e, d)
            cls._cache[key] = tower
        return tower

    @classmethod
    def for_q(cls, q: int, d: int = 1) -> "FieldTower":
        """Build the tower from q = p^e directly."""
        if q < 2:
            raise TowerMismatch(f"q must be a prime power, got {q}")
        if q > MAX_Q:
            raise FieldTooLarge(f"q = {q} exceeds the supported bound {MAX_Q}")
        factors = galois.factors(q)
        if len(factors[0]) != 1:
            raise TowerMismatch(f"q must be a prime power, got {q}")
        return cls.get(factors[0][0], factors[1][0], d)

    # ------------------------------------------------------------------
    # tower relations

    def same_base(self, other: "FieldTower") -> bool:
        return self.p == other.p and self.e == other.e

    def join(self, other: "FieldTower") -> "FieldTower":
        """Smallest tower containing both fields."""
        if not self.same_base(other):
            raise TowerMismatch(f"cannot combine {self} and {other}")
        if other.d == self.d:
            return self
        return FieldTower.get(self.p, self.e, lcm(self.d, other.d))

    def extend(self, k: int) -> "FieldTower":
        return FieldTower.get(self.p, self.e, self.d * k)

    def base(self) -> "FieldTower":
        return FieldTower.get(self.p, self.e, 1)

    def embed(self, x, target: "FieldTower"):
        """
        Map elements of this field into a larger field of the same tower.

        Args:
            x: FieldArray (any shape) of this field
            target: Tower whose d is a multiple of self.d

        Returns:
            FieldArray of target.GF with the same shape
        """
        if target is self:
            return x
        if not self.same_base(target) or target.d % self.d != 0:
            raise TowerMismatch(f"{self} does not embed in {target}")
        raw = np.asarray(x, dtype=np.int64)
        if self.degree == 1:
            return target.GF(raw)
        return _embed_array(self.GF, target.GF, self.order, target.order, x)

    def restrict(self, x, target: "FieldTower"):
        """Inverse of embed for elements lying in the smaller field."""
        if target is self:
            return x
        if target.degree == 1:
            return target.GF(np.asarray(x, dtype=np.int64))
        flat = np.atleast_1d(x)
        out = np.zeros(flat.shape, dtype=np.int64)
        nz = flat != 0
        if np.any(nz):
            logs = discrete_log(flat[nz])
            step = (self.order - 1) // (target.order - 1)
            if np.any(logs % step):
                raise TowerMismatch(f"element does not lie in {target}")
            out[nz] = np.asarray(target.GF.primitive_element ** (logs // step), dtype=np.int64)
        result = target.GF(out)
        return result.reshape(np.shape(x)) if np.ndim(x) else result[0]

    # ------------------------------------------------------------------
    # Frobenius and subfields

    def frob(self, x, n: int = 1):
        """x -> x^(q^n); n may be negative since x^(q^d) = x."""
        k = n % self.d
        if k == 0:
            return x
        return x ** (self.q ** k)

    def in_fq(self, x) -> np.ndarray:
        return np.asarray(self.frob(x, 1) == x)

    def generator(self):
        """The literal 'g': primitive element of F_(q^d)."""
        return self.GF.primitive_element

    @lru_cache(maxsize=None)
    def _moore_inverse(self):
        g = self.generator()
        d = self.d
        M = self.GF.Zeros((d, d))
        for k in range(d):
            for i in range(d):
                M[k, i] = g ** (i * self.q ** k)
        return np.linalg.inv(M)

    def coordinates_over_fq(self, x):
        """
        Coordinates of x in the F_q-basis 1, g, ..., g^(d-1).

        Args:
            x: 1-D FieldArray of this field

        Returns:
            FieldArray of GF(q) with shape (len(x), d)
        """
        x = np.atleast_1d(x)
        base = self.base()
        if self.d == 1:
            return base.GF(np.asarray(x, dtype=np.int64)).reshape(-1, 1)
        X = self.GF.Zeros((self.d, x.size))
        for k in range(self.d):
            X[k] = self.frob(x, k)
        A = self._moore_inverse() @ X
        return self.restrict(A.T, base)

    def from_coordinates(self, coords):
        """Inverse of coordinates_over_fq; coords has shape (n, d) over GF(q)."""
        coords = np.atleast_2d(coords)
        base = self.base()
        lifted = base.embed(base.GF(np.asarray(coords, dtype=np.int64)), self)
        powers = self.generator() ** np.arange(self.d)
        return (lifted * powers).sum(axis=1)

    def random(self, n: int, seed: int = 0):
        rng = np.random.default_rng(seed)
        return self.GF(rng.integers(0, self.order, size=n))

    def fingerprint(self) -> str:
        """Hash input naming the defining polynomial of this field."""
        return f"GF({self.p}^{self.degree}):{self.GF.irreducible_poly}"

    def __repr__(self) -> str:
        return f"<FieldTower: F_{self.q}^{self.d} = GF({self.p}^{self.degree})>"


@contextlib.contextmanager
def large_fields(limit: int):
    """Temporarily raise the degree cap for towers built inside the block."""
    old = FieldTower.max_degree
    FieldTower.max_degree = max(old, limit)
    try:
        yield
    finally:
        FieldTower.max_degree = old


def _embed_array(src, dst, n_src: int, n_dst: int, x):
    flat = np.atleast_1d(x)
    out = np.zeros(flat.shape, dtype=np.int64)
    nz = flat != 0
    if np.any(nz):
        logs = discrete_log(flat[nz])
        step = (n_dst - 1) // (n_src - 1)
        out[nz] = np.asarray(dst.primitive_element ** ((logs * step) % (n_dst - 1)), dtype=np.int64)
    result = dst(out)
    return result.reshape(np.shape(x)) if np.ndim(x) else result[0]


def tables_fingerprint(towers) -> str:
    """SHA-256 over the defining polynomials of the given towers."""
    digest = hashlib.sha256()
    for text in sorted({t.fingerprint() for t in towers}):
        digest.update(text.encode())
    return digest.hexdigest()


class FieldElem:
    """
    A single element of F_(q^d), tagged with its tower.

    Immutable; arithmetic lifts both operands to the joined tower.
    """

    __slots__ = ("tower", "value")

    def __init__(self, tower: FieldTower, value):
        self.tower = tower
        self.value = tower.GF(int(value))

    def _coerce(self, other) -> Tuple["FieldElem", "FieldElem"]:
        if isinstance(other, int):
            other = FieldElem(self.tower, self.tower.GF(other % self.tower.p))
        joined = self.tower.join(other.tower)
        return self.lift(joined), other.lift(joined)

    def lift(self, tower: FieldTower) -> "FieldElem":
        if tower is self.tower:
            return self
        return FieldElem(tower, self.tower.embed(self.value, tower))

    def __add__(self, other):
        a, b = self._coerce(other)
        return FieldElem(a.tower, a.value + b.value)

    def __sub__(self, other):
        a, b = self._coerce(other)
        return FieldElem(a.tower, a.value - b.value)

    def __mul__(self, other):
        a, b = self._coerce(other)
        return FieldElem(a.tower, a.value * b.value)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.tower, -self.value)

    def inv(self) -> "FieldElem":
        if self.value == 0:
            raise DivisionByZero("inverse of 0 in " + repr(self.tower))
        return FieldElem(self.tower, self.value ** -1)

    def __truediv__(self, other):
        a, b = self._coerce(other)
        return a * b.inv()

    def frob(self, n: int = 1) -> "FieldElem":
        return FieldElem(self.tower, self.tower.frob(self.value, n))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = FieldElem(self.tower, other % self.tower.p)
        if not isinstance(other, FieldElem):
            return NotImplemented
        a, b = self._coerce(other)
        return bool(a.value == b.value)

    def __hash__(self):
        return hash((self.tower.p, self.tower.e, self.tower.d, int(self.value)))

    def __repr__(self) -> str:
        from ..parsers.field_parser import format_field_elem
        return format_field_elem(self.value, self.tower)


def gf_arith(a: FieldElem, b: Optional[FieldElem], op: str, n: int = 1) -> FieldElem:
    """
    Exact field arithmetic dispatcher.

    Args:
        a: First operand
        b: Second operand (ignored for 'inv' and 'pow_q')
        op: One of 'add', 'mul', 'inv', 'pow_q'
        n: Frobenius exponent for 'pow_q' (x -> x^(q^n))

    Returns:
        Result as FieldElem
    """
    if op == 'add':
        return a + b
    if op == 'mul':
        return a * b
    if op == 'inv':
        return a.inv()
    if op == 'pow_q':
        return a.frob(n)
    raise ValueError(f"unknown field operation: {op}")
