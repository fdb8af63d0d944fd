"""
Transcendence Predictions and the Galois Report

With s = rank of End(rho) over F_q[t], the periods and quasi-periods of a
rank r module generate a field of transcendence degree r^2/s, and adding n
logarithms independent over the CM field raises it to r(r/s + n).
"""

import logging
from dataclasses import dataclass, field, asdict
from typing import List, Optional

from .centralizer import EndoAlgebra, centralizer_dim
from ..drinfeld.module import DrinfeldModule
from ..drinfeld.morphisms import endo_ring_degree
from ..errors import BadDivisibility, DrinfeldError

log = logging.getLogger("drinfeld.galois")


def _check(r: int, s: int):
    if r < 1 or s < 1 or r % s:
        raise BadDivisibility(f"endomorphism rank {s} does not divide module rank {r}")


def predicted_trdeg_periods(r: int, s: int) -> int:
    """r^2 / s."""
    _check(r, s)
    return r * r // s


def predicted_trdeg_logs(r: int, s: int, n: int) -> int:
    """r (r/s + n)."""
    _check(r, s)
    if n < 0:
        raise BadDivisibility(f"negative number of logarithms: {n}")
    return r * (r // s + n)


@dataclass
class GaloisReport:
    """
    Attributes:
        r, s: Module rank and endomorphism rank (s certified up to the caps;
            None when the bounded search cannot run)
        centralizer_dimension: Dimension of the centralizer of the eta algebra
        predicted_periods: r^2/s
        predicted_logs: r(r/s + n) for the n logarithm points supplied
        relations: Relation-finder summary of the period matrix entries
        inconclusive: Set when s could not be determined
    """
    r: int
    s: Optional[int]
    caps: dict
    centralizer_dimension: Optional[int]
    predicted_periods: Optional[int]
    predicted_logs: Optional[int] = None
    n_logs: int = 0
    relations: Optional[dict] = None
    inconclusive: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        """centralizer_dim = r^2/s, with both sides actually computed."""
        if self.inconclusive or self.centralizer_dimension is None:
            return False
        return self.centralizer_dimension == self.predicted_periods

    def to_dict(self) -> dict:
        out = asdict(self)
        out["consistent"] = self.consistent
        return out


def galois_report(rho: DrinfeldModule, algebra: Optional[EndoAlgebra] = None, B: Optional[int] = None,
                  d: Optional[int] = None, n_logs: int = 0, relations: Optional[dict] = None) -> GaloisReport:
    """
    s from the bounded endomorphism search, the centralizer dimension of the
    eta algebra when supplied, and the predicted transcendence degrees.

    The endomorphism search needs coefficients in F_q[th]; otherwise the
    report is marked inconclusive and carries no prediction.
    """
    B = B if B is not None else 2 * rho.rank
    d = d if d is not None else rho.rank
    r = rho.rank
    if not rho.is_exact:
        log.warning("galois report: coefficients are not polynomials in th, s undetermined")
        return GaloisReport(r, None, {"B": B, "d": d}, None, None, n_logs=n_logs, relations=relations,
                            inconclusive=True,
                            notes=["inconclusive: coefficients are not polynomials in th, "
                                   "so the endomorphism rank s was not determined"])
    s = endo_ring_degree(rho, B, d)
    report = GaloisReport(r, s, {"B": B, "d": d}, None, predicted_trdeg_periods(r, s), n_logs=n_logs,
                          relations=relations)
    if n_logs:
        report.predicted_logs = predicted_trdeg_logs(r, s, n_logs)
    if algebra is not None:
        if algebra.size != r:
            raise DrinfeldError(f"eta algebra of size {algebra.size} for a rank {r} module")
        report.centralizer_dimension = centralizer_dim(algebra)
        if not report.consistent:
            report.notes.append(
                f"centralizer dimension {report.centralizer_dimension} differs from r^2/s = {report.predicted_periods}")
    else:
        report.notes.append("no eta algebra supplied; centralizer dimension not computed")
    if relations is not None:
        report.notes.append(f"relation finder: {relations.get('label', '')}")
    log.info("galois report: r=%d s=%d centralizer=%s", r, s, report.centralizer_dimension)
    return report
