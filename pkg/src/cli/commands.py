"""
CLI Commands

One function per command. Each takes the shared Context (module, resolved
settings and lazily computed periods, t-motive data and endomorphisms) and
returns a StageResult with values rendered as literals.
"""

import logging
from typing import Callable, Dict, List, Optional

from .schemas import JobConfig, StageResult, ResidualRow, Certificate
from ..config import Settings
from ..parsers.parser_factory import parse_descriptor, parse_puiseux_literal
from ..algebra.polynomials import Poly
from ..puiseux.number import PuiseuxNumber
from ..drinfeld import (
    DrinfeldModule,
    exp_eval,
    log_eval,
    functional_equation_residual,
    log_exp_residual,
    exp_log_roundtrip,
    lattice_periods,
    carlitz_period_oracle,
    matches_up_to_fq,
    agf,
    agf_closed_form,
    agf_functional_residual,
    agf_residue_check,
    standard_basis,
    quasi_period,
    quasi_routes_report,
    period_matrix,
    endo_ring_degree,
    TwistedPoly,
)
from ..drinfeld.exponential import log_term_valuations
from ..drinfeld.quasi import first_column_report, semilinearity_report, Biderivation
from ..tmotive import (
    build_psi,
    phi_det_report,
    upsilon_at_theta_report,
    build_ext,
    pushout_row,
    baer_sum,
    build_psi_n,
    search_triviality_witness,
    module_matrix_of_endo,
    eta_of_endo,
    endomorphism_generators,
)
from ..tmotive.extensions import h_row
from ..galois_group import EndoAlgebra, galois_report
from ..relations import find_relations, relation_summary, certificate_rank, proportional
from ..series.matrix import TateMatrix, residual
from ..errors import DrinfeldError

log = logging.getLogger("drinfeld.cli")


class Context:
    """
    Shared state of one run.

    Attributes:
        exact: The module as described (exact coefficients when polynomial)
        rho: Normalized module used for periods and the t-motive
        scale: c with rho = c^(-1) exact c
    """

    def __init__(self, config: JobConfig, settings: Settings):
        self.config = config
        self.settings = settings
        self.descriptor = parse_descriptor(config.descriptor)
        overrides = self.descriptor.precision
        self.precision = config.precision or overrides.get('window') or settings.precision
        self.N = config.t_trunc or overrides.get('t_trunc') or settings.t_trunc
        self.D = config.deg_cap if config.deg_cap is not None else settings.deg_cap
        self.branch = config.branch if config.branch is not None else settings.branch
        self.depth = config.depth
        self.exact = DrinfeldModule.from_descriptor(self.descriptor)
        self.B = config.B if config.B is not None else 2 * self.exact.rank
        self.d = config.d if config.d is not None else self.exact.rank
        self.rho: Optional[DrinfeldModule] = None
        self.scale: Optional[PuiseuxNumber] = None
        self._periods = None
        self._tmotive = None
        self._endos = None
        self._etas = None
        self._relations = None

    def prepare(self):
        """Normalize; called under the working precision."""
        if self.rho is None:
            self.rho, self.scale = self.exact.normalize()

    def resolved(self) -> dict:
        """Configuration with every default filled in."""
        data = self.config.model_dump()
        data.update(precision=self.precision, t_trunc=self.N, deg_cap=self.D, branch=self.branch,
                    B=self.B, d=self.d, safety_slots=self.settings.safety_slots,
                    log_window=self.settings.log_window)
        data.pop('output', None)
        return data

    def module_info(self) -> dict:
        return {
            "name": self.exact.name,
            "q": self.exact.q,
            "rank": self.exact.rank,
            "d": self.descriptor.d,
            "kappa": list(self.descriptor.kappa),
            "exact": self.exact.is_exact,
            "normalizing_scalar": repr(self.scale) if self.scale is not None else None,
        }

    def points(self, default: List[str]) -> List[PuiseuxNumber]:
        texts = self.config.points or default
        return [parse_puiseux_literal(t, self.rho.tower) for t in texts]

    def period_data(self):
        if self._periods is None:
            self._periods = lattice_periods(self.rho, self.depth, self.branch)
        return self._periods

    def omegas(self) -> List[PuiseuxNumber]:
        return self.period_data().omegas

    def tmotive(self):
        if self._tmotive is None:
            self._tmotive = build_psi(self.rho, self.omegas(), self.N)
        return self._tmotive

    def endos(self):
        if self._endos is None:
            self._endos = endomorphism_generators(self.exact, self.B, self.d)
        return self._endos

    def conjugated(self, b) -> object:
        """b on the normalized module: c^(-1) b c."""
        if (self.scale - 1).is_zero():
            return b
        tower = self.rho.tower
        return TwistedPoly(tower, [self.scale.inv()]) * b.twisted() * TwistedPoly(tower, [self.scale])

    def etas(self):
        if self._etas is None:
            data = self.tmotive()
            self._etas = [eta_of_endo(self.rho, self.conjugated(b), data) for b in self.endos()]
        return self._etas

    def period_entries(self) -> List[PuiseuxNumber]:
        """Periods and their quasi-periods F_(tau^j), j < r, in period-matrix order."""
        rho = self.rho
        values = []
        for w in self.omegas():
            values.append(w)
            values += [quasi_period(rho, Biderivation.tau(rho.tower, j), w) for j in range(1, rho.rank)]
        return values

    def relations(self) -> dict:
        """Relation summary of the period entries and the logs of the points."""
        if self._relations is None:
            values = self.period_entries()
            for alpha in self.points([]):
                values.append(log_eval(self.rho, alpha, self.settings.log_window))
            self._relations = relation_summary(values, self.D, self.settings.safety_slots,
                                               field_degree=self.rho.tower.d)
        return self._relations


def _rows(reports, prefix: str = "") -> List[ResidualRow]:
    return [ResidualRow.from_report(r, prefix) for r in reports if r is not None]


# ----------------------------------------------------------------------
# commands


def cmd_exp(ctx: Context) -> StageResult:
    result = StageResult(command='exp')
    for k, z in enumerate(ctx.points(["1"]), start=1):
        result.values[f"exp(z_{k})"] = repr(exp_eval(ctx.rho, z))
    result.residuals += _rows([functional_equation_residual(ctx.exact), log_exp_residual(ctx.exact)])
    return result


def cmd_log(ctx: Context) -> StageResult:
    result = StageResult(command='log')
    for k, z in enumerate(ctx.points(["1"]), start=1):
        try:
            result.values[f"log(z_{k}) term valuations"] = [str(v) for v in log_term_valuations(ctx.rho, z)]
            result.values[f"log(z_{k})"] = repr(log_eval(ctx.rho, z, ctx.settings.log_window))
            result.residuals += _rows([exp_log_roundtrip(ctx.rho, z)], f"z_{k}: ")
        except DrinfeldError as exc:
            result.residuals.append(ResidualRow.failure(f"log(z_{k}) converges", exc))
    return result


def _is_carlitz(rho: DrinfeldModule) -> bool:
    return rho.rank == 1 and (rho.kappa[0] - 1).is_zero()


def cmd_period(ctx: Context) -> StageResult:
    result = StageResult(command='period')
    pd = ctx.period_data()
    result.values["torsion_count"] = pd.torsion_count
    result.values["flags"] = list(pd.flags)
    for i, p in enumerate(pd.periods, start=1):
        result.values[f"omega_{i}"] = repr(p.omega)
        result.values[f"omega_{i}_valuation"] = str(p.omega.val)
        result.values[f"omega_{i}_level"] = p.level
        result.residuals += _rows([p.exp_check, p.stability], f"omega_{i}: ")
    if _is_carlitz(ctx.rho):
        oracle = carlitz_period_oracle(ctx.rho.tower)
        result.values["product_formula"] = repr(oracle)
        result.residuals.append(ResidualRow(identity="omega_1 = product formula up to F_q^*",
                                            passed=matches_up_to_fq(pd.periods[0].omega, oracle)))
    return result


def cmd_agf(ctx: Context) -> StageResult:
    result = StageResult(command='agf')
    points = ctx.points([]) or ctx.omegas()[:1]
    for k, u in enumerate(points, start=1):
        f = agf(ctx.rho, u, ctx.N)
        result.values[f"f_{k}"] = f.to_dict()["coeffs"][:4]
        result.residuals += _rows([agf_functional_residual(ctx.rho, u, f), agf_residue_check(ctx.rho, u, f)],
                                  f"u_{k}: ")
        closed = agf_closed_form(ctx.rho, u, ctx.N)
        result.residuals.append(ResidualRow.from_report(residual("agf = closed form", f, closed), f"u_{k}: "))
    return result


def cmd_quasiperiod(ctx: Context) -> StageResult:
    result = StageResult(command='quasiperiod')
    omegas = ctx.omegas()
    for i, w in enumerate(omegas, start=1):
        for delta in standard_basis(ctx.rho)[1:]:
            result.values[f"F_{delta.label}(omega_{i})"] = repr(quasi_period(ctx.rho, delta, w))
            result.residuals += _rows([quasi_routes_report(ctx.rho, delta, w, ctx.N)], f"omega_{i}: ")
            if i == 1:
                result.residuals += _rows([semilinearity_report(ctx.rho, delta, w)], "omega_1: ")
    result.residuals += _rows([first_column_report(ctx.rho, omegas)])
    return result


def cmd_period_matrix(ctx: Context) -> StageResult:
    result = StageResult(command='period-matrix')
    P = period_matrix(ctx.rho, ctx.omegas(), degree=ctx.D)
    result.values["P"] = [[repr(x) for x in row] for row in P]
    result.residuals.append(ResidualRow(identity=f"no relation among periods at height <= {ctx.D}", passed=True))
    return result


def cmd_verify_triv(ctx: Context) -> StageResult:
    result = StageResult(command='verify-triv')
    data = ctx.tmotive()
    result.values["fallback"] = data.fallback
    result.values["N"] = data.N
    reports = list(data.reports) + [phi_det_report(ctx.rho, ctx.N),
                                    upsilon_at_theta_report(ctx.rho, data.upsilon, ctx.omegas())]
    result.residuals += _rows(reports)
    return result


def cmd_ext(ctx: Context) -> StageResult:
    """
    Extension blocks of u = log(alpha) for each point alpha, and of the
    first period; then a witness that t_* X_alpha - X_(rho_t(alpha)) is trivial.
    """
    result = StageResult(command='ext')
    rho, data = ctx.rho, ctx.tmotive()
    alphas = ctx.points(["1"])
    blocks = []
    for k, alpha in enumerate(alphas, start=1):
        u = log_eval(rho, alpha, ctx.settings.log_window)
        block = build_ext(rho, u, data)
        blocks.append(block)
        result.values[f"u_{k}"] = repr(u)
        result.values[f"g_1(th) for u_{k}"] = repr(block.g_first_at_theta())
        result.residuals += _rows(block.reports, f"u_{k}: ")
    period_block = build_ext(rho, ctx.omegas()[0], data)
    result.values["alpha for omega_1"] = repr(period_block.alpha)
    result.residuals += _rows(period_block.reports, "omega_1: ")

    E_t = module_matrix_of_endo(rho.rho_t(), data.phi)
    identity = TateMatrix.identity(rho.tower, rho.rank, data.N)
    if data.psi is not None:
        _, report = build_psi_n(data, blocks, [E_t] + [identity] * (len(blocks) - 1))
        result.residuals += _rows([report])
    alpha = alphas[0]
    v = baer_sum(pushout_row(blocks[0].h, E_t), [-x for x in h_row(rho, rho(alpha), data.N)])
    # gamma_1 = sum_j k_j alpha^(q^j) has th-degree <= q^r deg(alpha) + deg(kappa)
    kappa_degree = max(k.degree for k in rho.exact_kappa()) if rho.is_exact else 0
    theta_degree = rho.q ** rho.rank * max(int(-alpha.val), 0) + max(kappa_degree, 0)
    witness = search_triviality_witness(rho, v, data.phi, theta_degree=theta_degree)
    result.certificates.append(Certificate(kind="triviality witness for t*X - X(rho_t alpha)",
                                           data=witness.to_dict()))
    if witness.report is not None:
        result.residuals += _rows([witness.report])
    return result


def cmd_endos(ctx: Context) -> StageResult:
    result = StageResult(command='endos')
    s = endo_ring_degree(ctx.exact, ctx.B, ctx.d)
    result.values["s"] = s
    result.values["generators"] = [repr(b) for b in ctx.endos()]
    for k, cert in enumerate(ctx.etas(), start=1):
        result.certificates.append(Certificate(kind=f"eta of generator {k}", data=cert.to_dict()))
        result.residuals += _rows(cert.reports, f"b_{k}: ")
    return result


def cmd_galois_dim(ctx: Context) -> StageResult:
    result = StageResult(command='galois-dim')
    algebra = EndoAlgebra.from_etas(ctx.etas()) if ctx.exact.is_exact else None
    try:
        relations = ctx.relations()
    except DrinfeldError as exc:
        relations = {"label": f"relation search failed: {type(exc).__name__}: {exc}"}
    report = galois_report(ctx.exact, algebra, ctx.B, ctx.d, n_logs=len(ctx.config.points),
                           relations=relations)
    result.values.update(r=report.r, s=report.s, centralizer_dim=report.centralizer_dimension,
                         predicted_trdeg=report.predicted_periods)
    result.predictions = report.to_dict()
    identity = "centralizer dimension = r^2/s"
    if report.inconclusive:
        identity += " (inconclusive)"
    result.residuals.append(ResidualRow(identity=identity, passed=report.consistent,
                                        detail="; ".join(report.notes)))
    return result


def upsilon_relation_pattern(rho: DrinfeldModule) -> List[Poly]:
    """(1, k_1, .., k_(r-1), 1): the relation among w, F_(tau^j)(w) and Upsilon^(1)(th)_(1r)."""
    one = Poly.one(rho.tower)
    return [one] + list(rho.exact_kappa()[:-1]) + [one]


def cmd_relations(ctx: Context) -> StageResult:
    """
    Relation search among period-matrix entries (plus logs of the points),
    and, in rank >= 2, recovery of the relation tying Upsilon^(1)(th)_(1r)
    to the first period and its quasi-periods.
    """
    result = StageResult(command='relations')
    rho = ctx.rho
    result.values["period entries"] = ctx.relations()
    if rho.rank < 2:
        return result
    if not rho.is_exact:
        result.values["Upsilon^(1)(th) relation"] = "not checked: normalized coefficients are not polynomials in th"
        return result
    data = ctx.tmotive()
    w = ctx.omegas()[0]
    last = data.upsilon.twist(1)[0, rho.rank - 1].eval_at_theta()
    entries = [w] + [quasi_period(rho, Biderivation.tau(rho.tower, s), w) for s in range(1, rho.rank)] + [last]
    certs = find_relations(entries, min(ctx.D, 2), ctx.settings.safety_slots)
    for cert in certs:
        result.certificates.append(Certificate(kind="Upsilon^(1)(th) relation", data=cert.to_dict()))
    expected = upsilon_relation_pattern(rho)
    rank = certificate_rank(certs)
    matching = [proportional(cert.coeffs, expected) for cert in certs]
    passed = rank == 1 and all(matching)
    detail = f"relation rank {rank}, expected 1"
    if certs and not all(matching):
        detail += f"; {matching.count(False)} certificate(s) off the pattern {[repr(c) for c in expected]}"
    result.residuals.append(ResidualRow(identity="Upsilon^(1)(th)_(1r) relation recovered",
                                        passed=passed, compared=len(certs), detail=detail))
    return result


COMMAND_TABLE: Dict[str, Callable[[Context], StageResult]] = {
    'exp': cmd_exp,
    'log': cmd_log,
    'period': cmd_period,
    'agf': cmd_agf,
    'quasiperiod': cmd_quasiperiod,
    'period-matrix': cmd_period_matrix,
    'verify-triv': cmd_verify_triv,
    'ext': cmd_ext,
    'endos': cmd_endos,
    'galois-dim': cmd_galois_dim,
    'relations': cmd_relations,
}
