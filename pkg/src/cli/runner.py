"""
Job Runner

Resolves a JobConfig against the environment, runs its stages under the
working precision and field-degree cap, and assembles the Report.
"""

import logging
import time
from typing import List, Optional

from .schemas import JobConfig, Report, StageResult, ResidualRow, PIPELINE
from .commands import Context, COMMAND_TABLE
from .. import __version__
from ..config import Settings, get_settings
from ..algebra.fields import large_fields, tables_fingerprint
from ..puiseux.number import working_precision
from ..errors import DrinfeldError

log = logging.getLogger("drinfeld.cli")


def stages_for(command: str) -> List[str]:
    return list(PIPELINE) if command == 'full-report' else [command]


def _run_one(ctx: Context, stage: str) -> StageResult:
    start = time.perf_counter()
    try:
        result = COMMAND_TABLE[stage](ctx)
    except DrinfeldError as exc:
        log.error("stage %s failed: %s", stage, exc)
        result = StageResult(command=stage, residuals=[ResidualRow.failure(f"{stage} completed", exc)])
    result.seconds = time.perf_counter() - start
    return result


def _version(ctx: Context) -> str:
    towers = [ctx.exact.tower]
    if ctx.rho is not None:
        towers.append(ctx.rho.tower)
    return f"{__version__}+{tables_fingerprint(towers)[:12]}"


def run_stage(config_dict: dict, stage: str) -> dict:
    """One stage in a fresh Context; used by worker processes."""
    config = JobConfig(**config_dict)
    settings = get_settings()
    ctx = Context(config, settings)
    with working_precision(ctx.precision), large_fields(settings.max_field_degree):
        ctx.prepare()
        return _run_one(ctx, stage).model_dump()


def run(config: JobConfig, settings: Optional[Settings] = None) -> Report:
    """
    Run every stage of the job in this process, or spread full-report over
    a worker pool when more than one worker is configured.
    """
    settings = settings or get_settings()
    ctx = Context(config, settings)
    stages = stages_for(config.command)
    workers = config.workers or settings.workers
    timings = {}

    with working_precision(ctx.precision), large_fields(settings.max_field_degree):
        start = time.perf_counter()
        try:
            ctx.prepare()
        except DrinfeldError as exc:
            log.error("normalization failed: %s", exc)
            failed = StageResult(command='normalize', residuals=[ResidualRow.failure("module normalizes", exc)])
            return Report(version=f"{__version__}+{tables_fingerprint([ctx.exact.tower])[:12]}",
                          config=ctx.resolved(), module=ctx.module_info(), stages=[failed], passed=False)
        timings['normalize'] = time.perf_counter() - start

        if workers > 1 and len(stages) > 1:
            from .worker_pool import WorkerPool
            pool = WorkerPool(num_workers=workers, max_restarts=settings.max_restarts,
                              timeout_seconds=settings.stage_timeout)
            results = pool.map_stages(config.model_dump(), stages)
        else:
            results = [_run_one(ctx, stage) for stage in stages]

        version = _version(ctx)

    for result in results:
        timings[result.command] = result.seconds
    report = Report(version=version, config=ctx.resolved(), module=ctx.module_info(), stages=results,
                    timings=timings, passed=all(r.passed for r in results))
    log.info("run %s finished: passed=%s", config.command, report.passed)
    return report
