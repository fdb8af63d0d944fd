"""
CLI Test Suite

Job configuration, environment settings, report assembly and rendering,
the worker pool, and small end-to-end runs of the exp and relations
commands.
"""

import json
import os
import sys
import tempfile
from collections import deque
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from pydantic import ValidationError

from src import __version__
from src.config import Settings, get_settings
from src.cli import JobConfig, Report, StageResult, ResidualRow, run, stages_for, render
from src.cli.schemas import PIPELINE
from src.cli.main import build_parser, build_config, main as cli_main
from src.errors import TowerDead
from src.algebra import Poly
from src.parsers import parse_descriptor
from src.drinfeld import DrinfeldModule
from src.relations import proportional
from src.cli.commands import upsilon_relation_pattern
from src.cli.worker_pool import WorkerPool


def _small_job(**extra):
    data = {"command": "exp", "descriptor": "carlitz-q2", "precision": 16, "t_trunc": 8,
            "points": ["th^(-1)"]}
    data.update(extra)
    return JobConfig(**data)


def test_job_config_validation():
    """Test 1: commands, positive sizes and formats are checked"""
    print("\n=== Test 1: JobConfig Validation ===")
    job = _small_job()
    assert job.depth == 4 and job.format == 'json'
    bad = [
        {"command": "frobnicate"},
        {"precision": 0},
        {"branch": -1},
        {"format": "xml"},
    ]
    for fields in bad:
        try:
            _small_job(**fields)
            assert False, f"accepted {fields}"
        except ValidationError:
            pass
    print("PASSED")


def test_settings_from_environment():
    """Test 2: DRINFELD_* variables override the defaults"""
    print("\n=== Test 2: Environment Settings ===")
    saved = os.environ.get('DRINFELD_PRECISION')
    try:
        os.environ['DRINFELD_PRECISION'] = '20'
        assert get_settings().precision == 20
        os.environ['DRINFELD_PRECISION'] = 'lots'
        try:
            get_settings()
            assert False, "non-integer precision"
        except ValueError:
            pass
    finally:
        if saved is None:
            os.environ.pop('DRINFELD_PRECISION', None)
        else:
            os.environ['DRINFELD_PRECISION'] = saved
    assert Settings().t_trunc == 48
    print("PASSED")


def test_stages_and_rows():
    """Test 3: full-report expands to the pipeline; failures are rows"""
    print("\n=== Test 3: Stages and Residual Rows ===")
    assert stages_for('period') == ['period']
    assert stages_for('full-report') == list(PIPELINE)
    assert 'full-report' not in PIPELINE

    row = ResidualRow.failure("period completed", TowerDead("no branch 3"))
    assert not row.passed and row.error == "TowerDead: no branch 3"
    stage = StageResult(command='period', residuals=[row])
    assert not stage.passed
    assert StageResult(command='exp').passed, "no checks means nothing failed"
    print("PASSED")


def test_stable_report():
    """Test 4: timings are the only unstable fields"""
    print("\n=== Test 4: Stable Report ===")
    stage = StageResult(command='exp', values={"exp(z_1)": "1"}, seconds=1.5)
    a = Report(version="1", config={}, module={}, stages=[stage], timings={"exp": 1.5})
    b = a.model_copy(deep=True)
    b.timings = {"exp": 9.0}
    b.stages[0].seconds = 9.0
    assert a.stable_json() == b.stable_json()
    data = a.stable_dict()
    assert 'timings' not in data and 'seconds' not in data['stages'][0]
    print("PASSED")


def test_build_config():
    """Test 5: flags override the config file"""
    print("\n=== Test 5: Config Precedence ===")
    parser = build_parser()
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "job.json")
        with open(path, "w") as f:
            json.dump({"descriptor": "carlitz-q3", "precision": 32, "t_trunc": 10}, f)
        args = parser.parse_args(['period', '--config', path, '--precision', '20', '--endo-degree', '3'])
        config = build_config(args)
    assert config.command == 'period'
    assert config.descriptor == 'carlitz-q3', "taken from the file"
    assert config.precision == 20, "flag wins"
    assert config.t_trunc == 10 and config.B == 3
    try:
        build_config(parser.parse_args(['exp']))
        assert False, "descriptor is required"
    except ValueError:
        pass
    print("PASSED")


def test_exp_run():
    """Test 6: end-to-end exp on the Carlitz module"""
    print("\n=== Test 6: exp Run ===")
    report = run(_small_job(), Settings())
    assert report.passed, [r.identity for s in report.stages for r in s.residuals if not r.passed]
    assert report.version.startswith(__version__ + "+")
    assert [s.command for s in report.stages] == ['exp']
    assert 'exp(z_1)' in report.stages[0].values
    assert report.config['precision'] == 16 and report.config['deg_cap'] == 3
    assert report.module['rank'] == 1

    text = render(report, 'text')
    assert "[exp] PASS" in text and "ALL CHECKS PASSED" in text
    data = json.loads(render(report, 'json'))
    assert data['passed'] is True and data['module']['q'] == 2

    again = run(_small_job(), Settings())
    assert again.stable_json() == report.stable_json(), "same config, same report"
    print("PASSED")


def test_main_exit_codes():
    """Test 7: 0 on success, 2 on a bad invocation"""
    print("\n=== Test 7: Exit Codes ===")
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "report.txt")
        code = cli_main(['exp', '--descriptor', 'carlitz-q2', '--precision', '16', '--t-trunc', '8',
                     '--point', 'th^(-1)', '--format', 'text', '--out', out])
        assert code == 0
        assert Path(out).read_text().rstrip().endswith("ALL CHECKS PASSED")
    assert cli_main(['exp']) == 2, "missing descriptor"
    assert cli_main(['exp', '--descriptor', 'carlitz-q2', '--precision', '0']) == 2
    print("PASSED")


class _FakeProcess:
    def __init__(self, worker_id):
        self.name = f"Worker-{worker_id}"
        self.pid = 0
        self.alive = True

    def is_alive(self):
        return self.alive

    def join(self, timeout=None):
        self.alive = False

    def kill(self):
        self.alive = False


class _FakeQueue:
    def __init__(self):
        self.items = []

    def put(self, item):
        self.items.append(item)


def _fake_pool(**kwargs):
    pool = WorkerPool(num_workers=1, **kwargs)
    spawned = []

    def spawn(worker_id):
        pool.processes[worker_id] = _FakeProcess(worker_id)
        pool.queues[worker_id] = _FakeQueue()
        spawned.append(worker_id)

    pool._spawn = spawn
    return pool, spawned


def test_worker_restarts():
    """Test 8: a stage that keeps killing its worker is requeued, then failed"""
    print("\n=== Test 8: Worker Restarts ===")
    pool, spawned = _fake_pool(max_restarts=1)
    pool.start()
    task = (0, {}, 'period')
    backlog, done = deque([task]), {}

    pool._dispatch(backlog)
    assert not backlog and pool.queues[1].items == [task], "one stage per worker"
    pool._dispatch(deque([(1, {}, 'exp')]))
    assert pool.queues[1].items == [task], "a busy worker takes nothing more"

    pool.processes[1].alive = False
    pool._reap(backlog, done)
    assert list(backlog) == [task] and not done, "first crash requeues the stage"
    assert spawned == [1, 1], "dead worker replaced"

    pool._dispatch(backlog)
    pool.processes[1].alive = False
    pool._reap(backlog, done)
    assert not backlog and 0 in done, "second crash exceeds max_restarts"
    stage = StageResult(**done[0])
    assert not stage.passed
    assert "died 2 times" in stage.residuals[0].error
    print("PASSED")


def test_stage_timeout():
    """Test 9: stages still running at the deadline come back failed"""
    print("\n=== Test 9: Stage Timeout ===")
    pool, _ = _fake_pool(timeout_seconds=0, poll_seconds=0.01)
    results = pool.map_stages({}, ['exp', 'period'])
    assert [r.command for r in results] == ['exp', 'period']
    for r in results:
        assert not r.passed and "timed out" in r.residuals[0].error
    assert not any(p.is_alive() for p in pool.processes.values()), "workers stopped"
    settings = Settings()
    assert settings.max_restarts == 2 and settings.stage_timeout == 3600
    print("PASSED")


def test_upsilon_relation():
    """Test 10: rank 2 recovers exactly the relation (1, k_1, 1)"""
    print("\n=== Test 10: Upsilon Relation ===")
    rho = DrinfeldModule.from_descriptor(parse_descriptor("rank2-noncm-q2"))
    t = rho.tower
    pattern = upsilon_relation_pattern(rho)
    assert all(p == Poly.one(t) for p in pattern), "k_1 = 1"
    th = Poly(t, [0, 1])
    assert proportional([th, th, th], pattern)
    assert not proportional([th, Poly.zero(t), th], pattern)
    assert not proportional([th, th], pattern), "length mismatch"

    report = run(_small_job(command='relations', descriptor='rank2-noncm-q2', precision=32,
                            t_trunc=24, deg_cap=2, points=[]), Settings())
    stage = report.stages[0]
    rows = {r.identity: r for r in stage.residuals}
    row = rows["Upsilon^(1)(th)_(1r) relation recovered"]
    assert row.passed, row.detail
    assert "period entries" in stage.values
    print("PASSED")



def main():
    test_job_config_validation()
    test_settings_from_environment()
    test_stages_and_rows()
    test_stable_report()
    test_build_config()
    test_exp_run()
    test_main_exit_codes()
    test_worker_restarts()
    test_stage_timeout()
    test_upsilon_relation()
    print("\n" + "=" * 50)
    print("ALL TESTS PASSED!")
    print("=" * 50)


if __name__ == "__main__":
    try:
        main()
    except AssertionError as e:
        print(f"\nTEST FAILED: {e}")
        sys.exit(1)
