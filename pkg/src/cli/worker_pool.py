"""
Worker Pool - Parallel Report Stages

Runs the stages of a full report in separate processes. Each worker builds
its own Context from the job configuration, so results are identical to a
sequential run; only the timings differ.

Every worker has its own task queue and holds at most one stage, so the
pool always knows which stage a dead worker took with it.
"""

import logging
import multiprocessing
import queue
import time
from collections import deque
from typing import Dict, List

log = logging.getLogger("drinfeld.cli")


def worker_process_func(worker_id, tasks, results):
    """
    Standalone worker process function (needed for spawn-based multiprocessing).

    Args:
        worker_id: Unique ID for this worker
        tasks: This worker's queue of (index, config_dict, stage); None stops it
        results: Shared queue receiving ('done', index, worker_id, stage_dict)
    """
    # Import here to ensure clean process initialization
    from src.cli.runner import run_stage
    from src.cli.schemas import StageResult, ResidualRow

    name = f"worker-{worker_id}"
    while True:
        task = tasks.get()
        if task is None:
            break
        index, config_dict, stage = task
        try:
            payload = run_stage(config_dict, stage)
        except Exception as e:
            log.error("[%s] stage %s crashed: %s", name, stage, e)
            payload = StageResult(command=stage,
                                  residuals=[ResidualRow.failure(f"{stage} completed", e)]).model_dump()
        results.put(('done', index, worker_id, payload))


class WorkerPool:
    """
    A fixed pool of stage workers.

    A worker that dies mid-stage is restarted and its stage is queued again,
    at most `max_restarts` times per stage. Stages still unfinished after
    `timeout_seconds` come back as failed results.
    """

    def __init__(self, num_workers=2, poll_seconds=1.0, max_restarts=2, timeout_seconds=3600.0):
        self.num_workers = num_workers
        self.poll_seconds = poll_seconds
        self.max_restarts = max_restarts
        self.timeout_seconds = timeout_seconds
        self.processes: Dict[int, multiprocessing.Process] = {}
        self.queues: Dict[int, multiprocessing.Queue] = {}
        self.results = multiprocessing.Queue()
        self._assigned: Dict[int, tuple] = {}
        self._crashes: Dict[int, int] = {}
        log.info("initializing worker pool with %d workers", num_workers)

    def _spawn(self, worker_id):
        tasks = multiprocessing.Queue()
        process = multiprocessing.Process(
            target=worker_process_func,
            args=(worker_id, tasks, self.results),
            name=f"Worker-{worker_id}"
        )
        process.start()
        self.queues[worker_id] = tasks
        self.processes[worker_id] = process
        log.info("started %s (PID: %s)", process.name, process.pid)

    def start(self):
        """Start all worker processes"""
        for i in range(self.num_workers):
            self._spawn(i + 1)

    def _dispatch(self, backlog: deque):
        for worker_id, process in self.processes.items():
            if not backlog:
                return
            if worker_id in self._assigned or not process.is_alive():
                continue
            task = backlog.popleft()
            self._assigned[worker_id] = task
            self.queues[worker_id].put(task)

    def _reap(self, backlog: deque, done: Dict[int, dict]):
        """Restart dead workers; requeue their stage or give it up as failed."""
        for worker_id, process in list(self.processes.items()):
            if process.is_alive():
                continue
            task = self._assigned.pop(worker_id, None)
            if task is not None and task[0] not in done:
                index, _, stage = task
                self._crashes[index] = self._crashes.get(index, 0) + 1
                if self._crashes[index] > self.max_restarts:
                    log.error("stage %s killed its worker %d times; giving up", stage, self._crashes[index])
                    done[index] = _failed(stage, f"worker process died {self._crashes[index]} times")
                else:
                    log.warning("%s died during stage %s; requeueing", process.name, stage)
                    backlog.appendleft(task)
            self._spawn(worker_id)
            log.warning("restarted %s", self.processes[worker_id].name)

    def map_stages(self, config_dict: dict, stages: List[str]) -> list:
        """Run the stages and return StageResults in the input order."""
        from .schemas import StageResult

        backlog = deque((index, config_dict, stage) for index, stage in enumerate(stages))
        done: Dict[int, dict] = {}
        deadline = time.monotonic() + self.timeout_seconds
        self.start()
        try:
            while len(done) < len(stages):
                if time.monotonic() >= deadline:
                    for index, stage in enumerate(stages):
                        if index not in done:
                            log.error("stage %s timed out after %ss", stage, self.timeout_seconds)
                            done[index] = _failed(stage, f"timed out after {self.timeout_seconds}s")
                    break
                self._reap(backlog, done)
                self._dispatch(backlog)
                try:
                    _, index, worker_id, payload = self.results.get(timeout=self.poll_seconds)
                except queue.Empty:
                    continue
                if self._assigned.get(worker_id, (None,))[0] == index:
                    del self._assigned[worker_id]
                done.setdefault(index, payload)
        finally:
            self.stop()
        return [StageResult(**done[i]) for i in range(len(stages))]

    def stop(self):
        """Stop all workers gracefully"""
        for worker_id, process in self.processes.items():
            if process.is_alive():
                self.queues[worker_id].put(None)
        for process in self.processes.values():
            process.join(timeout=5)
            if process.is_alive():
                log.warning("force killing %s", process.name)
                process.kill()
        log.info("all workers stopped")


def _failed(stage: str, reason: str) -> dict:
    from .schemas import StageResult, ResidualRow

    return StageResult(command=stage,
                       residuals=[ResidualRow(identity=f"{stage} completed", passed=False, error=reason)]).model_dump()
