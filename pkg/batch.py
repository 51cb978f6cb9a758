#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Batch verification queue: suite files dropped into the input directory become
jobs, worker threads run them and archive suite file + JSON report per outcome.
+ crash-safe state, recovery on start, retries on unexpected errors
"""

import configparser
import queue
import shutil
import threading
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional

from logging_setup import get_logger
from notifier import NotificationSystem
from path_utils import run_folder_name, unique_job_id, unique_path
from state_store import StateStore, atomic_write_json
from suite import SuiteConfig, UsageError, run_suite, suite_config_from

log = get_logger("jobs")

SUITE_SUFFIX = ".ini"
REPORT_NAME = "report.json"


class JobStatus:
    WAITING = 'waiting'
    RUNNING = 'running'
    COMPLETED = 'completed'
    ERROR = 'error'


class SuiteFileError(ValueError):
    pass


def read_suite_file(path: Path) -> SuiteConfig:
    """[suite] section with the same keys as the verify flags."""
    cfg = configparser.ConfigParser()
    try:
        cfg.read_string(Path(path).read_text(encoding='utf-8'), source=str(path))
    except (OSError, configparser.Error) as e:
        raise SuiteFileError(f"{Path(path).name}: {e}") from e
    if not cfg.has_section('suite'):
        raise SuiteFileError(f"{Path(path).name}: missing [suite] section")
    try:
        return suite_config_from(cfg['suite'], {"json_path": None})
    except (UsageError, TypeError) as e:
        raise SuiteFileError(f"{Path(path).name}: {e}") from e


@dataclass
class VerificationJob:
    suite_path: Path
    construction: str
    suite: str
    job_id: Optional[str] = None
    status: str = JobStatus.WAITING
    outcome: Optional[str] = None
    start_time: Optional[float] = None
    end_time: Optional[float] = None
    error_message: Optional[str] = None
    archive_dir: Optional[Path] = None
    retries: int = 0

    def to_dict(self) -> Dict:
        d = asdict(self)
        for k in ['suite_path', 'archive_dir']:
            if d.get(k) is not None:
                d[k] = str(d[k])
        return d

    @staticmethod
    def from_dict(d: Dict) -> "VerificationJob":
        return VerificationJob(
            suite_path=Path(d['suite_path']),
            construction=d['construction'],
            suite=d['suite'],
            job_id=d.get('job_id'),
            status=d.get('status', JobStatus.WAITING),
            outcome=d.get('outcome'),
            start_time=d.get('start_time'),
            end_time=d.get('end_time'),
            error_message=d.get('error_message'),
            archive_dir=Path(d['archive_dir']) if d.get('archive_dir') else None,
            retries=int(d.get('retries', 0)),
        )


class JobManager:
    def __init__(self, config: configparser.ConfigParser, notifier: Optional[NotificationSystem] = None):
        self.config = config
        paths = config['paths'] if config.has_section('paths') else {}
        self.input_dir = Path(paths.get('input_dir', 'folders/input'))
        self.waiting_dir = Path(paths.get('waiting_dir', 'folders/waiting'))
        self.products_dir = Path(paths.get('products_dir', 'folders/products'))
        self.state_dir = Path(paths.get('state_dir', 'folders/state'))
        batch = config['batch'] if config.has_section('batch') else {}
        self.max_parallel = int(batch.get('max_parallel_jobs', 2))
        self.max_retries = int(batch.get('max_retries', 1))
        self.verify_defaults = config['verify'] if config.has_section('verify') else None

        self.job_queue: "queue.Queue[VerificationJob]" = queue.Queue()
        self.running: Dict[str, VerificationJob] = {}
        self.completed: List[VerificationJob] = []
        self.state = StateStore(self.state_dir)
        self.notifier = notifier or NotificationSystem.from_config(config)
        self._run = False
        self._lock = threading.Lock()
        self._threads: List[threading.Thread] = []

        for p in [self.input_dir, self.waiting_dir, self.products_dir, self.state_dir]:
            p.mkdir(parents=True, exist_ok=True)

    # -- queueing
    def submit_file(self, path: Path) -> Optional[VerificationJob]:
        """Validate a dropped suite file, move it to waiting and queue it."""
        path = Path(path)
        try:
            cfg = self._read(path)
        except SuiteFileError as e:
            log.error(f"REJECT {path.name}: {e}")
            NotificationSystem.send_error(f"Invalid suite file: {path.name}\n{e}")
            return None
        dst = unique_path(self.waiting_dir / path.name)
        shutil.move(str(path), str(dst))
        log.info(f"MOVE -> waiting: {dst.name}")
        job = VerificationJob(suite_path=dst, construction=cfg.construction, suite=cfg.suite)
        self.add_job(job)
        return job

    def _read(self, path: Path) -> SuiteConfig:
        file_cfg = read_suite_file(path)
        if self.verify_defaults is None:
            return file_cfg
        # keys absent from the suite file fall back to config.txt [verify]
        raw = configparser.ConfigParser()
        raw.read_string(path.read_text(encoding='utf-8'))
        merged = dict(self.verify_defaults)
        merged.update(dict(raw['suite']))
        parser = configparser.ConfigParser()
        parser['suite'] = merged
        return suite_config_from(parser['suite'], {"json_path": None})

    def add_job(self, job: VerificationJob):
        if job.job_id is None:
            job.job_id = unique_job_id(job.suite_path.stem, job.suite)
        job.status = JobStatus.WAITING
        self.state.enqueue(job.to_dict())
        self.job_queue.put(job)
        log.info(f"QUEUE add {job.job_id} ({job.construction}/{job.suite})")

    # -- workers
    def start(self):
        self._run = True
        self._recover_on_start()
        for i in range(self.max_parallel):
            t = threading.Thread(target=self._worker, name=f"VERIFY-{i+1}", daemon=True)
            t.start()
            self._threads.append(t)
        log.info(f"WORKERS started: {self.max_parallel}")

    def stop(self, timeout: float = 5.0):
        self._run = False
        for t in self._threads:
            t.join(timeout=timeout)
        log.info("WORKERS stopped")

    def pending(self) -> int:
        with self._lock:
            return self.job_queue.qsize() + len(self.running)

    def _worker(self):
        while self._run:
            try:
                job = self.job_queue.get(timeout=1.0)
            except queue.Empty:
                continue
            try:
                self.process(job)
            except Exception as e:
                log.exception(f"WORKER error: {e}")
            finally:
                self.job_queue.task_done()

    def process_next(self) -> Optional[VerificationJob]:
        """Run one queued job on the calling thread; None if the queue is empty."""
        try:
            job = self.job_queue.get_nowait()
        except queue.Empty:
            return None
        try:
            self.process(job)
        finally:
            self.job_queue.task_done()
        return job

    def process(self, job: VerificationJob):
        with self._lock:
            self.running[job.job_id] = job
        self.state.dequeue(job.job_id)
        job.status = JobStatus.RUNNING
        job.start_time = time.time()
        self.state.add_running(job.to_dict())
        log.info(f"EXEC dispatch {job.job_id}")

        report = None
        try:
            cfg = self._read(job.suite_path)
            report = run_suite(cfg)
            job.outcome = report.overall
            job.status = JobStatus.COMPLETED
        except Exception as e:
            job.status = JobStatus.ERROR
            job.error_message = f"{type(e).__name__}: {e}"
            log.exception(f"EXEC exception {job.job_id}: {e}")
        job.end_time = time.time()

        with self._lock:
            self.running.pop(job.job_id, None)
        self.state.remove_running(job.job_id)

        if job.status == JobStatus.ERROR and job.retries < self.max_retries:
            job.retries += 1
            log.warning(f"RETRY {job.job_id} ({job.retries}/{self.max_retries})")
            self.add_job(job)
            return

        self._archive(job, report)
        with self._lock:
            self.completed.append(job)
        self.state.append_completed(job.to_dict())
        outcome = job.outcome or "error"
        log.info(f"DONE {job.job_id} outcome={outcome}")
        self.notifier.job_finished(job.job_id, outcome, job.error_message or "")

    def _archive(self, job: VerificationJob, report):
        outcome = job.outcome or "error"
        folder = run_folder_name(job.suite_path.stem, outcome, int(time.time()))
        target = unique_path(self.products_dir / job.construction / folder)
        target.mkdir(parents=True, exist_ok=True)
        if job.suite_path.exists():
            shutil.move(str(job.suite_path), str(target / job.suite_path.name))
        if report is not None:
            atomic_write_json(target / REPORT_NAME, report.to_dict())
        elif job.error_message:
            (target / "error.txt").write_text(job.error_message + "\n", encoding='utf-8')
        job.archive_dir = target
        log.info(f"ARCHIVE {job.job_id} -> {target.relative_to(self.products_dir)}")

    # -- recovery
    def _recover_on_start(self):
        log.info("RECOVER begin")
        for d in self.state.load_queue():
            j = VerificationJob.from_dict(d)
            self.job_queue.put(j)
            log.info(f"RECOVER queue->requeue {j.job_id}")

        for d in self.state.load_running():
            j = VerificationJob.from_dict(d)
            self.state.remove_running(j.job_id)
            if not j.suite_path.exists():
                log.error(f"RECOVER running(missing suite file)->dropped {j.job_id}")
                continue
            j.status = JobStatus.WAITING
            self.state.enqueue(j.to_dict())
            self.job_queue.put(j)
            log.warning(f"RECOVER running(interrupted)->requeue {j.job_id}")

        known = {VerificationJob.from_dict(d).suite_path.name for d in self.state.load_queue()}
        for path in sorted(self.waiting_dir.glob(f"*{SUITE_SUFFIX}")):
            if path.name not in known:
                try:
                    cfg = self._read(path)
                except SuiteFileError as e:
                    log.error(f"RECOVER skip {path.name}: {e}")
                    continue
                self.add_job(VerificationJob(suite_path=path, construction=cfg.construction, suite=cfg.suite))
                log.info(f"RECOVER waiting->enqueue {path.name}")
        for path in sorted(self.input_dir.glob(f"*{SUITE_SUFFIX}")):
            if self.submit_file(path) is not None:
                log.info(f"RECOVER input->enqueue {path.name}")
        log.info("RECOVER end")

