import configparser
import json

import pytest

from batch import JobManager, JobStatus, SuiteFileError, VerificationJob, read_suite_file
from notifier import NotificationSystem
from path_utils import run_folder_name, safe_name, unique_job_id, unique_path
from state_store import StateStore, atomic_write_json, read_json

SUITE = "[suite]\nconstruction = {construction}\nsuite = {suite}\ntrials = 2\nmax_deg = 2\nworkers = 1\n"


@pytest.fixture
def config(tmp_path):
    cfg = configparser.ConfigParser()
    cfg.read_dict({
        "paths": {k: str(tmp_path / k) for k in ("input_dir", "waiting_dir", "products_dir", "state_dir")},
        "verify": {"seed": "5", "deg_bound": "6"},
        "batch": {"max_parallel_jobs": "1", "max_retries": "1"},
        "notification": {"enabled": "false", "debounce_seconds": "0"},
    })
    return cfg


def drop(manager, name, construction="jvec", suite="jordan"):
    path = manager.input_dir / name
    path.write_text(SUITE.format(construction=construction, suite=suite), encoding="utf-8")
    return path


# -- suite files

def test_read_suite_file(tmp_path):
    path = tmp_path / "a.ini"
    path.write_text(SUITE.format(construction="ck", suite="bracket"), encoding="utf-8")
    cfg = read_suite_file(path)
    assert (cfg.construction, cfg.suite, cfg.trials) == ("ck", "bracket", 2)


@pytest.mark.parametrize("text", ["[other]\nx = 1\n", "[suite]\ntrials = lots\n",
                                  "[suite]\nconstruction = octonions\n", "not an ini"])
def test_bad_suite_files(tmp_path, text):
    path = tmp_path / "bad.ini"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(SuiteFileError):
        read_suite_file(path)


def test_job_roundtrip_through_dict(tmp_path):
    job = VerificationJob(tmp_path / "a.ini", "jvec", "jordan", job_id="a_jordan_123456")
    again = VerificationJob.from_dict(json.loads(json.dumps(job.to_dict())))
    assert again == job


# -- queue

def test_submit_and_process(config):
    manager = JobManager(config, NotificationSystem(enabled=False, debounce_seconds=0))
    job = manager.submit_file(drop(manager, "first.ini"))
    assert job is not None
    assert job.suite_path.parent == manager.waiting_dir
    assert manager.pending() == 1

    done = manager.process_next()
    assert done is job
    assert job.status == JobStatus.COMPLETED
    assert job.outcome == "pass"
    assert job.archive_dir.parent == manager.products_dir / "jvec"
    report = json.loads((job.archive_dir / "report.json").read_text(encoding="utf-8"))
    assert report["config"]["seed"] == 5
    assert (job.archive_dir / "first.ini").exists()
    assert manager.process_next() is None
    assert manager.state.load_queue() == []
    assert manager.state.load_running() == []
    assert [j["job_id"] for j in manager.state.load_completed()] == [job.job_id]


def test_invalid_file_stays_in_input(config):
    manager = JobManager(config, NotificationSystem(enabled=False))
    path = manager.input_dir / "broken.ini"
    path.write_text("[suite]\nsuite = nope\n", encoding="utf-8")
    assert manager.submit_file(path) is None
    assert path.exists()
    assert manager.pending() == 0


def test_failed_run_is_retried_then_archived_with_error(config, monkeypatch):
    import batch

    def boom(cfg):
        raise RuntimeError("solver exploded")

    monkeypatch.setattr(batch, "run_suite", boom)
    notifier = NotificationSystem(enabled=False, debounce_seconds=0)
    manager = JobManager(config, notifier)
    job = manager.submit_file(drop(manager, "bad.ini"))
    manager.process_next()
    assert job.retries == 1
    assert job.status == JobStatus.WAITING
    manager.process_next()
    assert job.status == JobStatus.ERROR
    assert "solver exploded" in (job.archive_dir / "error.txt").read_text(encoding="utf-8")
    assert notifier.sent and "error" in notifier.sent[0]


def test_recovery_requeues_interrupted_jobs(config):
    first = JobManager(config, NotificationSystem(enabled=False))
    job = first.submit_file(drop(first, "again.ini"))
    first.state.dequeue(job.job_id)
    first.state.add_running(job.to_dict())
    leftover = drop(first, "late.ini")

    second = JobManager(config, NotificationSystem(enabled=False))
    second._recover_on_start()
    assert second.state.load_running() == []
    assert not leftover.exists()
    ids = {j["job_id"] for j in second.state.load_queue()}
    assert job.job_id in ids
    assert len(ids) == 2


# -- helpers kept from the queue runner

def test_state_store_roundtrip(tmp_path):
    store = StateStore(tmp_path / "state")
    store.enqueue({"job_id": "a"})
    store.enqueue({"job_id": "a"})
    store.enqueue({"job_id": "b"})
    assert [j["job_id"] for j in store.load_queue()] == ["a", "b"]
    store.dequeue("a")
    assert [j["job_id"] for j in store.load_queue()] == ["b"]
    store.append_completed({"job_id": "b"})
    store.append_completed({"job_id": "b"})
    assert len(store.load_completed()) == 2


def test_atomic_write_and_unreadable_json(tmp_path):
    path = tmp_path / "x" / "data.json"
    atomic_write_json(path, {"k": [1, 2]})
    assert read_json(path, None) == {"k": [1, 2]}
    assert not path.with_suffix(".json.tmp").exists()
    path.write_text("{broken", encoding="utf-8")
    assert read_json(path, []) == []


def test_path_helpers(tmp_path):
    base = tmp_path / "run.json"
    assert unique_path(base) == base
    base.write_text("", encoding="utf-8")
    assert unique_path(base).name == "run_1.json"
    assert safe_name("gck / all!") == "gck_all"
    assert unique_job_id("my suite", "all").startswith("my_suite_all_")
    assert run_folder_name("s", "fail", 12) == "s_fail_12"


def test_notifier_only_reports_problems():
    n = NotificationSystem(enabled=False, debounce_seconds=0)
    n.job_finished("a", "pass")
    assert n.sent == []
    n.job_finished("b", "inconclusive", "certificate not found")
    assert n.sent == ["b: inconclusive\ncertificate not found"]
