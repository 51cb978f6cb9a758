#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
StateStore - crash-safe persistent state for the verification queue.
Queue, running and completed job lists live in JSON files under the state
directory; every write goes to a temp file first and is swapped in with
os.replace, so a crash never leaves a half-written list behind.
"""

import json
import os
import threading
from pathlib import Path
from typing import Any, Dict, List

from logging_setup import get_logger

log = get_logger("state")


def atomic_write_json(path: Path, data: Any):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, 'w', encoding='utf-8') as f:
        json.dump(data, f, ensure_ascii=False, indent=2)
        f.write("\n")
    os.replace(tmp, path)


def read_json(path: Path, default):
    try:
        if path.exists():
            return json.loads(path.read_text(encoding='utf-8'))
    except (OSError, ValueError) as e:
        log.warning(f"STATE unreadable {path.name}: {e}")
    return default


class StateStore:
    """Three job lists keyed by job_id; safe to share between worker threads."""

    LISTS = ("queue", "running", "completed")

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        for name in self.LISTS:
            p = self._path(name)
            if not p.exists():
                atomic_write_json(p, [])

    def _path(self, name: str) -> Path:
        return self.root / f"{name}.json"

    def _load(self, name: str) -> List[Dict[str, Any]]:
        return read_json(self._path(name), [])

    def _add(self, name: str, job: Dict[str, Any], dedupe: bool = True):
        with self._lock:
            items = self._load(name)
            if dedupe and any(j.get('job_id') == job.get('job_id') for j in items):
                return
            items.append(job)
            atomic_write_json(self._path(name), items)

    def _remove(self, name: str, job_id: str):
        with self._lock:
            items = [j for j in self._load(name) if j.get('job_id') != job_id]
            atomic_write_json(self._path(name), items)

    # Queue
    def load_queue(self) -> List[Dict[str, Any]]:
        return self._load("queue")

    def enqueue(self, job: Dict[str, Any]):
        self._add("queue", job)

    def dequeue(self, job_id: str):
        self._remove("queue", job_id)

    # Running
    def load_running(self) -> List[Dict[str, Any]]:
        return self._load("running")

    def add_running(self, job: Dict[str, Any]):
        self._add("running", job)

    def remove_running(self, job_id: str):
        self._remove("running", job_id)

    # Completed (a job may complete more than once across retries)
    def load_completed(self) -> List[Dict[str, Any]]:
        return self._load("completed")

    def append_completed(self, job: Dict[str, Any]):
        self._add("completed", job, dedupe=False)
