#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Collision-free names for archived suite runs and job ids.
"""
import re
import uuid
from pathlib import Path

_UNSAFE = re.compile(r"[^A-Za-z0-9_.-]+")


def unique_path(base: Path) -> Path:
    """Return base, or base with _1, _2, ... appended (before the suffix) if it exists."""
    p = base
    i = 1
    while p.exists():
        if base.suffix:
            p = base.with_name(f"{base.stem}_{i}{base.suffix}")
        else:
            p = base.with_name(f"{base.name}_{i}")
        i += 1
    return p


def safe_name(text: str) -> str:
    """File-system safe fragment: runs of other characters become '_'."""
    return _UNSAFE.sub("_", text).strip("_") or "run"


def unique_job_id(stem: str, suite: str) -> str:
    """<stem>_<suite>_<6 hex chars>."""
    return f"{safe_name(stem)}_{safe_name(suite)}_{uuid.uuid4().hex[:6]}"


def run_folder_name(suite: str, outcome: str, stamp: int) -> str:
    return f"{safe_name(suite)}_{outcome}_{stamp}"
