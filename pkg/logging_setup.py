#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Central logging setup for the superalgebra verifier.
- Rotating file log under the configured logs directory
- Console log on stderr (stdout is reserved for `eval` / `table` output)
- get_logger() only hands out children of the "verifier" logger
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, Union

ROOT_NAME = "verifier"


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Child logger of "verifier"; safe to call at import time."""
    if not name or name == ROOT_NAME:
        return logging.getLogger(ROOT_NAME)
    return logging.getLogger(f"{ROOT_NAME}.{name}")


def setup_logging(logs_dir: Union[str, Path, None] = "folders/logs",
                  level: int = logging.INFO) -> logging.Logger:
    root = logging.getLogger(ROOT_NAME)
    root.setLevel(level)
    if getattr(root, "_verifier_configured", False):
        for h in root.handlers:
            h.setLevel(level)
        return root

    ch = logging.StreamHandler(sys.stderr)
    ch.setLevel(level)
    ch.setFormatter(logging.Formatter('[%(asctime)s] %(levelname)s %(message)s', datefmt='%Y-%m-%d %H:%M:%S'))
    root.addHandler(ch)

    if logs_dir is not None:
        logs_root = Path(logs_dir)
        logs_root.mkdir(parents=True, exist_ok=True)
        # 5 MB x 5 files
        fh = RotatingFileHandler(logs_root / 'verifier.log', maxBytes=5*1024*1024, backupCount=5, encoding='utf-8')
        fh.setLevel(level)
        fh.setFormatter(logging.Formatter('%(asctime)s | %(levelname)s | %(name)s | %(message)s', datefmt='%Y-%m-%d %H:%M:%S'))
        root.addHandler(fh)

    root.propagate = False
    root._verifier_configured = True
    root.debug('Logging initialized')
    return root
