#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Superalgebra verifier - command line entry point.
- verify: run a suite against a construction (exit 0 pass, 1 fail, 2 inconclusive, 3 usage)
- eval:   evaluate an element expression and print its canonical form
- table:  print products of the construction's generators
- watch:  monitor the input folder for suite files and run them in the background
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

from watchdog.events import FileSystemEventHandler
from watchdog.observers import Observer

import constructions as cs
from batch import SUITE_SUFFIX, JobManager
from expr_parser import eval_expr
from logging_setup import get_logger, setup_logging
from polyring import ParseError
from suite import (CONSTRUCTION_NAMES, EXIT_USAGE, SUITE_NAMES, UsageError, format_summary,
                   load_config, run_suite, suite_config_from)

logger = get_logger("cli")


class SuiteFileHandler(FileSystemEventHandler):
    def __init__(self, job_manager: JobManager):
        self.job_manager = job_manager

    def on_created(self, event):
        is_dir = getattr(event, 'is_directory', getattr(event, 'is_dir', False))
        if is_dir or not str(event.src_path).endswith(SUITE_SUFFIX):
            return
        path = Path(event.src_path)
        logger.info(f"DETECT New suite file: {path.name}")
        # let the writer finish before reading
        for _ in range(10):
            try:
                if path.stat().st_size > 0:
                    break
            except FileNotFoundError:
                return
            time.sleep(0.2)
        try:
            self.job_manager.submit_file(path)
        except Exception as e:
            logger.exception(f"Failed to queue {path.name}: {e}")


class VerifierService:
    def __init__(self, config):
        self.config = config
        self.job_manager = JobManager(config)
        self.observer = Observer()
        self.handler = SuiteFileHandler(self.job_manager)

    def start(self, run_seconds: Optional[float] = None):
        logger.info("START verification queue")
        input_dir = str(self.job_manager.input_dir)
        self.observer.schedule(self.handler, input_dir, recursive=False)
        self.observer.start()
        self.job_manager.start()
        logger.info(f"MONITOR {input_dir}")
        deadline = None if run_seconds is None else time.time() + run_seconds
        try:
            while deadline is None or time.time() < deadline:
                time.sleep(1)
        except KeyboardInterrupt:
            logger.info("KEYBOARD INTERRUPT received")
        self.stop()

    def stop(self):
        logger.info("STOP Shutting down...")
        self.observer.stop(); self.observer.join()
        self.job_manager.stop()
        logger.info("EXIT Done")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="verifier", description="Exact verification of Jordan superalgebra constructions")
    p.add_argument("-c", "--config", default="config.txt", help="INI defaults file (default: config.txt)")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--construction", choices=CONSTRUCTION_NAMES)
    v.add_argument("--suite", choices=SUITE_NAMES)
    v.add_argument("--trials", type=int)
    v.add_argument("--max-deg", dest="max_deg", type=int)
    v.add_argument("--window", type=int)
    v.add_argument("--max-window", dest="max_window", type=int)
    v.add_argument("--deg-bound", dest="deg_bound", type=int)
    v.add_argument("--seeds", type=int, help="random seeds per saturation check")
    v.add_argument("--seed", type=int, help="master rng seed")
    v.add_argument("--workers", type=int)
    v.add_argument("--json", dest="json_path", metavar="PATH")

    e = sub.add_parser("eval", help="evaluate an element expression")
    e.add_argument("--construction", choices=CONSTRUCTION_NAMES, default="jvec")
    e.add_argument("expr")

    t = sub.add_parser("table", help="multiplication table on the generator set")
    t.add_argument("--construction", choices=CONSTRUCTION_NAMES, default="jadelta")

    w = sub.add_parser("watch", help="run suite files dropped into the input folder")
    w.add_argument("--seconds", type=float, help="stop after this many seconds")
    return p


def _cmd_verify(args, config) -> int:
    section = config['verify'] if config.has_section('verify') else None
    overrides = {k: getattr(args, k) for k in ("construction", "suite", "trials", "max_deg", "window",
                                               "max_window", "deg_bound", "seeds", "seed", "workers",
                                               "json_path")}
    try:
        cfg = suite_config_from(section, overrides)
    except UsageError as e:
        print(f"verifier: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(cfg)
    print(format_summary(report))
    return report.exit_code


def _cmd_eval(args) -> int:
    try:
        print(eval_expr(args.expr, args.construction))
    except ParseError as e:
        print(f"verifier: {e}", file=sys.stderr)
        print(f"  {args.expr}\n  {' ' * e.position}^", file=sys.stderr)
        return EXIT_USAGE
    except cs.MembershipError as e:
        print(f"verifier: {e}", file=sys.stderr)
        return EXIT_USAGE
    return 0


def _cmd_table(args) -> int:
    rows = cs.multiplication_table(args.construction)
    width = max(len(a) for a, _, _ in rows)
    for a, b, prod in rows:
        print(f"{a:>{width}} * {b:<{width}} = {prod}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(args.config)
    logs_dir = config.get('paths', 'logs_dir', fallback='folders/logs')
    setup_logging(logs_dir, logging.DEBUG if args.verbose else logging.INFO)

    if args.command == "verify":
        return _cmd_verify(args, config)
    if args.command == "eval":
        return _cmd_eval(args)
    if args.command == "table":
        return _cmd_table(args)
    VerifierService(config).start(args.seconds)
    return 0


if __name__ == '__main__':
    sys.exit(main())
