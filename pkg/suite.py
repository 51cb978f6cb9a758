#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verification suites: configuration, dispatch and reporting.
- SuiteConfig is read from config.txt [verify] and overridden by CLI flags
- one master seed is split into one numpy Generator per check (SeedSequence.spawn)
- checks run on a process pool (threads as a fallback); the report is assembled by check index
- each Jordan identity is split into parity shards that are merged back after the run
- JSON reports are written atomically and contain no wall-clock data
"""

import configparser
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

import constructions as cs
import coordalg as ca
import structure as st
from coordalg import Space
from logging_setup import get_logger, setup_logging
from polyring import Poly
from state_store import atomic_write_json
from superkernel import (JORDAN_IDENTITIES, CheckReport, CheckStatus, Witness, check_grading,
                         check_jordan_bracket, check_unit, leading_parity_shards, merge_reports,
                         note_identity_4)

log = get_logger("suite")

CONSTRUCTION_NAMES = ("jvec", "jadelta", "double", "ck", "gck")
SUITE_NAMES = ("jordan", "bracket", "simplicity", "noncyclic", "embedding", "certificates", "all")


class UsageError(ValueError):
    pass


class Outcome:
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


EXIT_CODES = {Outcome.PASS: 0, Outcome.FAIL: 1, Outcome.INCONCLUSIVE: 2}
EXIT_USAGE = 3

DEFAULTS: Dict[str, Any] = {
    "construction": "jadelta",
    "suite": "jordan",
    "trials": 200,
    "max_deg": 4,
    "window": 24,
    "max_window": 48,
    "deg_bound": 16,
    "seeds": 20,
    "seed": 42,
    "workers": 4,
}


@dataclass(frozen=True)
class SuiteConfig:
    construction: str = DEFAULTS["construction"]
    suite: str = DEFAULTS["suite"]
    trials: int = DEFAULTS["trials"]
    max_deg: int = DEFAULTS["max_deg"]
    window: int = DEFAULTS["window"]
    max_window: int = DEFAULTS["max_window"]
    deg_bound: int = DEFAULTS["deg_bound"]
    seeds: int = DEFAULTS["seeds"]
    seed: int = DEFAULTS["seed"]
    workers: int = DEFAULTS["workers"]
    json_path: Optional[str] = None

    def __post_init__(self):
        if self.construction not in CONSTRUCTION_NAMES:
            raise UsageError(f"unknown construction: {self.construction}")
        if self.suite not in SUITE_NAMES:
            raise UsageError(f"unknown suite: {self.suite}")
        if self.trials < 1:
            raise UsageError("trials must be >= 1")
        if self.max_deg < 0:
            raise UsageError("max_deg must be >= 0")
        if self.window > self.max_window:
            raise UsageError("window must be <= max_window")
        if self.deg_bound < 0 or self.seeds < 1 or self.workers < 1:
            raise UsageError("deg_bound must be >= 0, seeds and workers >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("seed must be a 64-bit unsigned integer")

    def echo(self) -> Dict[str, Any]:
        return {"construction": self.construction, "suite": self.suite, "trials": self.trials,
                "max_deg": self.max_deg, "window": self.window, "max_window": self.max_window,
                "deg_bound": self.deg_bound, "seeds": self.seeds, "seed": self.seed}


_INT_KEYS = ("trials", "max_deg", "window", "max_window", "deg_bound", "seeds", "seed", "workers")


def load_config(path) -> configparser.ConfigParser:
    cfg = configparser.ConfigParser()
    if path and Path(path).exists():
        cfg.read(path, encoding='utf-8')
    return cfg


def suite_config_from(section: Optional[configparser.SectionProxy] = None,
                      overrides: Optional[Dict[str, Any]] = None) -> SuiteConfig:
    """Defaults < config section < non-None overrides."""
    values = dict(DEFAULTS)
    values["json_path"] = None
    if section is not None:
        for key in values:
            if key in section:
                raw = section.get(key).strip()
                try:
                    values[key] = int(raw) if key in _INT_KEYS else (raw or None)
                except ValueError:
                    raise UsageError(f"[{section.name}] {key} must be an integer, got {raw!r}") from None
    for key, v in (overrides or {}).items():
        if v is not None:
            values[key] = v
    return SuiteConfig(**values)


# ---------------------------------------------------------------------------
# Results

def result_outcome(result) -> str:
    status = getattr(result, "status", None)
    if status in (CheckStatus.PASS, CheckStatus.VACUOUS_PASS, st.SaturationOutcome.REACHED,
                  st.ProbeStatus.INFEASIBLE, st.CertificateStatus.FOUND):
        if isinstance(result, st.SaturationReport) and result.replayed is False:
            return Outcome.FAIL
        if isinstance(result, st.SaturationReport) and result.expect_reach is False:
            return Outcome.FAIL
        return Outcome.PASS
    if status == st.SaturationOutcome.INCONCLUSIVE:
        if isinstance(result, st.SaturationReport) and result.expect_reach is False:
            return Outcome.PASS
        return Outcome.INCONCLUSIVE
    if status == st.CertificateStatus.NOT_FOUND:
        return Outcome.INCONCLUSIVE
    return Outcome.FAIL


def overall_outcome(outcomes: List[str]) -> str:
    if Outcome.FAIL in outcomes:
        return Outcome.FAIL
    if Outcome.INCONCLUSIVE in outcomes:
        return Outcome.INCONCLUSIVE
    return Outcome.PASS


@dataclass
class RunReport:
    config: SuiteConfig
    results: List[Any] = field(default_factory=list)
    outcomes: List[str] = field(default_factory=list)
    overall: str = Outcome.PASS
    wall_time: float = 0.0

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.overall]

    def to_dict(self) -> Dict[str, Any]:
        checks = []
        for r, outcome in zip(self.results, self.outcomes):
            d = r.to_dict()
            d["outcome"] = outcome
            checks.append(d)
        return {"config": self.config.echo(), "overall": self.overall, "checks": checks}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


def _error_report(name: str, exc: Exception) -> CheckReport:
    return CheckReport(name, 0, "error", Witness([], type(exc).__name__, str(exc)))


# ---------------------------------------------------------------------------
# Checks

Check = Tuple[str, Callable[[np.random.Generator], List[Any]]]


def _nonzero_homogeneous(h, parity: int, max_deg: int, rng):
    for _ in range(100):
        u = h.sample_homogeneous(parity, max(max_deg, 1), rng)
        if not h.is_zero(u):
            return u
    raise ValueError(f"could not sample a nonzero element of parity {parity} in {h.name}")


def _parity_report(trials: int, max_deg: int, rng) -> CheckReport:
    for k in range(trials):
        h1 = ca.sample_random(Space.A, max(max_deg, 1), rng).p
        e1 = ca.sample_random(Space.A, max(max_deg, 1), rng).p
        u = 0
        while u == 0:
            u = int(rng.integers(-ca.COEFF_RANGE, ca.COEFF_RANGE + 1))
        try:
            st.parity_degree_witness(h1, e1, u)
        except st.ParityObstructionError as e:
            w = Witness([f"h1={h1}", f"e1={e1}", f"u={u}"], str(e), "parity obstruction")
            return CheckReport("parity-degree", k + 1, CheckStatus.COUNTEREXAMPLE, w)
    return CheckReport("parity-degree", trials, CheckStatus.PASS)


def _witness_rejection_report() -> CheckReport:
    """A fake cyclic generator must be rejected by re-verification."""
    fakes = [(ca.X, ca.ONE, ca.ONE), (ca.X + ca.Y, ca.ONE, ca.ZERO), (ca.Y, ca.ZERO, ca.ONE)]
    for z, c, d in fakes:
        if st.verify_cyclic_witness(z, c, d):
            w = Witness([f"z={z}", f"c={c}", f"d={d}"], "accepted", "rejected")
            return CheckReport("witness-rejection", len(fakes), CheckStatus.COUNTEREXAMPLE, w)
    return CheckReport("witness-rejection", len(fakes), CheckStatus.PASS)


def _saturation_seeds(cfg: SuiteConfig, space: str, derivs, rng) -> List[st.SaturationReport]:
    out = []
    for _ in range(cfg.seeds):
        seed = ca.sample_random(space, max(cfg.max_deg, 1), rng, nonzero=True)
        rep = st.d_ideal_saturate(space, derivs, seed, cfg.window, cfg.max_window)
        rep.replayed = st.replay_saturation(rep) if rep.reached_one else None
        out.append(rep)
    return out


def _negative_control(cfg: SuiteConfig) -> st.SaturationReport:
    rep = st.d_ideal_saturate(Space.GAMMA, [], ca.y_power(2), cfg.max_window, cfg.max_window)
    rep.expect_reach = False
    return rep


def _super_seeds(cfg: SuiteConfig, construction: str, rng) -> List[st.SaturationReport]:
    h = cs.get_handle(construction)
    out = []
    for k in range(min(cfg.seeds, 10)):
        seed = _nonzero_homogeneous(h, k % 2, cfg.max_deg, rng)
        rep = st.super_ideal_saturate(construction, seed, cfg.window, cfg.max_window)
        rep.replayed = st.replay_saturation(rep) if rep.reached_one else None
        out.append(rep)
    return out


def _certificates(cfg: SuiteConfig) -> List[Any]:
    results: List[Any] = []
    bound = min(cfg.deg_bound, 8)
    one = st.find_certificate(ca.ONE, bound)
    results.append(one)
    if one.status == st.CertificateStatus.FOUND:
        ok = st.verify_associator_form(st.associator_form(one), ca.ONE)
        status = CheckStatus.PASS if ok else CheckStatus.COUNTEREXAMPLE
        wit = None if ok else Witness([str(t) for t in st.associator_form(one)], "sum", "1")
        results.append(CheckReport("associator-form", len(one.terms), status, wit))
    target = ca.GammaEl(Poly((-1, 0, 0, 0, 3)))
    results.append(st.find_certificate(target, bound))
    return results


def build_checks(cfg: SuiteConfig) -> List[Check]:
    """Ordered list of (name, fn(rng) -> results) for the configured suite."""
    name, n, deg = cfg.construction, cfg.trials, cfg.max_deg
    suites = SUITE_NAMES[:-1] if cfg.suite == "all" else (cfg.suite,)
    checks: List[Check] = []
    for suite in suites:
        if suite == "jordan":
            h = cs.get_handle(name)
            for ident, fn, arity in JORDAN_IDENTITIES:
                for k, pats in enumerate(leading_parity_shards(arity, 2 if arity >= 3 else 1)):
                    checks.append((f"{ident}#{k}", lambda rng, fn=fn, pats=pats, h=h: [
                        fn(h, n, deg, rng, patterns=pats)]))
            checks.append(("grading", lambda rng, h=h: [check_grading(h, n, deg, rng)]))
            checks.append(("unit", lambda rng, h=h: [check_unit(h, n, deg, rng)]))
            if name == "jadelta":
                checks.append(("dual-path", lambda rng: [cs.check_dual_path(n, deg, rng)]))
            if name == "gck":
                checks.append(("gck-closure", lambda rng: [cs.check_gck_closure(n, deg, rng)]))
        elif suite == "bracket":
            for d in (ca.D, ca.D11, ca.D12, ca.D22):
                b = cs.derivation_bracket(d)
                checks.append((f"bracket-{d.name}", lambda rng, b=b: check_jordan_bracket(b, n, deg, rng)))
            checks.append(("double-consistency", lambda rng: [cs.check_double_consistency(n, deg, rng)]))
        elif suite == "simplicity":
            if name in ("jadelta", "gck"):
                checks.append(("simplicity-A", lambda rng: _saturation_seeds(
                    cfg, Space.A, [ca.D11, ca.D12, ca.D22], rng)))
                checks.append((f"simplicity-{name}", lambda rng: _super_seeds(cfg, name, rng)))
            else:
                checks.append(("simplicity-Gamma", lambda rng: _saturation_seeds(
                    cfg, Space.GAMMA, [ca.D], rng)))
            checks.append(("negative-control", lambda rng: [_negative_control(cfg)]))
            if name in ("ck", "gck"):
                space = Space.A if name == "gck" else Space.GAMMA
                checks.append(("w-extraction", lambda rng: [cs.check_w_extraction(n, deg, rng, space)]))
        elif suite == "noncyclic":
            checks.append(("probes", lambda rng: [
                st.noncyclic_probe(st.random_module_element(rng, max(deg, 1)), cfg.deg_bound)
                for _ in range(n)]))
            checks.append(("parity-degree", lambda rng: [_parity_report(n, deg, rng)]))
            checks.append(("witness-rejection", lambda rng: [_witness_rejection_report()]))
        elif suite == "embedding":
            checks.append(("embedding", lambda rng: [cs.check_embedding(n, deg, rng)]))
        elif suite == "certificates":
            checks.append(("certificates", lambda rng: _certificates(cfg)))
    return checks


def _run_check(check: Check, rng: np.random.Generator) -> List[Any]:
    name, fn = check
    try:
        return fn(rng)
    except Exception as e:
        log.exception(f"CHECK {name} raised: {e}")
        return [_error_report(name, e)]


@lru_cache(maxsize=8)
def _checks_for(cfg: SuiteConfig) -> List[Check]:
    return build_checks(cfg)


def _init_worker(level: int):
    setup_logging(None, level)


def _run_task(cfg: SuiteConfig, index: int, stream: np.random.SeedSequence) -> List[Any]:
    """Process-pool entry point: handles hold lambdas, so each worker rebuilds them by name."""
    return _run_check(_checks_for(cfg)[index], np.random.default_rng(stream))


def _run_batches(cfg: SuiteConfig, checks: List[Check], streams) -> List[List[Any]]:
    if cfg.workers == 1 or len(checks) == 1:
        return [_run_check(c, np.random.default_rng(s)) for c, s in zip(checks, streams)]
    workers = min(cfg.workers, len(checks))
    indices = range(len(checks))
    try:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(get_logger().getEffectiveLevel(),)) as pool:
            return list(pool.map(_run_task, [cfg] * len(checks), indices, streams))
    except (OSError, NotImplementedError, BrokenProcessPool) as e:
        log.warning(f"RUN process pool unavailable ({e}); falling back to threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda c, s: _run_check(c, np.random.default_rng(s)), checks, streams))


def _merge_shards(names: List[str], batches: List[List[Any]]) -> List[Any]:
    """Flatten check results, folding "<identity>#<k>" shards back into one report."""
    out: List[Any] = []
    for base, group in itertools.groupby(zip(names, batches), key=lambda nb: nb[0].split("#")[0]):
        group = list(group)
        if "#" in group[0][0]:
            out.append(merge_reports([r for _, batch in group for r in batch], base))
        else:
            out.extend(r for _, batch in group for r in batch)
    return out


def run_suite(cfg: SuiteConfig) -> RunReport:
    """Run every check of the suite; deterministic in cfg.seed regardless of `workers`."""
    start = time.time()
    checks = build_checks(cfg)
    streams = np.random.SeedSequence(cfg.seed).spawn(len(checks))
    log.info(f"RUN {cfg.construction}/{cfg.suite} checks={len(checks)} seed={cfg.seed} workers={cfg.workers}")
    results = _merge_shards([name for name, _ in checks], _run_batches(cfg, checks, streams))
    note_identity_4([r for r in results if isinstance(r, CheckReport)], cfg.construction)

    report = RunReport(cfg)
    for r in results:
        report.results.append(r)
        report.outcomes.append(result_outcome(r))
    report.overall = overall_outcome(report.outcomes)
    report.wall_time = time.time() - start
    log.info(f"RESULT {cfg.construction}/{cfg.suite} overall={report.overall} "
             f"checks={len(report.results)} time={report.wall_time:.1f}s")
    if cfg.json_path:
        write_report(report, Path(cfg.json_path))
    return report


def write_report(report: RunReport, path: Path):
    atomic_write_json(path, report.to_dict())
    log.info(f"REPORT written {path}")


def format_summary(report: RunReport) -> str:
    lines = []
    for r, outcome in zip(report.results, report.outcomes):
        d = r.to_dict()
        label = d.get("identity") or d.get("kind")
        extra = ""
        if "trials" in d:
            extra = f"trials={d['trials']}"
        elif d.get("kind") == "saturation":
            extra = f"seed={d['seed']} window={d['window']}"
        elif d.get("kind") == "probe":
            extra = f"z={d['z']}"
        elif d.get("kind") == "certificate":
            extra = f"target={d['target']} terms={len(d['terms'])}"
        lines.append(f"{outcome.upper():<13}{label:<24}{extra}")
    lines.append(f"overall: {report.overall} ({report.wall_time:.1f}s)")
    return "\n".join(lines)

