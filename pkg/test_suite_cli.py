import configparser
import json
from pathlib import Path

import numpy as np
import pytest

import coordalg as ca
import main
import structure as st
import suite
from polyring import parse_poly
from suite import (EXIT_USAGE, Outcome, SuiteConfig, UsageError, build_checks, format_summary,
                   overall_outcome, result_outcome, run_suite, suite_config_from)
from superkernel import CheckReport, CheckStatus

SMALL = dict(trials=2, max_deg=2, window=12, max_window=24, deg_bound=6, seeds=2)


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.txt"
    path.write_text(
        "[paths]\n"
        f"logs_dir = {tmp_path / 'logs'}\n"
        "[verify]\n"
        "construction = jvec\n"
        "trials = 2\n"
        "max_deg = 2\n",
        encoding="utf-8")
    return path


# -- configuration

def test_config_layers():
    parser = configparser.ConfigParser()
    parser.read_string("[verify]\ntrials = 7\nsuite = bracket\n")
    cfg = suite_config_from(parser["verify"], {"trials": 9, "seed": None})
    assert cfg.trials == 9
    assert cfg.suite == "bracket"
    assert cfg.seed == 42


@pytest.mark.parametrize("bad", [
    {"construction": "octonions"},
    {"suite": "everything"},
    {"trials": 0},
    {"max_deg": -1},
    {"window": 50, "max_window": 48},
    {"seed": -1},
])
def test_invalid_configs_are_usage_errors(bad):
    with pytest.raises(UsageError):
        SuiteConfig(**bad)


def test_non_integer_value_in_config():
    parser = configparser.ConfigParser()
    parser.read_string("[verify]\ntrials = many\n")
    with pytest.raises(UsageError):
        suite_config_from(parser["verify"])


# -- outcomes

def test_outcome_mapping():
    assert result_outcome(CheckReport("x", 1, CheckStatus.PASS)) == Outcome.PASS
    assert result_outcome(CheckReport("x", 0, CheckStatus.VACUOUS_PASS)) == Outcome.PASS
    assert result_outcome(CheckReport("x", 1, CheckStatus.COUNTEREXAMPLE)) == Outcome.FAIL
    assert result_outcome(CheckReport("x", 0, "error")) == Outcome.FAIL
    assert result_outcome(st.Certificate(None, 2, st.CertificateStatus.NOT_FOUND)) == Outcome.INCONCLUSIVE
    assert overall_outcome([Outcome.PASS, Outcome.INCONCLUSIVE]) == Outcome.INCONCLUSIVE
    assert overall_outcome([Outcome.INCONCLUSIVE, Outcome.FAIL]) == Outcome.FAIL
    assert overall_outcome([]) == Outcome.PASS


def test_negative_control_expects_no_unit():
    rep = st.SaturationReport("Gamma", None, False, 24, 10, expect_reach=False)
    assert result_outcome(rep) == Outcome.PASS
    rep.reached_one = True
    assert result_outcome(rep) == Outcome.FAIL


def test_all_suite_covers_every_check():
    names = [n for n, _ in build_checks(SuiteConfig(construction="gck", suite="all"))]
    for expected in ("identity-1#0", "identity-4#1", "grading", "unit", "gck-closure", "bracket-D",
                     "bracket-D22", "double-consistency", "simplicity-A", "simplicity-gck", "negative-control",
                     "w-extraction", "probes", "parity-degree", "witness-rejection", "embedding",
                     "certificates"):
        assert expected in names


# -- runs

def test_jordan_run_passes_and_is_deterministic():
    a = run_suite(SuiteConfig(construction="jadelta", suite="jordan", workers=1, seed=7, **SMALL))
    b = run_suite(SuiteConfig(construction="jadelta", suite="jordan", workers=3, seed=7, **SMALL))
    assert a.overall == Outcome.PASS
    assert a.exit_code == 0
    assert a.to_json() == b.to_json()
    assert "dual-path" in a.to_json()
    assert "time" not in a.to_dict()


def test_jordan_identities_are_sharded_then_merged():
    cfg = SuiteConfig(construction="ck", suite="jordan", trials=1, max_deg=0, workers=1)
    names = [n for n, _ in build_checks(cfg)]
    shards = {1: 2, 2: 2, 3: 4, 4: 4}
    assert names[:12] == [f"identity-{i}#{k}" for i in (1, 2, 3, 4) for k in range(shards[i])]
    report = run_suite(cfg)
    assert [(r.identity, r.trials) for r in report.results] == [
        ("identity-1", 4), ("identity-2", 2), ("identity-3", 8), ("identity-4", 16),
        ("grading-closure", 4), ("unit", 2)]


def test_thread_fallback_gives_the_same_report(monkeypatch):
    cfg = SuiteConfig(construction="jvec", suite="jordan", workers=3, seed=5, **SMALL)
    pooled = run_suite(cfg)

    def refuse(*args, **kwargs):
        raise OSError("no processes here")
    monkeypatch.setattr(suite, "ProcessPoolExecutor", refuse)
    threaded = run_suite(cfg)
    assert threaded.to_json() == pooled.to_json()


GOLDEN = Path(__file__).parent / "testdata" / "golden_ck_jordan.json"
GOLDEN_CONFIG = dict(construction="ck", suite="jordan", trials=1, max_deg=0, seed=1,
                     window=24, max_window=48, deg_bound=16, seeds=20)


@pytest.mark.parametrize("workers", [1, 2])
def test_report_matches_golden_file(tmp_path, workers):
    outs = [tmp_path / "first.json", tmp_path / "second.json"]
    for out in outs:
        run_suite(SuiteConfig(workers=workers, json_path=str(out), **GOLDEN_CONFIG))
    assert outs[0].read_bytes() == outs[1].read_bytes()
    assert outs[0].read_bytes() == GOLDEN.read_bytes()


def test_parity_report_surfaces_a_failed_obstruction(monkeypatch):
    monkeypatch.setattr(ca, "ONE_MINUS_Y4", parse_poly("1 - y^2"))
    report = suite._parity_report(5, 2, np.random.default_rng(3))
    assert report.status == CheckStatus.COUNTEREXAMPLE
    assert report.witness.rhs == "parity obstruction"
    assert "not 0 mod 4" in report.witness.lhs


def test_certificate_suite():
    report = run_suite(SuiteConfig(suite="certificates", **SMALL))
    assert report.overall == Outcome.PASS
    kinds = [r.to_dict().get("kind") for r in report.results]
    assert kinds.count("certificate") == 2


def test_noncyclic_suite():
    report = run_suite(SuiteConfig(suite="noncyclic", **SMALL))
    assert report.overall == Outcome.PASS
    probes = [r for r in report.results if isinstance(r, st.ProbeResult)]
    assert len(probes) == SMALL["trials"]


def test_json_report_is_written(tmp_path):
    out = tmp_path / "reports" / "run.json"
    report = run_suite(SuiteConfig(construction="ck", suite="jordan", json_path=str(out), **SMALL))
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["overall"] == report.overall
    assert data["config"]["construction"] == "ck"
    assert all("outcome" in c for c in data["checks"])
    assert "overall: pass" in format_summary(report)


# -- command line

def test_cli_verify(config_file, tmp_path, capsys):
    out = tmp_path / "cli.json"
    code = main.main(["-c", str(config_file), "verify", "--suite", "embedding", "--json", str(out)])
    assert code == 0
    assert out.exists()
    assert json.loads(out.read_text(encoding="utf-8"))["config"]["construction"] == "jvec"
    assert "embedding-homomorphism" in capsys.readouterr().out


def test_cli_eval(config_file, capsys):
    assert main.main(["-c", str(config_file), "eval", "--construction", "ck", "w3(1) * w3(1)"]) == 0
    assert capsys.readouterr().out.strip() == "-1"


def test_cli_eval_errors(config_file, capsys):
    assert main.main(["-c", str(config_file), "eval", "--construction", "jvec", "bar(x) *"]) == EXIT_USAGE
    assert "position 8" in capsys.readouterr().err
    assert main.main(["-c", str(config_file), "eval", "--construction", "jadelta", "bar(1)"]) == EXIT_USAGE


def test_cli_table(config_file, capsys):
    assert main.main(["-c", str(config_file), "table", "--construction", "jadelta"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 25
    assert any(line.endswith("= 1 + y^4") for line in lines)


def test_cli_usage_errors(config_file):
    with pytest.raises(SystemExit) as exc:
        main.main(["-c", str(config_file), "verify", "--construction", "octonions"])
    assert exc.value.code == EXIT_USAGE
    assert main.main(["-c", str(config_file), "verify", "--trials", "0"]) == EXIT_USAGE
