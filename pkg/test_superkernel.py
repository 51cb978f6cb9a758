import dataclasses

import numpy as np
import pytest

import coordalg as ca
import constructions as cs
from superkernel import (JORDAN_IDENTITIES, BracketSpec, CheckReport, CheckStatus, DoubleEl,
                         SuperAlgebraHandle, Witness, check_grading, check_identity_1,
                         check_jordan_bracket, check_jordan_suite, check_unit, kantor_double,
                         leading_parity_shards, merge_reports, run_pointwise_check)

TRIALS = 3
MAX_DEG = 2


def rng(seed=0):
    return np.random.default_rng(seed)


def test_sign_helpers():
    h = cs.jvec_handle()
    assert h.sign(1, 1) == 1
    assert h.sign(1, 0, 0) == -1
    u = cs.JVecEl(ca.Y)
    assert h.signed(-1, u) == cs.JVecEl(-ca.Y)
    assert h.signed(1, u) is u


def test_pointwise_check_reports_first_disagreement():
    h = cs.jvec_handle()
    calls = []

    def evaluate(p, e):
        calls.append(tuple(p))
        return (0, 0) if p == [0] else (1, 2)

    report = run_pointwise_check(h, "fake", 1, 4, MAX_DEG, rng(), evaluate, ("a",))
    assert report.status == CheckStatus.COUNTEREXAMPLE
    assert not report.passed
    assert report.trials == 5
    assert report.witness.lhs == "1" and report.witness.rhs == "2"
    assert report.witness.parities == [1]
    assert report.witness.inputs[0].startswith("a=")
    assert calls[:4] == [(0,)] * 4


def test_pointwise_check_rejects_zero_trials():
    with pytest.raises(ValueError):
        run_pointwise_check(cs.jvec_handle(), "x", 1, 0, MAX_DEG, rng(), lambda p, e: (0, 0), ("a",))


@pytest.mark.parametrize("name", ["jvec", "jadelta", "double", "ck", "gck"])
def test_every_construction_is_a_jordan_superalgebra(name):
    reports = check_jordan_suite(cs.get_handle(name), TRIALS, MAX_DEG, rng(1))
    assert [r.identity for r in reports] == ["identity-1", "identity-2", "identity-3", "identity-4"]
    assert all(r.status == CheckStatus.PASS for r in reports), [r.to_dict() for r in reports]


@pytest.mark.parametrize("name", ["jvec", "jadelta", "double", "ck", "gck"])
def test_grading_and_unit(name):
    h = cs.get_handle(name)
    assert check_grading(h, TRIALS, MAX_DEG, rng(2)).passed
    assert check_unit(h, TRIALS, MAX_DEG, rng(3)).passed


def test_unit_check_needs_a_unit():
    h = dataclasses.replace(cs.jvec_handle(), unit=None)
    with pytest.raises(ValueError):
        check_unit(h, TRIALS, MAX_DEG, rng())


def test_identity_1_counts_all_parity_patterns():
    report = check_identity_1(cs.jvec_handle(), TRIALS, MAX_DEG, rng())
    assert report.trials == 4 * TRIALS
    assert report.construction == "jvec"


@pytest.mark.parametrize("spec", [ca.D, ca.D11, ca.D12, ca.D22])
def test_derivation_brackets_are_jordan_brackets(spec):
    reports = check_jordan_bracket(cs.derivation_bracket(spec), TRIALS, MAX_DEG, rng(4))
    assert [r.identity for r in reports] == ["bracket-5", "bracket-6", "bracket-7"]
    assert reports[0].passed and reports[1].passed
    # Gamma is purely even
    assert reports[2].status == CheckStatus.VACUOUS_PASS


def test_dropping_the_unit_term_is_caught():
    reports = check_jordan_bracket(cs.d_bracket(), 10, MAX_DEG, rng(5), unit_term=False)
    assert reports[0].identity == "bracket-5"
    assert reports[0].status == CheckStatus.COUNTEREXAMPLE
    assert reports[0].witness is not None


def test_kantor_double_products():
    h = kantor_double(cs.d_bracket())
    assert h.name == "double(D-bracket)"
    a = DoubleEl(ca.Y, ca.ZERO)
    bx = DoubleEl(ca.ZERO, ca.X)
    assert h.mult(a, bx) == DoubleEl(ca.ZERO, ca.Y * ca.X)
    assert h.mult(bx, a) == DoubleEl(ca.ZERO, ca.X * ca.Y)
    # xbar . ybar = {x, y} = D(x)y - xD(y) = 1 + y^4
    assert h.mult(bx, DoubleEl(ca.ZERO, ca.Y)) == DoubleEl(cs.ONE_PLUS_Y4, ca.ZERO)
    assert h.parity_of(a) == 0 and h.parity_of(bx) == 1
    assert h.describe(bx) == "bar(x)"


def test_report_serialisation():
    report = check_identity_1(cs.jadelta_handle(), 1, 1, rng())
    d = report.to_dict()
    assert d["identity"] == "identity-1"
    assert d["witness"] is None
    assert d["notes"] == ["path=formula8"]


# -- parity shards

def test_leading_parity_shards_partition_the_patterns():
    shards = leading_parity_shards(3)
    assert [len(s) for s in shards] == [4, 4]
    assert all(p[0] == 0 for p in shards[0]) and all(p[0] == 1 for p in shards[1])
    assert sorted(shards[0] + shards[1]) == sorted(set(shards[0] + shards[1]))
    wide = leading_parity_shards(4, 2)
    assert [len(s) for s in wide] == [4, 4, 4, 4]
    assert [p for s in wide for p in s] == sorted(p for s in wide for p in s)
    assert len({p for s in wide for p in s}) == 16
    assert leading_parity_shards(1, 2) == [[(0,)], [(1,)]]


def test_shards_add_up_to_the_full_check():
    h = cs.jvec_handle()
    full = check_identity_1(h, TRIALS, MAX_DEG, rng(6))
    parts = [check_identity_1(h, TRIALS, MAX_DEG, rng(6), patterns=p) for p in leading_parity_shards(2)]
    merged = merge_reports(parts, "identity-1")
    assert merged.to_dict() == full.to_dict()
    assert merged.trials == 4 * TRIALS


def test_merge_reports_stops_at_the_first_failure():
    w = Witness(["a=y"], "1", "2", [1])
    reports = [CheckReport("identity-3", 6, CheckStatus.PASS, None, "ck", ("note",)),
               CheckReport("identity-3", 2, CheckStatus.COUNTEREXAMPLE, w, "ck", ("note",)),
               CheckReport("identity-3", 8, CheckStatus.PASS, None, "ck", ("note",))]
    merged = merge_reports(reports, "identity-3")
    assert merged.identity == "identity-3"
    assert merged.trials == 8
    assert merged.status == CheckStatus.COUNTEREXAMPLE
    assert merged.witness is w
    errored = merge_reports([reports[0], CheckReport("identity-3#1", 0, "error")], "identity-3")
    assert errored.status == "error" and errored.identity == "identity-3"
    with pytest.raises(ValueError):
        merge_reports([], "identity-1")


def test_jordan_identity_table():
    assert [(name, arity) for name, _, arity in JORDAN_IDENTITIES] == [
        ("identity-1", 2), ("identity-2", 1), ("identity-3", 3), ("identity-4", 4)]


# -- a carrier with an odd part: the Grassmann algebra on e1, e2
# elements are coefficient tuples over the basis 1, e1, e2, e1e2

G_ZERO = (0, 0, 0, 0)
G_ONE = (1, 0, 0, 0)
E1 = (0, 1, 0, 0)
E2 = (0, 0, 1, 0)
E12 = (0, 0, 0, 1)


def g_mul(u, v):
    return (u[0] * v[0],
            u[0] * v[1] + u[1] * v[0],
            u[0] * v[2] + u[2] * v[0],
            u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1])


def g_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def g_scale(u, s):
    return tuple(a * s for a in u)


def g_parts(u):
    return (u[0], 0, 0, u[3]), (0, u[1], u[2], 0)


def g_parity(u):
    even, odd = g_parts(u)
    if odd == G_ZERO:
        return 0
    return 1 if even == G_ZERO else "inhomogeneous"


def g_sample(parity, max_deg, gen):
    c = [int(v) for v in gen.integers(-3, 4, size=2)]
    return (c[0], 0, 0, c[1]) if parity == 0 else (0, c[0], c[1], 0)


def grassmann_handle() -> SuperAlgebraHandle:
    return SuperAlgebraHandle(name="grassmann(2)", mult=g_mul, parity_of=g_parity, add=g_add,
                              sub=lambda u, v: g_add(u, g_scale(v, -1)), scale=g_scale,
                              zero=G_ZERO, sample_homogeneous=g_sample, describe=str,
                              unit=G_ONE, homogeneous_parts=g_parts)


def g_partials(u):
    """Left derivatives d/de1, d/de2."""
    return (u[1], 0, u[3], 0), (u[2], -u[3], 0, 0)


def poisson_bracket(f, g):
    """{f, g} = (-1)^p(f) sum_i d_i(f) d_i(g), extended bilinearly."""
    out = G_ZERO
    for sign, part in zip((1, -1), g_parts(f)):
        for df, dg in zip(g_partials(part), g_partials(g)):
            out = g_add(out, g_scale(g_mul(df, dg), sign))
    return out


def test_grassmann_poisson_bracket_values():
    assert poisson_bracket(E1, E1) == (-1, 0, 0, 0)
    assert poisson_bracket(E1, E2) == G_ZERO
    assert poisson_bracket(E1, E12) == (0, 0, -1, 0)
    assert poisson_bracket(E12, E1) == (0, 0, 1, 0)
    assert poisson_bracket(G_ONE, E12) == G_ZERO


def test_bracket_axioms_run_on_an_odd_carrier():
    b = BracketSpec("poisson", grassmann_handle(), poisson_bracket)
    reports = check_jordan_bracket(b, TRIALS, 1, rng(8))
    assert [r.identity for r in reports] == ["bracket-5", "bracket-6", "bracket-7"]
    assert all(r.status == CheckStatus.PASS for r in reports), [r.to_dict() for r in reports]
    assert reports[2].trials == TRIALS


def test_bracket_7_catches_a_bad_odd_square():
    # adding d to {d, d} for odd d breaks {d, {d, d}} = {d, d}{d, 1}
    def bad(f, g):
        return g_add(poisson_bracket(f, g), g_mul(g_parts(f)[1], G_ONE) if f == g else G_ZERO)
    report = check_jordan_bracket(BracketSpec("bad", grassmann_handle(), bad), 20, 1, rng(9))[2]
    assert report.identity == "bracket-7"
    assert report.status == CheckStatus.COUNTEREXAMPLE
    assert report.witness.parities == [1]


def test_kantor_double_odd_signs():
    h = kantor_double(BracketSpec("poisson", grassmann_handle(), poisson_bracket))
    e1x, e2 = DoubleEl(G_ZERO, E1), DoubleEl(E2, G_ZERO)
    # ax.b = (-1)^p(b) (ab)x
    assert h.mult(e1x, e2) == DoubleEl(G_ZERO, g_scale(E12, -1))
    # ax.bx = (-1)^p(b) {a, b}
    assert h.mult(e1x, e1x) == DoubleEl(G_ONE, G_ZERO)
    assert h.parity_of(e1x) == 0 and h.parity_of(e2) == 1
    assert h.parity_of(DoubleEl(E1, E1)) == "inhomogeneous"


@pytest.mark.parametrize("bracket", [poisson_bracket, lambda f, g: G_ZERO], ids=["poisson", "zero"])
def test_kantor_double_of_an_odd_carrier_is_jordan(bracket):
    h = kantor_double(BracketSpec("grassmann", grassmann_handle(), bracket))
    reports = check_jordan_suite(h, TRIALS, 1, rng(10))
    assert all(r.status == CheckStatus.PASS for r in reports), [r.to_dict() for r in reports]
    assert check_grading(h, TRIALS, 1, rng(11)).passed
    assert check_unit(h, TRIALS, 1, rng(12)).passed
