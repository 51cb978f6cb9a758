#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Z2-graded algebra contract and the identity-verification engine.
- SuperAlgebraHandle: bundle of pure functions describing one superalgebra
- Jordan superidentities (1)-(3), associator identity (4)
- Jordan bracket axioms (5)-(7) and the Kantor double of a bracket
Operator identities are checked pointwise: t R_a R_b = (t.a).b.
"""

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from logging_setup import get_logger

log = get_logger("kernel")

INHOMOGENEOUS = "inhomogeneous"


class CheckStatus:
    PASS = "pass"
    COUNTEREXAMPLE = "counterexample"
    VACUOUS_PASS = "vacuous-pass"


@dataclass(frozen=True)
class SuperAlgebraHandle:
    name: str
    mult: Callable[[Any, Any], Any]
    parity_of: Callable[[Any], Any]
    add: Callable[[Any, Any], Any]
    sub: Callable[[Any, Any], Any]
    scale: Callable[[Any, Any], Any]
    zero: Any
    sample_homogeneous: Callable[[int, int, np.random.Generator], Any]
    describe: Callable[[Any], str]
    unit: Optional[Any] = None
    degree: Optional[Callable[[Any], Any]] = None
    coords: Optional[Callable[[Any], Dict]] = None
    homogeneous_parts: Optional[Callable[[Any], Tuple[Any, Any]]] = None
    notes: Tuple[str, ...] = ()

    def is_zero(self, u) -> bool:
        return u == self.zero

    def sign(self, *parities: int) -> int:
        return -1 if sum(parities) % 2 else 1

    def signed(self, s: int, u):
        return u if s == 1 else self.scale(u, -1)


@dataclass(frozen=True)
class BracketSpec:
    """Bracket on a unital supercommutative carrier."""
    name: str
    carrier: SuperAlgebraHandle
    bracket: Callable[[Any, Any], Any]


@dataclass
class Witness:
    inputs: List[str]
    lhs: str
    rhs: str
    parities: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"inputs": list(self.inputs), "parities": list(self.parities),
                "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class CheckReport:
    identity: str
    trials: int
    status: str
    witness: Optional[Witness] = None
    construction: str = ""
    notes: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.status != CheckStatus.COUNTEREXAMPLE

    def to_dict(self) -> Dict:
        d = {"identity": self.identity, "trials": self.trials, "status": self.status,
             "witness": self.witness.to_dict() if self.witness else None}
        if self.construction:
            d["construction"] = self.construction
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def _signed(h: SuperAlgebraHandle, s: int, u):
    return h.signed(s, u)


def _show(h: SuperAlgebraHandle, value) -> str:
    if value is None or isinstance(value, (bool, int, str)):
        return str(value)
    return h.describe(value)


def associator(h: SuperAlgebraHandle, x, z, y):
    """(x, z, y) = (xz)y - x(zy)."""
    return h.sub(h.mult(h.mult(x, z), y), h.mult(x, h.mult(z, y)))


def parity_patterns(arity: int) -> List[Tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=arity))


def leading_parity_shards(arity: int, width: int = 1) -> List[List[Tuple[int, ...]]]:
    """Parity patterns grouped by the parities of the first `width` inputs, in pattern order."""
    width = min(width, arity)
    return [[p for p in parity_patterns(arity) if p[:width] == lead]
            for lead in itertools.product((0, 1), repeat=width)]


def run_pointwise_check(h: SuperAlgebraHandle, identity: str, arity: int, trials: int,
                        max_deg: int, rng: np.random.Generator,
                        evaluate: Callable[[Sequence[int], Sequence[Any]], Tuple[Any, Any]],
                        labels: Sequence[str], with_test_element: bool = False,
                        patterns: Optional[Sequence[Tuple[int, ...]]] = None) -> CheckReport:
    """Evaluate lhs/rhs over every parity pattern (or the given subset), `trials` samples per pattern.

    The first exact disagreement is reported verbatim as the witness.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    count = 0
    for pattern in (parity_patterns(arity) if patterns is None else patterns):
        for trial in range(trials):
            elems = [h.sample_homogeneous(par, max_deg, rng) for par in pattern]
            pars = list(pattern)
            names = list(labels)
            if with_test_element:
                tpar = trial % 2
                elems.append(h.sample_homogeneous(tpar, max_deg, rng))
                pars.append(tpar)
                names.append("t")
            lhs, rhs = evaluate(pars, elems)
            count += 1
            if lhs != rhs:
                w = Witness([f"{n}={h.describe(e)}" for n, e in zip(names, elems)],
                            _show(h, lhs), _show(h, rhs), pars)
                log.warning(f"CHECK {identity} counterexample on {h.name}: {w.inputs}")
                return CheckReport(identity, count, CheckStatus.COUNTEREXAMPLE, w, h.name, h.notes)
    log.info(f"CHECK {identity} pass on {h.name} trials={count}")
    return CheckReport(identity, count, CheckStatus.PASS, None, h.name, h.notes)


def check_identity_1(h: SuperAlgebraHandle, trials: int, max_deg: int,
                     rng: np.random.Generator, patterns=None) -> CheckReport:
    """a.b = (-1)^{p(a)p(b)} b.a"""
    def evaluate(p, e):
        a, b = e
        return h.mult(a, b), _signed(h, h.sign(p[0] * p[1]), h.mult(b, a))
    return run_pointwise_check(h, "identity-1", 2, trials, max_deg, rng, evaluate, ("a", "b"),
                               patterns=patterns)


def check_identity_2(h: SuperAlgebraHandle, trials: int, max_deg: int,
                     rng: np.random.Generator, patterns=None) -> CheckReport:
    """(t.a^2).a = (t.a).a^2"""
    def evaluate(p, e):
        a, t = e
        a2 = h.mult(a, a)
        return h.mult(h.mult(t, a2), a), h.mult(h.mult(t, a), a2)
    return run_pointwise_check(h, "identity-2", 1, trials, max_deg, rng, evaluate, ("a",),
                               with_test_element=True, patterns=patterns)


def check_identity_3(h: SuperAlgebraHandle, trials: int, max_deg: int,
                     rng: np.random.Generator, patterns=None) -> CheckReport:
    """R_aR_bR_c + s R_cR_bR_a + s' R_{(ac)b} = R_aR_{bc} + s'' R_bR_{ac} + s''' R_cR_{ab}"""
    m = h.mult

    def evaluate(p, e):
        a, b, c, t = e
        pa, pb, pc = p[0], p[1], p[2]
        ta, tc, ac = m(t, a), m(t, c), m(a, c)
        lhs = m(m(ta, b), c)
        lhs = h.add(lhs, _signed(h, h.sign(pa * pb, pa * pc, pb * pc), m(m(tc, b), a)))
        lhs = h.add(lhs, _signed(h, h.sign(pb * pc), m(t, m(ac, b))))
        rhs = m(ta, m(b, c))
        rhs = h.add(rhs, _signed(h, h.sign(pa * pb), m(m(t, b), ac)))
        rhs = h.add(rhs, _signed(h, h.sign(pa * pc, pb * pc), m(tc, m(a, b))))
        return lhs, rhs
    return run_pointwise_check(h, "identity-3", 3, trials, max_deg, rng, evaluate,
                               ("a", "b", "c"), with_test_element=True, patterns=patterns)


def check_identity_4(h: SuperAlgebraHandle, trials: int, max_deg: int,
                     rng: np.random.Generator, patterns=None) -> CheckReport:
    """(x, tz, y) = (-1)^{p(x)p(t)} t(x,z,y) + (-1)^{p(y)p(z)} (x,t,y)z"""
    def evaluate(p, e):
        x, t, z, y = e
        px, pt, pz, py = p
        lhs = associator(h, x, h.mult(t, z), y)
        rhs = h.add(_signed(h, h.sign(px * pt), h.mult(t, associator(h, x, z, y))),
                    _signed(h, h.sign(py * pz), h.mult(associator(h, x, t, y), z)))
        return lhs, rhs
    return run_pointwise_check(h, "identity-4", 4, trials, max_deg, rng, evaluate,
                               ("x", "t", "z", "y"), patterns=patterns)


def check_grading(h: SuperAlgebraHandle, trials: int, max_deg: int,
                  rng: np.random.Generator) -> CheckReport:
    """Homogeneous products land in parity p(a) + p(b)."""
    def evaluate(p, e):
        prod = h.mult(*e)
        expected = (p[0] + p[1]) % 2
        got = expected if h.is_zero(prod) else h.parity_of(prod)
        return got, expected
    return run_pointwise_check(h, "grading-closure", 2, trials, max_deg, rng, evaluate, ("a", "b"))


def check_unit(h: SuperAlgebraHandle, trials: int, max_deg: int,
               rng: np.random.Generator) -> CheckReport:
    """1.a = a.1 = a"""
    if h.unit is None:
        raise ValueError(f"{h.name} has no unit")

    def evaluate(p, e):
        a, = e
        left, right = h.mult(h.unit, a), h.mult(a, h.unit)
        return (left, a) if left != a else (right, a)
    return run_pointwise_check(h, "unit", 1, trials, max_deg, rng, evaluate, ("a",))


def check_jordan_suite(h: SuperAlgebraHandle, trials: int, max_deg: int,
                       rng: np.random.Generator) -> List[CheckReport]:
    """Identities (1)-(3), then (4); a failure of (4) alone is reported, not explained."""
    reports = [fn(h, trials, max_deg, rng) for _, fn, _ in JORDAN_IDENTITIES]
    note_identity_4(reports, h.name)
    return reports


def note_identity_4(reports: Sequence[CheckReport], name: str):
    by_id = {r.identity: r for r in reports}
    first = [by_id.get(f"identity-{k}") for k in (1, 2, 3)]
    last = by_id.get("identity-4")
    if last is not None and all(r is not None and r.passed for r in first) and not last.passed:
        log.error(f"CHECK identity-4 fails on {name} while identities 1-3 pass")


def merge_reports(reports: Sequence[CheckReport], identity: str) -> CheckReport:
    """Fold shard reports of one identity, in shard order, into a single report.

    Trials add up to the first shard that did not pass; that shard's status and
    witness are the merged ones.
    """
    if not reports:
        raise ValueError(f"no reports to merge for {identity}")
    total = 0
    for r in reports:
        total += r.trials
        if r.status != CheckStatus.PASS:
            return CheckReport(identity, total, r.status, r.witness, r.construction, r.notes)
    head = reports[0]
    return CheckReport(identity, total, CheckStatus.PASS, None, head.construction, head.notes)


# name, check, arity of the parity patterns
JORDAN_IDENTITIES = (
    ("identity-1", check_identity_1, 2),
    ("identity-2", check_identity_2, 1),
    ("identity-3", check_identity_3, 3),
    ("identity-4", check_identity_4, 4),
)


# ---------------------------------------------------------------------------
# Brackets

def check_jordan_bracket(b: BracketSpec, trials: int, max_deg: int, rng: np.random.Generator,
                         unit_term: bool = True) -> List[CheckReport]:
    """Axioms (5), (6) on homogeneous triples and (7) on odd d.

    `unit_term=False` drops the -{a,1}bc term of (5); it exists to show the
    checker notices a wrong axiom.
    """
    g = b.carrier
    if g.unit is None:
        raise ValueError("bracket carrier must have a unit")
    br = b.bracket
    one = g.unit
    m = g.mult
    sign = g.sign
    name = f"{b.name}"
    h5 = _bracket_view(g, f"{name}/bracket")

    def eval5(p, e):
        a, x, c = e
        pa, pb = p[0], p[1]
        lhs = br(a, m(x, c))
        rhs = g.add(m(br(a, x), c), g.signed(sign(pa * pb), m(x, br(a, c))))
        if unit_term:
            rhs = g.sub(rhs, m(m(br(a, one), x), c))
        return lhs, rhs

    def eval6(p, e):
        a, x, c = e
        pa, pb, pc = p
        lhs = br(a, br(x, c))
        rhs = br(br(a, x), c)
        rhs = g.add(rhs, g.signed(sign(pa * pb), br(x, br(a, c))))
        rhs = g.add(rhs, m(br(a, one), br(x, c)))
        rhs = g.add(rhs, g.signed(sign(pa * (pb + pc)), m(br(x, one), br(c, a))))
        rhs = g.add(rhs, g.signed(sign(pc * (pa + pb)), m(br(c, one), br(a, x))))
        return lhs, rhs

    reports = [
        run_pointwise_check(h5, "bracket-5", 3, trials, max_deg, rng, eval5, ("a", "b", "c")),
        run_pointwise_check(h5, "bracket-6", 3, trials, max_deg, rng, eval6, ("a", "b", "c")),
    ]

    d = g.sample_homogeneous(1, max_deg, rng)
    if g.is_zero(d) and not _has_odd_part(g, max_deg, rng):
        log.info(f"CHECK bracket-7 vacuous on {g.name}: carrier has no odd part")
        reports.append(CheckReport("bracket-7", 0, CheckStatus.VACUOUS_PASS, None, h5.name))
    else:
        reports.append(_check_bracket_7(g, h5, br, one, trials, max_deg, rng))
    return reports


def _has_odd_part(g: SuperAlgebraHandle, max_deg: int, rng: np.random.Generator) -> bool:
    return any(not g.is_zero(g.sample_homogeneous(1, max_deg, rng)) for _ in range(8))


def _check_bracket_7(g, h5, br, one, trials, max_deg, rng) -> CheckReport:
    for trial in range(trials):
        d = g.sample_homogeneous(1, max_deg, rng)
        dd = br(d, d)
        lhs, rhs = br(d, dd), g.mult(dd, br(d, one))
        if lhs != rhs:
            w = Witness([f"d={g.describe(d)}"], g.describe(lhs), g.describe(rhs), [1])
            return CheckReport("bracket-7", trial + 1, CheckStatus.COUNTEREXAMPLE, w, h5.name)
    return CheckReport("bracket-7", trials, CheckStatus.PASS, None, h5.name)


def _bracket_view(g: SuperAlgebraHandle, name: str) -> SuperAlgebraHandle:
    return SuperAlgebraHandle(name=name, mult=g.mult, parity_of=g.parity_of, add=g.add,
                              sub=g.sub, scale=g.scale, zero=g.zero,
                              sample_homogeneous=g.sample_homogeneous, describe=g.describe,
                              unit=g.unit, degree=g.degree, coords=g.coords,
                              homogeneous_parts=g.homogeneous_parts)


# ---------------------------------------------------------------------------
# Kantor double

@dataclass(frozen=True)
class DoubleEl:
    """a + b x in J(Gamma, {,}) = Gamma + Gamma x."""
    a: Any
    bx: Any


def kantor_double(b: BracketSpec) -> SuperAlgebraHandle:
    """a.bx = (ab)x, ax.b = (-1)^{p(b)}(ab)x, ax.bx = (-1)^{p(b)}{a,b}.

    Even part Gamma_0 + Gamma_1 x, odd part Gamma_1 + Gamma_0 x.
    """
    g = b.carrier
    parts = g.homogeneous_parts or (lambda u: (u, g.zero))
    zero = DoubleEl(g.zero, g.zero)

    def pieces(u):
        even, odd = parts(u)
        return [(0, even), (1, odd)]

    def mult(u: DoubleEl, v: DoubleEl) -> DoubleEl:
        a_out, x_out = g.zero, g.zero
        for pc, c in pieces(v.a):
            if g.is_zero(c):
                continue
            a_out = g.add(a_out, g.mult(u.a, c))
            if not g.is_zero(u.bx):
                x_out = g.add(x_out, g.signed(g.sign(pc), g.mult(u.bx, c)))
        for pd, dd in pieces(v.bx):
            if g.is_zero(dd):
                continue
            if not g.is_zero(u.a):
                x_out = g.add(x_out, g.mult(u.a, dd))
            if not g.is_zero(u.bx):
                a_out = g.add(a_out, g.signed(g.sign(pd), b.bracket(u.bx, dd)))
        return DoubleEl(a_out, x_out)

    def parity_of(u: DoubleEl):
        a0, a1 = parts(u.a)
        b0, b1 = parts(u.bx)
        even_zero = g.is_zero(a0) and g.is_zero(b1)
        odd_zero = g.is_zero(a1) and g.is_zero(b0)
        if odd_zero:
            return 0
        if even_zero:
            return 1
        return INHOMOGENEOUS

    def sample(parity: int, max_deg: int, rng: np.random.Generator) -> DoubleEl:
        if parity == 0:
            return DoubleEl(g.sample_homogeneous(0, max_deg, rng), g.sample_homogeneous(1, max_deg, rng))
        return DoubleEl(g.sample_homogeneous(1, max_deg, rng), g.sample_homogeneous(0, max_deg, rng))

    def describe(u: DoubleEl) -> str:
        out = []
        if not g.is_zero(u.a):
            out.append(g.describe(u.a))
        if not g.is_zero(u.bx):
            out.append(f"bar({g.describe(u.bx)})")
        return " + ".join(out) if out else "0"

    def degree(u: DoubleEl):
        return max(g.degree(u.a), g.degree(u.bx)) if g.degree else 0

    def coords(u: DoubleEl) -> Dict:
        out = {("a",) + k: v for k, v in g.coords(u.a).items()}
        out.update({("x",) + k: v for k, v in g.coords(u.bx).items()})
        return out

    return SuperAlgebraHandle(
        name=f"double({b.name})",
        mult=mult,
        parity_of=parity_of,
        add=lambda u, v: DoubleEl(g.add(u.a, v.a), g.add(u.bx, v.bx)),
        sub=lambda u, v: DoubleEl(g.sub(u.a, v.a), g.sub(u.bx, v.bx)),
        scale=lambda u, s: DoubleEl(g.scale(u.a, s), g.scale(u.bx, s)),
        zero=zero,
        sample_homogeneous=sample,
        describe=describe,
        unit=DoubleEl(g.unit, g.zero) if g.unit is not None else None,
        degree=degree,
        coords=coords if g.coords else None,
    )
