#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Structure analysis of Gamma, A and the superalgebras built on them.
- Ideal saturation inside a degree window (differential and super-ideal versions)
- Replay of saturation traces
- Non-cyclicity probes for M over A and the degree-parity obstruction
- Certificates 1 = sum a D_j(b) c and their associator form in J(A, Delta)
"""

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import coordalg as ca
import constructions as cs
from coordalg import GammaEl, Space
from linalg import EchelonSpace, solve_linear_system
from logging_setup import get_logger
from polyring import NEG_INF, Poly, as_rational, format_rational
from superkernel import SuperAlgebraHandle

log = get_logger("structure")

WINDOW_STEP = 4


class SaturationOutcome:
    REACHED = "reached"
    INCONCLUSIVE = "inconclusive"


@dataclass
class TraceStep:
    label: int
    parent: int
    op: str
    element: object

    def to_dict(self, describe) -> Dict:
        return {"label": self.label, "parent": self.parent, "op": self.op,
                "element": describe(self.element)}


@dataclass
class SaturationReport:
    target: str
    seed: object
    reached_one: bool
    window: int
    basis_dim: int
    derivs: Tuple[str, ...] = ()
    trace: List[TraceStep] = field(default_factory=list)
    combination: List[Tuple[int, object]] = field(default_factory=list)
    describe: Callable = str
    replayed: Optional[bool] = None
    expect_reach: bool = True

    @property
    def status(self) -> str:
        return SaturationOutcome.REACHED if self.reached_one else SaturationOutcome.INCONCLUSIVE

    def to_dict(self) -> Dict:
        return {
            "kind": "saturation",
            "target": self.target,
            "seed": self.describe(self.seed),
            "derivs": list(self.derivs),
            "status": self.status,
            "reached_one": self.reached_one,
            "window": self.window,
            "basis_dim": self.basis_dim,
            "trace": [s.to_dict(self.describe) for s in self.trace],
            "combination": [[lbl, format_rational(c)] for lbl, c in self.combination],
            "replayed": self.replayed,
            "expect_reach": self.expect_reach,
        }


Op = Tuple[str, Callable[[object], object]]


def _saturate_once(h: SuperAlgebraHandle, ops: Sequence[Op], seed, window: int,
                   stop_at_unit: bool = True):
    """Span closure of seed under ops inside the window.

    Images wait in a heap ordered by degree and are only taken while the lowest
    one fits the window, so the run for a window is a prefix of the run for any
    larger one.
    """
    space = EchelonSpace()
    elements: Dict[int, object] = {0: seed}
    steps: Dict[int, TraceStep] = {}
    unit_coords = h.coords(h.unit)
    space.insert(h.coords(seed), 0)
    combo = space.express(unit_coords) if stop_at_unit else None
    pending: list = []
    order = itertools.count()

    def expand(lbl: int):
        for tag, fn in ops:
            img = fn(elements[lbl])
            if not h.is_zero(img):
                heapq.heappush(pending, (h.degree(img), next(order), lbl, tag, img))

    expand(0)
    next_label = 1
    while pending and combo is None and pending[0][0] <= window:
        _, _, parent, tag, img = heapq.heappop(pending)
        if not space.insert(h.coords(img), next_label):
            continue
        elements[next_label] = img
        steps[next_label] = TraceStep(next_label, parent, tag, img)
        expand(next_label)
        next_label += 1
        if stop_at_unit:
            combo = space.express(unit_coords)
    return space, elements, steps, combo


def _minimal_trace(steps: Dict[int, TraceStep], combo: Dict[int, object]) -> List[TraceStep]:
    needed = set()
    stack = [lbl for lbl in combo if lbl != 0]
    while stack:
        lbl = stack.pop()
        if lbl in needed or lbl == 0:
            continue
        needed.add(lbl)
        stack.append(steps[lbl].parent)
    return [steps[lbl] for lbl in sorted(needed)]


def saturate(h: SuperAlgebraHandle, ops: Sequence[Op], seed, window: int, max_window: int,
             target: str, derivs: Iterable[str] = ()) -> SaturationReport:
    if window > max_window:
        raise ValueError("window must be <= max_window")
    derivs = tuple(derivs)
    while True:
        space, _, steps, combo = _saturate_once(h, ops, seed, window)
        reached = combo is not None
        log.info(f"SATURATE {target} seed={h.describe(seed)} window={window} dim={space.dim} reached={reached}")
        if reached or window >= max_window:
            break
        window = min(window + WINDOW_STEP, max_window)
    if not reached:
        return SaturationReport(target, seed, False, window, space.dim, derivs, describe=h.describe)
    trace = _minimal_trace(steps, combo)
    combination = sorted((lbl, as_rational(c)) for lbl, c in combo.items())
    return SaturationReport(target, seed, True, window, space.dim, derivs, trace, combination,
                            describe=h.describe)


def _gamma_ops(space: str, derivs: Iterable[ca.DerivationSpec]) -> List[Op]:
    if space == Space.GAMMA:
        gens = [("mul:y", ca.Y), ("mul:x", ca.X)]
    elif space == Space.A:
        gens = [("mul:y^2", ca.y_power(2)), ("mul:x*y", ca.x_y_power(1))]
    else:
        raise ValueError(f"saturation space must be Gamma or A, not {space}")
    ops: List[Op] = [(tag, (lambda g: lambda u: ca.gamma_mul(u, g))(g)) for tag, g in gens]
    ops += [(d.name, d) for d in sorted(derivs, key=lambda d: d.name)]
    return ops


def d_ideal_saturate(space: str, derivs: Iterable[ca.DerivationSpec], seed: GammaEl,
                     window: int, max_window: int) -> SaturationReport:
    """Smallest derivation-invariant ideal of Gamma or A containing seed, within a window."""
    if seed.is_zero():
        raise ValueError("seed must be nonzero")
    if not ca.in_space(seed, space):
        raise ValueError(f"seed {seed} not in {space}")
    derivs = list(derivs)
    return saturate(cs.gamma_handle(space), _gamma_ops(space, derivs), seed, window, max_window,
                    space, [d.name for d in sorted(derivs, key=lambda d: d.name)])


def saturated_span(space: str, derivs: Iterable[ca.DerivationSpec], seed: GammaEl,
                   window: int) -> Tuple[EchelonSpace, List[GammaEl]]:
    """Run the closure to exhaustion (no stop at 1); returns the span and the inserted elements."""
    if not ca.in_space(seed, space):
        raise ValueError(f"seed {seed} not in {space}")
    span, elements, _, _ = _saturate_once(cs.gamma_handle(space), _gamma_ops(space, list(derivs)),
                                          seed, window, stop_at_unit=False)
    return span, [elements[k] for k in sorted(elements)]


def _super_ops(construction: str) -> Tuple[SuperAlgebraHandle, List[Op]]:
    if construction not in ("jadelta", "gck"):
        raise ValueError(f"super-ideal saturation supports jadelta and gck, not {construction}")
    h = cs.get_handle(construction)
    ops: List[Op] = []
    for label, g in cs.generators(construction)[1:]:
        ops.append((f"mul:{label}", (lambda g: lambda u: h.mult(u, g))(g)))
    return h, ops


def super_ideal_saturate(construction: str, seed, window: int, max_window: int) -> SaturationReport:
    h, ops = _super_ops(construction)
    if h.is_zero(seed):
        raise ValueError("seed must be nonzero")
    return saturate(h, ops, seed, window, max_window, construction)


def replay_saturation(report: SaturationReport) -> bool:
    """Recompute every trace step from the seed and re-sum the combination."""
    if not report.reached_one:
        return False
    if report.target in (Space.GAMMA, Space.A):
        h = cs.gamma_handle(report.target)
        ops = dict(_gamma_ops(report.target, [ca.DERIVATIONS[n] for n in report.derivs]))
    else:
        h, op_list = _super_ops(report.target)
        ops = dict(op_list)
    elements = {0: report.seed}
    for step in report.trace:
        img = ops[step.op](elements[step.parent])
        if img != step.element:
            log.warning(f"REPLAY mismatch at step {step.label}")
            return False
        elements[step.label] = img
    total = h.zero
    for lbl, c in report.combination:
        total = h.add(total, h.scale(elements[lbl], c))
    return total == h.unit


# ---------------------------------------------------------------------------
# Non-cyclicity of M

class ProbeStatus:
    INFEASIBLE = "infeasible"
    SOLUTION = "solution"


@dataclass
class ProbeResult:
    status: str
    z: GammaEl
    deg_bound: int
    solution: Optional[Tuple[GammaEl, GammaEl]] = None

    def to_dict(self) -> Dict:
        return {"kind": "probe", "status": self.status, "z": str(self.z), "deg_bound": self.deg_bound,
                "solution": [str(s) for s in self.solution] if self.solution else None}


def _solve_in_a(z: GammaEl, target: GammaEl, basis: List[GammaEl]) -> Optional[GammaEl]:
    sol = solve_linear_system([ca.gamma_mul(z, b).coords() for b in basis], target.coords())
    if sol is None:
        return None
    out = ca.ZERO
    for b, c in zip(basis, sol):
        if c != 0:
            out = out + b * c
    return out


def verify_cyclic_witness(z: GammaEl, c: GammaEl, d: GammaEl) -> bool:
    """True iff z.c = x and z.d = y with c, d in A, plus the relations they force."""
    if not (ca.in_space(c, Space.A) and ca.in_space(d, Space.A)):
        return False
    if z * c != ca.X or z * d != ca.Y:
        return False
    # xd = yc
    if ca.X * d != ca.Y * c:
        return False
    a, b = ca.split_module_element(z)
    if ca.X * (a * c + b * d) != ca.X:
        return False
    # c = e0 + xy e1, d = h0 + xy h1
    e0, e1 = c.p, c.q.divide_by_y()
    h0, h1 = d.p, d.q.divide_by_y()
    return h0 == e1.shift(2) and e0 == ca.ONE_MINUS_Y4 * h1


def noncyclic_probe(z: GammaEl, deg_bound: int) -> ProbeResult:
    """Search c, d in A of degree <= deg_bound with z.c = x and z.d = y."""
    if z.is_zero() or not ca.in_space(z, Space.M):
        raise cs.MembershipError("z ∉ M")
    basis = ca.enumerate_basis(Space.A, deg_bound)
    c = _solve_in_a(z, ca.X, basis)
    d = _solve_in_a(z, ca.Y, basis) if c is not None else None
    if c is None or d is None:
        log.debug(f"PROBE infeasible z={z} deg_bound={deg_bound}")
        return ProbeResult(ProbeStatus.INFEASIBLE, z, deg_bound)
    if not verify_cyclic_witness(z, c, d):
        raise AssertionError(f"probe solution for z={z} failed re-verification")
    log.warning(f"PROBE solution z={z} c={c} d={d}")
    return ProbeResult(ProbeStatus.SOLUTION, z, deg_bound, (c, d))


def random_module_element(rng, max_deg: int) -> GammaEl:
    """z = x a + y b with a, b random in F[y^2], resampled until nonzero."""
    while True:
        a = ca.sample_random(Space.A, max_deg, rng)
        b = ca.sample_random(Space.A, max_deg, rng)
        z = ca.X * GammaEl(a.p) + ca.Y * GammaEl(b.p)
        if not z.is_zero():
            return z


class ParityObstructionError(Exception):
    """The degree-parity comparison did not come out as the obstruction requires."""


@dataclass(frozen=True)
class ParityWitness:
    deg_left: object
    deg_right: int
    distinct_mod4: bool


def parity_degree_witness(h1: Poly, e1: Poly, u) -> ParityWitness:
    """Compare u(1 - y^4)h1^2 with 1 + u y^2 e1^2: degrees 0 mod 4 (or -inf) vs 2 mod 4 (or 0)."""
    if not (h1.has_even_support() and e1.has_even_support()):
        raise ValueError("h1 and e1 must lie in F[y^2]")
    u = as_rational(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    left = ca.ONE_MINUS_Y4 * h1 * h1 * u
    right = Poly.constant(1) + (e1 * e1).shift(2) * u
    dl, dr = left.degree, right.degree
    if not (dl == NEG_INF or dl % 4 == 0):
        raise ParityObstructionError(f"left degree {dl} is not 0 mod 4")
    if not (dr == 0 or dr % 4 == 2):
        raise ParityObstructionError(f"right degree {dr} is not 2 mod 4")
    if left == right:
        raise ParityObstructionError("both sides are equal")
    return ParityWitness(dl, dr, True)


# ---------------------------------------------------------------------------
# Certificates in A

DELTA_INDICES = (11, 12, 22)


class CertificateStatus:
    FOUND = "found"
    NOT_FOUND = "not found at this bound"


@dataclass(frozen=True)
class CertificateTerm:
    left: GammaEl
    deriv: int
    argument: GammaEl
    right: GammaEl

    def value(self) -> GammaEl:
        return self.left * ca.DELTA[self.deriv](self.argument) * self.right

    def __str__(self) -> str:
        return f"({self.left})*D{self.deriv}({self.argument})*({self.right})"


@dataclass
class Certificate:
    target: GammaEl
    deg_bound: int
    status: str
    terms: List[CertificateTerm] = field(default_factory=list)

    def evaluate(self) -> GammaEl:
        total = ca.ZERO
        for t in self.terms:
            total = total + t.value()
        return total

    def verify(self) -> bool:
        return self.status == CertificateStatus.FOUND and self.evaluate() == self.target

    def to_dict(self) -> Dict:
        return {"kind": "certificate", "target": str(self.target), "deg_bound": self.deg_bound,
                "status": self.status, "terms": [str(t) for t in self.terms]}


def find_certificate(target: GammaEl, deg_bound: int) -> Certificate:
    """Solve target = sum alpha_k D_jk(b_k) over the A-basis of degree <= deg_bound."""
    if not ca.in_space(target, Space.A):
        raise ValueError(f"target {target} not in A")
    if target.is_zero():
        return Certificate(target, deg_bound, CertificateStatus.FOUND, [])
    basis = ca.enumerate_basis(Space.A, deg_bound)
    unknowns = []
    columns = []
    for j in DELTA_INDICES:
        for b in basis[1:]:
            db = ca.DELTA[j](b)
            if db.is_zero():
                continue
            for alpha in basis:
                unknowns.append((alpha, j, b))
                columns.append((alpha * db).coords())
    sol = solve_linear_system(columns, target.coords())
    if sol is None:
        log.info(f"CERTIFICATE none target={target} deg_bound={deg_bound}")
        return Certificate(target, deg_bound, CertificateStatus.NOT_FOUND)
    terms = [CertificateTerm(alpha * c, j, b, ca.ONE)
             for (alpha, j, b), c in zip(unknowns, sol) if c != 0]
    cert = Certificate(target, deg_bound, CertificateStatus.FOUND, terms)
    if not cert.verify():
        raise AssertionError("certificate failed re-verification")
    log.info(f"CERTIFICATE found target={target} terms={len(terms)}")
    return cert


_ASSOCIATOR_SLOTS = {11: (ca.X, ca.X), 12: (ca.X, ca.Y), 22: (ca.Y, ca.Y)}


@dataclass(frozen=True)
class AssociatorTerm:
    """(b, bar(m1), bar(m2)) . alpha in J(A, Delta)."""
    argument: GammaEl
    m1: GammaEl
    m2: GammaEl
    coefficient: GammaEl

    def __str__(self) -> str:
        return f"({self.argument}, bar({self.m1}), bar({self.m2}))*({self.coefficient})"


def associator_form(cert: Certificate) -> List[AssociatorTerm]:
    """alpha D_11(b) = (b, x, x)alpha, alpha D_12(b) = (b, x, y)alpha, alpha D_22(b) = (b, y, y)alpha."""
    out = []
    for t in cert.terms:
        m1, m2 = _ASSOCIATOR_SLOTS[t.deriv]
        out.append(AssociatorTerm(t.argument, m1, m2, t.left * t.right))
    return out


def verify_associator_form(terms: Sequence[AssociatorTerm], target: GammaEl) -> bool:
    """Evaluate every associator with the J(A, Delta) product and compare with target."""
    h = cs.jadelta_handle()
    total = h.zero
    for t in terms:
        b = cs.JADeltaEl(t.argument, ca.ZERO)
        m1 = cs.JADeltaEl(ca.ZERO, t.m1)
        m2 = cs.JADeltaEl(ca.ZERO, t.m2)
        assoc = h.sub(h.mult(h.mult(b, m1), m2), h.mult(b, h.mult(m1, m2)))
        total = h.add(total, h.mult(assoc, cs.JADeltaEl(t.coefficient, ca.ZERO)))
    return total == cs.JADeltaEl(target, ca.ZERO)
