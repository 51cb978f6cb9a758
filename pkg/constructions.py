#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Concrete superalgebras over the curve algebra Gamma.
- J(Gamma, D) = Gamma + bar(Gamma)            (vector type)
- J(A, Delta) = A + bar(M)                     (two product paths)
- speciality embedding into 2x2 operator matrices over End(Gamma)
- CK(Gamma, D) and its subsuperalgebra GCK(A, Delta)
- SuperAlgebraHandle factories and generator sets for every construction
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

import coordalg as ca
from coordalg import GammaEl, Space, apply_D, classify_membership
from logging_setup import get_logger
from polyring import Poly, as_rational
from superkernel import (INHOMOGENEOUS, BracketSpec, CheckReport, DoubleEl, SuperAlgebraHandle,
                         kantor_double, run_pointwise_check)

log = get_logger("constructions")

ZERO = ca.ZERO
ONE = ca.ONE
ONE_PLUS_Y4 = GammaEl(Poly((1, 0, 0, 0, 1)))


class MembershipError(ValueError):
    pass


class HomogeneityError(ValueError):
    pass


def _d_bracket(a: GammaEl, b: GammaEl) -> GammaEl:
    """D(a)b - aD(b)"""
    return apply_D(a) * b - a * apply_D(b)


def _max_degree(*els: GammaEl):
    return max(e.degree for e in els)


def _slot_coords(prefix, u: GammaEl) -> Dict:
    return {(prefix,) + k: v for k, v in u.coords().items()}


# ---------------------------------------------------------------------------
# Gamma itself (purely even, supercommutative, unital)

def gamma_handle(space: str = Space.GAMMA) -> SuperAlgebraHandle:
    """Gamma (or A) as a trivially graded superalgebra."""

    def sample(parity, max_deg, rng):
        if parity == 1:
            return ZERO
        return ca.sample_random(space, max_deg, rng)

    return SuperAlgebraHandle(
        name=space,
        mult=ca.gamma_mul,
        parity_of=lambda u: 0,
        add=lambda u, v: u + v,
        sub=lambda u, v: u - v,
        scale=lambda u, s: u * s,
        zero=ZERO,
        sample_homogeneous=sample,
        describe=str,
        unit=ONE,
        degree=lambda u: u.degree,
        coords=lambda u: u.coords(),
        homogeneous_parts=lambda u: (u, ZERO),
    )


def derivation_bracket(spec: ca.DerivationSpec) -> BracketSpec:
    """{a, b} = d(a)b - a d(b) on Gamma for the derivation d = spec."""
    return BracketSpec(f"{spec.name}-bracket", gamma_handle(),
                       lambda a, b: spec(a) * b - a * spec(b))


def d_bracket() -> BracketSpec:
    return derivation_bracket(ca.D)


# ---------------------------------------------------------------------------
# J(Gamma, D)

@dataclass(frozen=True)
class JVecEl:
    """a + bar(b)."""
    even: GammaEl = ZERO
    odd: GammaEl = ZERO

    def __add__(self, other: "JVecEl") -> "JVecEl":
        return JVecEl(self.even + other.even, self.odd + other.odd)

    def __sub__(self, other: "JVecEl") -> "JVecEl":
        return JVecEl(self.even - other.even, self.odd - other.odd)

    def scale(self, s) -> "JVecEl":
        return JVecEl(self.even * s, self.odd * s)

    @property
    def degree(self):
        return _max_degree(self.even, self.odd)

    def coords(self) -> Dict:
        out = _slot_coords("e", self.even)
        out.update(_slot_coords("o", self.odd))
        return out

    def parity(self):
        if self.odd.is_zero():
            return 0
        if self.even.is_zero():
            return 1
        return INHOMOGENEOUS

    def __str__(self) -> str:
        return format_jvec(self)


def format_jvec(u) -> str:
    parts = []
    if not u.even.is_zero():
        parts.append(str(u.even))
    if not u.odd.is_zero():
        parts.append(f"bar({u.odd})")
    return " + ".join(parts) if parts else "0"


def jvec_mul(u: JVecEl, v: JVecEl) -> JVecEl:
    """a.b = ab, a.bar(b) = bar(ab), bar(a).b = bar(ab), bar(a).bar(b) = D(a)b - aD(b)."""
    even = u.even * v.even
    if not u.odd.is_zero() and not v.odd.is_zero():
        even = even + _d_bracket(u.odd, v.odd)
    odd = u.even * v.odd + u.odd * v.even
    return JVecEl(even, odd)


def jvec_handle() -> SuperAlgebraHandle:
    def sample(parity, max_deg, rng):
        el = ca.sample_random(Space.GAMMA, max_deg, rng)
        return JVecEl(el, ZERO) if parity == 0 else JVecEl(ZERO, el)

    return _vector_handle("jvec", jvec_mul, sample, JVecEl)


def _vector_handle(name, mult, sample, cls, notes=()) -> SuperAlgebraHandle:
    return SuperAlgebraHandle(
        name=name,
        mult=mult,
        parity_of=lambda u: u.parity(),
        add=lambda u, v: u + v,
        sub=lambda u, v: u - v,
        scale=lambda u, s: u.scale(s),
        zero=cls(ZERO, ZERO),
        sample_homogeneous=sample,
        describe=str,
        unit=cls(ONE, ZERO),
        degree=lambda u: u.degree,
        coords=lambda u: u.coords(),
        homogeneous_parts=lambda u: (cls(u.even, ZERO), cls(ZERO, u.odd)),
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# J(A, Delta)

class ProductPath:
    DIRECT = "direct"
    FORMULA8 = "formula8"


@dataclass(frozen=True)
class JADeltaEl(JVecEl):
    """a + bar(m) with a in A and m in M."""

    def __post_init__(self):
        if not classify_membership(self.even).in_a or not classify_membership(self.odd).in_m:
            raise MembershipError("not in J(A,Δ)")

    def __add__(self, other):
        return JADeltaEl(self.even + other.even, self.odd + other.odd)

    def __sub__(self, other):
        return JADeltaEl(self.even - other.even, self.odd - other.odd)

    def scale(self, s):
        return JADeltaEl(self.even * s, self.odd * s)


def gamma_table(gamma12: Optional[GammaEl] = None) -> Dict[Tuple[int, int], GammaEl]:
    """gamma_ij of ax_i . bx_j = gamma_ij ab + D_ij(a)b - aD_ji(b), x_1 = x, x_2 = y."""
    return {(1, 1): ZERO, (2, 2): ZERO,
            (1, 2): ONE_PLUS_Y4 if gamma12 is None else gamma12,
            (2, 1): -ONE_PLUS_Y4}


_DELTA_INDEX = {(1, 1): 11, (1, 2): 12, (2, 1): 12, (2, 2): 22}


def _odd_pair_formula8(m1: GammaEl, m2: GammaEl, gammas) -> GammaEl:
    a1, b1 = ca.split_module_element(m1)
    a2, b2 = ca.split_module_element(m2)
    left = {1: a1, 2: b1}
    right = {1: a2, 2: b2}
    out = ZERO
    for (i, j), g in gammas.items():
        a, b = left[i], right[j]
        if a.is_zero() or b.is_zero():
            continue
        dij = ca.DELTA[_DELTA_INDEX[(i, j)]]
        dji = ca.DELTA[_DELTA_INDEX[(j, i)]]
        out = out + g * a * b + dij(a) * b - a * dji(b)
    return out


def jadelta_mul(u: JADeltaEl, v: JADeltaEl, path: str = ProductPath.FORMULA8,
                gamma12: Optional[GammaEl] = None) -> JADeltaEl:
    """Product in J(A, Delta); `gamma12` replaces the x.y structure constant."""
    for el in (u, v):
        if not isinstance(el, JADeltaEl):
            JADeltaEl(el.even, el.odd)
    if path == ProductPath.DIRECT:
        r = jvec_mul(u, v)
        return JADeltaEl(r.even, r.odd)
    if path != ProductPath.FORMULA8:
        raise ValueError(f"unknown product path: {path}")
    even = u.even * v.even
    if not u.odd.is_zero() and not v.odd.is_zero():
        even = even + _odd_pair_formula8(u.odd, v.odd, gamma_table(gamma12))
    return JADeltaEl(even, u.even * v.odd + u.odd * v.even)


def jadelta_handle(path: str = ProductPath.FORMULA8,
                   gamma12: Optional[GammaEl] = None) -> SuperAlgebraHandle:
    def sample(parity, max_deg, rng):
        if parity == 0:
            return JADeltaEl(ca.sample_random(Space.A, max_deg, rng), ZERO)
        return JADeltaEl(ZERO, ca.sample_random(Space.M, max_deg, rng))

    name = "jadelta" if gamma12 is None else f"jadelta[gamma12={gamma12}]"
    if gamma12 is not None:
        log.debug(f"HANDLE {name} path={path}")
    return _vector_handle(name, lambda u, v: jadelta_mul(u, v, path, gamma12), sample, JADeltaEl,
                          notes=(f"path={path}",))


# ---------------------------------------------------------------------------
# Operator superalgebra M_2^{1,1}(End Gamma)

RLetter = Tuple[str, GammaEl]
D_LETTER = ("D", None)


def _r(c: GammaEl) -> RLetter:
    return ("R", c)


def _normal_word(word) -> Tuple:
    out: List = []
    for letter in word:
        if letter[0] == "R":
            if out and out[-1][0] == "R":
                out[-1] = _r(out[-1][1] * letter[1])
            else:
                out.append(letter)
        else:
            out.append(letter)
    return tuple(l for l in out if not (l[0] == "R" and l[1] == ONE))


class OperatorExpr:
    """Formal rational combination of words in {R_c, D}; words compose right to left."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple, object]] = None):
        clean: Dict[Tuple, object] = {}
        for word, c in (terms or {}).items():
            if any(l[0] == "R" and l[1].is_zero() for l in word):
                continue
            word = _normal_word(word)
            clean[word] = as_rational(clean.get(word, 0) + c)
            if clean[word] == 0:
                del clean[word]
        self.terms = clean

    @classmethod
    def right_mul(cls, c: GammaEl, coeff=1) -> "OperatorExpr":
        return cls({(_r(c),): coeff})

    @classmethod
    def identity(cls) -> "OperatorExpr":
        return cls({(): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return OperatorExpr(terms)

    def scale(self, s) -> "OperatorExpr":
        return OperatorExpr({w: c * s for w, c in self.terms.items()})

    def __neg__(self) -> "OperatorExpr":
        return self.scale(-1)

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-other)

    def compose(self, other: "OperatorExpr") -> "OperatorExpr":
        """self after other."""
        terms: Dict[Tuple, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = _normal_word(w1 + w2)
                terms[w] = terms.get(w, 0) + c1 * c2
        return OperatorExpr(terms)

    def __call__(self, t: GammaEl) -> GammaEl:
        out = ZERO
        for word, c in self.terms.items():
            v = t
            for letter in reversed(word):
                v = apply_D(v) if letter[0] == "D" else v * letter[1]
            out = out + v * c
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, c in self.terms.items():
            body = "".join("D" if l[0] == "D" else f"R[{l[1]}]" for l in word) or "Id"
            parts.append(f"{c}*{body}")
        return " + ".join(parts)


@dataclass(frozen=True)
class OpMatrix:
    """2x2 matrix of operators; even = diagonal, odd = antidiagonal."""
    entries: Tuple[Tuple[OperatorExpr, OperatorExpr], Tuple[OperatorExpr, OperatorExpr]]
    parity: object

    def product(self, other: "OpMatrix") -> "OpMatrix":
        e, f = self.entries, other.entries
        out = tuple(
            tuple(e[i][0].compose(f[0][k]) + e[i][1].compose(f[1][k]) for k in range(2))
            for i in range(2))
        return OpMatrix(out, _parity_xor(self.parity, other.parity))

    def add(self, other: "OpMatrix") -> "OpMatrix":
        out = tuple(tuple(self.entries[i][k] + other.entries[i][k] for k in range(2))
                    for i in range(2))
        par = self.parity if self.parity == other.parity else INHOMOGENEOUS
        return OpMatrix(out, par)

    def scale(self, s) -> "OpMatrix":
        return OpMatrix(tuple(tuple(x.scale(s) for x in row) for row in self.entries), self.parity)

    def apply(self, t1: GammaEl, t2: GammaEl) -> Tuple[GammaEl, GammaEl]:
        e = self.entries
        return e[0][0](t1) + e[0][1](t2), e[1][0](t1) + e[1][1](t2)


def _parity_xor(p, q):
    if INHOMOGENEOUS in (p, q):
        return INHOMOGENEOUS
    return p ^ q


def embed_special(u: JVecEl) -> OpMatrix:
    """a + bar(b) -> [[R_a, 4R_bD + 2R_{D(b)}], [-R_b, R_a]]."""
    a, b = u.even, u.odd
    ra = OperatorExpr.right_mul(a)
    upper = OperatorExpr({(_r(b), D_LETTER): 4}) + OperatorExpr.right_mul(apply_D(b), 2)
    lower = OperatorExpr.right_mul(b, -1)
    return OpMatrix(((ra, upper), (lower, ra)), JVecEl(a, b).parity())


def opmatrix_super_product(p: OpMatrix, q: OpMatrix) -> OpMatrix:
    """P o_s Q = 1/2 (PQ + (-1)^{p(P)p(Q)} QP)."""
    if INHOMOGENEOUS in (p.parity, q.parity):
        raise HomogeneityError("split into homogeneous parts first")
    sign = -1 if p.parity * q.parity else 1
    return p.product(q).add(q.product(p).scale(sign)).scale(Fraction(1, 2))


# ---------------------------------------------------------------------------
# CK(Gamma, D)

EPSILON = (1, 1, -1)

# (i, j) -> (sign, k) with x_{i x j} = sign * x_k
CROSS_TABLE: Dict[Tuple[int, int], Tuple[int, int]] = {
    (1, 2): (1, 3), (2, 1): (-1, 3),
    (1, 3): (1, 2), (3, 1): (-1, 2),
    (2, 3): (-1, 1), (3, 2): (1, 1),
}

_TRIPLE_ZERO = (ZERO, ZERO, ZERO)


def _triple_op(u, v, op):
    return tuple(op(a, b) for a, b in zip(u, v))


@dataclass(frozen=True)
class CKEl:
    """a + sum w_i a_i + bar(b) + sum x_i bar(b_i)."""
    a: GammaEl = ZERO
    w: Tuple[GammaEl, GammaEl, GammaEl] = _TRIPLE_ZERO
    b: GammaEl = ZERO
    xo: Tuple[GammaEl, GammaEl, GammaEl] = _TRIPLE_ZERO

    def __add__(self, other: "CKEl") -> "CKEl":
        add = lambda p, q: p + q
        return CKEl(self.a + other.a, _triple_op(self.w, other.w, add),
                    self.b + other.b, _triple_op(self.xo, other.xo, add))

    def __sub__(self, other: "CKEl") -> "CKEl":
        sub = lambda p, q: p - q
        return CKEl(self.a - other.a, _triple_op(self.w, other.w, sub),
                    self.b - other.b, _triple_op(self.xo, other.xo, sub))

    def scale(self, s) -> "CKEl":
        return CKEl(self.a * s, tuple(c * s for c in self.w),
                    self.b * s, tuple(c * s for c in self.xo))

    def even_part(self) -> "CKEl":
        return CKEl(self.a, self.w, ZERO, _TRIPLE_ZERO)

    def odd_part(self) -> "CKEl":
        return CKEl(ZERO, _TRIPLE_ZERO, self.b, self.xo)

    def slots(self) -> List[Tuple[str, GammaEl]]:
        return ([("a", self.a)] + [(f"w{i + 1}", c) for i, c in enumerate(self.w)]
                + [("bar", self.b)] + [(f"x{i + 1}", c) for i, c in enumerate(self.xo)])

    @property
    def degree(self):
        return _max_degree(*(el for _, el in self.slots()))

    def coords(self) -> Dict:
        out: Dict = {}
        for name, el in self.slots():
            out.update(_slot_coords(name, el))
        return out

    def parity(self):
        even_zero = self.a.is_zero() and all(c.is_zero() for c in self.w)
        odd_zero = self.b.is_zero() and all(c.is_zero() for c in self.xo)
        if odd_zero:
            return 0
        if even_zero:
            return 1
        return INHOMOGENEOUS

    def __str__(self) -> str:
        return format_ck(self)


def format_ck(u: CKEl) -> str:
    """"a | w1:a1 | ... | bar:b | x1:b1 | ..." listing nonzero slots only."""
    parts = []
    for name, el in u.slots():
        if el.is_zero():
            continue
        parts.append(str(el) if name == "a" else f"{name}:{el}")
    return " | ".join(parts) if parts else "0"


def ck_mul(u: CKEl, v: CKEl,
           cross: Optional[Dict[Tuple[int, int], Tuple[int, int]]] = None) -> CKEl:
    """Bilinear product of CK(Gamma, D); odd.even module products mirror even.odd with sign +1.

    Only nonzero slots are multiplied.
    """
    cross = CROSS_TABLE if cross is None else cross
    ua, va = not u.a.is_zero(), not v.a.is_zero()
    ub, vb = not u.b.is_zero(), not v.b.is_zero()
    uw = [i for i in range(3) if not u.w[i].is_zero()]
    vw = [i for i in range(3) if not v.w[i].is_zero()]
    uxo = [i for i in range(3) if not u.xo[i].is_zero()]
    vxo = [i for i in range(3) if not v.xo[i].is_zero()]
    w = [ZERO, ZERO, ZERO]
    xo = [ZERO, ZERO, ZERO]

    # J0 x J0
    a = u.a * v.a if ua and va else ZERO
    for i in uw:
        if i in vw:
            a = a + u.w[i] * v.w[i] * EPSILON[i]
    if ua:
        for i in vw:
            w[i] = w[i] + u.a * v.w[i]
    if va:
        for i in uw:
            w[i] = w[i] + u.w[i] * v.a

    # J1 x J1
    if ub and vb:
        a = a + _d_bracket(u.b, v.b)
    if ub:
        for i in vxo:
            w[i] = w[i] - u.b * v.xo[i]
    if vb:
        for i in uxo:
            w[i] = w[i] + u.xo[i] * v.b

    # J0 x J1 and its mirror
    b = u.a * v.b if ua and vb else ZERO
    if ub and va:
        b = b + u.b * v.a
    if ua:
        for i in vxo:
            xo[i] = xo[i] + u.a * v.xo[i]
    if va:
        for i in uxo:
            xo[i] = xo[i] + u.xo[i] * v.a
    if vb:
        for i in uw:
            xo[i] = xo[i] + apply_D(u.w[i]) * v.b
    if ub:
        for i in vw:
            xo[i] = xo[i] + apply_D(v.w[i]) * u.b
    if (uw and vxo) or (vw and uxo):
        for (i, j), (sign, k) in cross.items():
            term = ZERO
            if i - 1 in uw and j - 1 in vxo:
                term = u.w[i - 1] * v.xo[j - 1]
            if i - 1 in vw and j - 1 in uxo:
                term = term + v.w[i - 1] * u.xo[j - 1]
            if not term.is_zero():
                xo[k - 1] = xo[k - 1] + term * sign
    return CKEl(a, tuple(w), b, tuple(xo))


def _ck_sample(space_even: str, space_odd: str):
    def sample(parity, max_deg, rng):
        if parity == 0:
            els = [ca.sample_random(space_even, max_deg, rng) for _ in range(4)]
            return CKEl(els[0], tuple(els[1:]), ZERO, _TRIPLE_ZERO)
        els = [ca.sample_random(space_odd, max_deg, rng) for _ in range(4)]
        return CKEl(ZERO, _TRIPLE_ZERO, els[0], tuple(els[1:]))
    return sample


def _ck_like_handle(name, mult, sample, notes) -> SuperAlgebraHandle:
    zero = CKEl()
    return SuperAlgebraHandle(
        name=name,
        mult=mult,
        parity_of=lambda u: u.parity(),
        add=lambda u, v: u + v,
        sub=lambda u, v: u - v,
        scale=lambda u, s: u.scale(s),
        zero=zero,
        sample_homogeneous=sample,
        describe=format_ck,
        unit=CKEl(a=ONE),
        degree=lambda u: u.degree,
        coords=lambda u: u.coords(),
        homogeneous_parts=lambda u: (u.even_part(), u.odd_part()),
        notes=tuple(notes),
    )


MIRROR_NOTE = "odd.even module products mirror even.odd with sign +1"


def ck_handle(cross: Optional[Dict[Tuple[int, int], Tuple[int, int]]] = None) -> SuperAlgebraHandle:
    name = "ck" if cross is None else "ck[mutated-cross]"
    if cross is not None:
        log.debug(f"HANDLE {name} cross={sorted(cross.items())}")
    return _ck_like_handle(name, lambda u, v: ck_mul(u, v, cross),
                           _ck_sample(Space.GAMMA, Space.GAMMA), (MIRROR_NOTE,))


def flipped_cross_table(i: int = 2, j: int = 3) -> Dict[Tuple[int, int], Tuple[int, int]]:
    """Cross table with the sign of x_{i x j} reversed."""
    table = dict(CROSS_TABLE)
    sign, k = table[(i, j)]
    table[(i, j)] = (-sign, k)
    return table


def gck_project(u: CKEl) -> Tuple[bool, Optional[str]]:
    """Membership in GCK(A, Delta): even slots in A, odd slots in M."""
    for name, el in u.slots():
        space = Space.A if name == "a" or name.startswith("w") else Space.M
        if not ca.in_space(el, space):
            return False, f"{name}: {el} not in {space}"
    return True, None


def gck_handle() -> SuperAlgebraHandle:
    return _ck_like_handle("gck", ck_mul, _ck_sample(Space.A, Space.M), (MIRROR_NOTE,))


def w_extract(u: CKEl, i: int = 1) -> GammaEl:
    """w_j(w_j(w_i r)) for j != i, the w_i-coefficient of an even element r (up to epsilon)."""
    j = 2 if i != 2 else 1
    wi = CKEl(w=tuple(ONE if k == i - 1 else ZERO for k in range(3)))
    wj = CKEl(w=tuple(ONE if k == j - 1 else ZERO for k in range(3)))
    r = ck_mul(wj, ck_mul(wj, ck_mul(wi, u)))
    return r.a * (EPSILON[i - 1] * EPSILON[j - 1])


# ---------------------------------------------------------------------------
# Registry

def double_handle() -> SuperAlgebraHandle:
    return kantor_double(d_bracket())


CONSTRUCTIONS: Dict[str, Callable[[], SuperAlgebraHandle]] = {
    "jvec": jvec_handle,
    "jadelta": jadelta_handle,
    "double": double_handle,
    "ck": ck_handle,
    "gck": gck_handle,
}


def get_handle(name: str) -> SuperAlgebraHandle:
    try:
        return CONSTRUCTIONS[name]()
    except KeyError:
        raise ValueError(f"unknown construction: {name}") from None


def _ck_unit(slot: str, i: int, el: GammaEl) -> CKEl:
    trip = tuple(el if k == i - 1 else ZERO for k in range(3))
    return CKEl(w=trip) if slot == "w" else CKEl(xo=trip)


def generators(name: str) -> List[Tuple[str, object]]:
    """Labelled generating family, unit first."""

    x, y = ca.X, ca.Y
    y2, xy = ca.y_power(2), ca.x_y_power(1)
    if name == "jvec":
        return [("1", JVecEl(ONE)), ("y", JVecEl(y)), ("x", JVecEl(x)),
                ("bar(1)", JVecEl(ZERO, ONE)), ("bar(y)", JVecEl(ZERO, y)), ("bar(x)", JVecEl(ZERO, x))]
    if name == "jadelta":
        return [("1", JADeltaEl(ONE)), ("y^2", JADeltaEl(y2)), ("x*y", JADeltaEl(xy)),
                ("bar(x)", JADeltaEl(ZERO, x)), ("bar(y)", JADeltaEl(ZERO, y))]
    if name == "double":
        return [("1", DoubleEl(ONE, ZERO)), ("y", DoubleEl(y, ZERO)), ("x", DoubleEl(x, ZERO)),
                ("bar(1)", DoubleEl(ZERO, ONE)), ("bar(y)", DoubleEl(ZERO, y)), ("bar(x)", DoubleEl(ZERO, x))]
    if name == "ck":
        gens = [("1", CKEl(a=ONE)), ("y", CKEl(a=y)), ("x", CKEl(a=x)), ("bar(1)", CKEl(b=ONE))]
        gens += [(f"w{i}", _ck_unit("w", i, ONE)) for i in (1, 2, 3)]
        gens += [(f"x{i}(1)", _ck_unit("x", i, ONE)) for i in (1, 2, 3)]
        return gens
    if name == "gck":
        gens = [("1", CKEl(a=ONE)), ("y^2", CKEl(a=y2)), ("x*y", CKEl(a=xy)),
                ("bar(x)", CKEl(b=x)), ("bar(y)", CKEl(b=y))]
        gens += [(f"w{i}", _ck_unit("w", i, ONE)) for i in (1, 2, 3)]
        for i in (1, 2, 3):
            gens += [(f"x{i}(x)", _ck_unit("x", i, x)), (f"x{i}(y)", _ck_unit("x", i, y))]
        return gens
    raise ValueError(f"unknown construction: {name}")


def multiplication_table(name: str) -> List[Tuple[str, str, str]]:
    h = get_handle(name)
    gens = generators(name)
    return [(la, lb, h.describe(h.mult(a, b))) for la, a in gens for lb, b in gens]


# ---------------------------------------------------------------------------
# Construction-level property checks

def check_dual_path(trials: int, max_deg: int, rng: np.random.Generator) -> CheckReport:
    """jadelta_mul(direct) == jadelta_mul(formula8) on homogeneous pairs."""
    h = jadelta_handle()

    def evaluate(p, e):
        u, v = e
        return jadelta_mul(u, v, ProductPath.DIRECT), jadelta_mul(u, v, ProductPath.FORMULA8)
    return run_pointwise_check(h, "dual-path", 2, trials, max_deg, rng, evaluate, ("u", "v"))


def check_gck_closure(trials: int, max_deg: int, rng: np.random.Generator) -> CheckReport:
    h = gck_handle()

    def evaluate(p, e):
        ok, why = gck_project(ck_mul(*e))
        return (why or "in GCK"), "in GCK"
    return run_pointwise_check(h, "gck-closure", 2, trials, max_deg, rng, evaluate, ("u", "v"))


def check_double_consistency(trials: int, max_deg: int, rng: np.random.Generator) -> CheckReport:
    """double(D-bracket) agrees with J(Gamma, D) under a + bx -> a + bar(b)."""
    jv = jvec_handle()
    dbl = double_handle()

    def evaluate(p, e):
        u, v = e
        w = dbl.mult(DoubleEl(u.even, u.odd), DoubleEl(v.even, v.odd))
        return JVecEl(w.a, w.bx), jvec_mul(u, v)
    return run_pointwise_check(jv, "double-consistency", 2, trials, max_deg, rng, evaluate, ("u", "v"))


def embedding_tests(rng: np.random.Generator, basis_deg: int = 8, extra: int = 10) -> List[GammaEl]:
    tests = ca.enumerate_basis(Space.GAMMA, basis_deg)
    tests += [ca.sample_random(Space.GAMMA, basis_deg, rng) for _ in range(extra)]
    return tests


def _first_difference(p: OpMatrix, q: OpMatrix, tests: List[GammaEl]):
    for t in tests:
        for i in range(2):
            for k in range(2):
                a, b = p.entries[i][k](t), q.entries[i][k](t)
                if a != b:
                    return f"[{i}{k}]({t}) = {a}", f"[{i}{k}]({t}) = {b}"
    return None, None


def check_embedding(trials: int, max_deg: int, rng: np.random.Generator,
                    tests: Optional[List[GammaEl]] = None) -> CheckReport:
    """embed(u.v) == embed(u) o_s embed(v) pointwise on the test vectors."""
    h = jvec_handle()
    tests = embedding_tests(rng) if tests is None else tests

    def evaluate(p, e):
        u, v = e
        lhs = embed_special(jvec_mul(u, v))
        rhs = opmatrix_super_product(embed_special(u), embed_special(v))
        return _first_difference(lhs, rhs, tests)
    return run_pointwise_check(h, "embedding-homomorphism", 2, trials, max_deg, rng, evaluate, ("u", "v"))


def check_w_extraction(trials: int, max_deg: int, rng: np.random.Generator,
                       space: str = Space.A) -> CheckReport:
    """w2(w2(w1 r)) = a1 for r = a + sum w_i a_i (and the analogues for a2, a3)."""
    h = gck_handle() if space == Space.A else ck_handle()
    w1, w2 = _ck_unit("w", 1, ONE), _ck_unit("w", 2, ONE)

    def evaluate(p, e):
        r, = e
        if p[0] == 1:
            return None, None
        literal = ck_mul(w2, ck_mul(w2, ck_mul(w1, r)))
        if literal != CKEl(a=r.w[0]):
            return literal, CKEl(a=r.w[0])
        for i in (2, 3):
            if w_extract(r, i) != r.w[i - 1]:
                return CKEl(a=w_extract(r, i)), CKEl(a=r.w[i - 1])
        return None, None
    return run_pointwise_check(h, "w-extraction", 1, trials, max_deg, rng, evaluate, ("r",))
