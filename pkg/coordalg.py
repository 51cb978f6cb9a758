#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Coordinate algebra Gamma = F[x,y]/(x^2 + y^4 - 1) in canonical form p(y) + x*q(y).
- Products reduced through x^2 = 1 - y^4
- The derivation D = 2y^3 d/dx - x d/dy and its scalings c*D
- Subalgebra A = F[y^2] + xyF[y^2] and module M = yF[y^2] + xF[y^2]
- Degree-bounded bases and seeded random sampling
"""

from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Tuple

import numpy as np

from polyring import ONE as P_ONE, Poly, ZERO as P_ZERO, as_rational, format_poly

ONE_MINUS_Y4 = Poly((1, 0, 0, 0, -1))
COEFF_RANGE = 3


class Space:
    GAMMA = "Gamma"
    A = "A"
    M = "M"
    ALL = (GAMMA, A, M)


class GammaEl:
    """Element p + x*q of Gamma; immutable, equality is componentwise."""

    __slots__ = ("p", "q")

    def __init__(self, p: Poly = P_ZERO, q: Poly = P_ZERO):
        self.p = p if isinstance(p, Poly) else Poly.constant(p)
        self.q = q if isinstance(q, Poly) else Poly.constant(q)

    @classmethod
    def scalar(cls, c) -> "GammaEl":
        return cls(Poly.constant(c), P_ZERO)

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()

    @property
    def degree(self):
        """max(deg p, 1 + deg q): x carries weight 1."""
        return max(self.p.degree, 1 + self.q.degree)

    def __add__(self, other: "GammaEl") -> "GammaEl":
        return GammaEl(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "GammaEl") -> "GammaEl":
        return GammaEl(self.p - other.p, self.q - other.q)

    def __neg__(self) -> "GammaEl":
        return GammaEl(-self.p, -self.q)

    def __mul__(self, other) -> "GammaEl":
        if isinstance(other, GammaEl):
            return gamma_mul(self, other)
        s = as_rational(other)
        return GammaEl(self.p * s, self.q * s)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GammaEl":
        result = ONE
        for _ in range(k):
            result = gamma_mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaEl):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __repr__(self) -> str:
        return f"GammaEl({format_gamma(self)!r})"

    def __str__(self) -> str:
        return format_gamma(self)

    def coords(self) -> Dict[Tuple[str, int], object]:
        out = {("p", i): c for i, c in enumerate(self.p.coeffs) if c != 0}
        out.update({("q", i): c for i, c in enumerate(self.q.coeffs) if c != 0})
        return out


def _times_relation(a: Poly) -> Poly:
    """a * (1 - y^4)."""
    return a - a.shift(4)


def gamma_mul(u: GammaEl, v: GammaEl) -> GammaEl:
    if u.is_zero() or v.is_zero():
        return ZERO
    p = u.p * v.p
    qq = u.q * v.q
    if not qq.is_zero():
        p = p + _times_relation(qq)
    q = u.p * v.q + u.q * v.p
    return GammaEl(p, q)


ZERO = GammaEl()
ONE = GammaEl(P_ONE)
X = GammaEl(P_ZERO, P_ONE)
Y = GammaEl(Poly((0, 1)))


def y_power(k: int) -> GammaEl:
    return GammaEl(Poly.monomial(1, k))


def x_y_power(k: int) -> GammaEl:
    return GammaEl(P_ZERO, Poly.monomial(1, k))


def format_gamma(u: GammaEl) -> str:
    """"p + x*(q)"; q = 1 prints as a bare x."""
    if u.is_zero():
        return "0"
    if u.q.is_zero():
        return format_poly(u.p)
    if u.q == P_ONE:
        xpart = "x"
    elif u.q == -P_ONE:
        xpart = "-x"
    else:
        xpart = f"x*({format_poly(u.q)})"
    if u.p.is_zero():
        return xpart
    if xpart.startswith("-"):
        return f"{format_poly(u.p)} - {xpart[1:]}"
    return f"{format_poly(u.p)} + {xpart}"


# ---------------------------------------------------------------------------
# Derivations

def apply_D(u: GammaEl) -> GammaEl:
    """D(p + xq) = (2y^3 q - (1 - y^4) q') + x(-p')."""
    p = u.q.shift(3) * 2 - _times_relation(u.q.derivative())
    return GammaEl(p, -u.p.derivative())


@dataclass(frozen=True)
class DerivationSpec:
    """The derivation c*D of Gamma."""
    name: str
    coefficient: GammaEl

    def __call__(self, u: GammaEl) -> GammaEl:
        return apply_derivation(self, u)


def apply_derivation(spec: DerivationSpec, u: GammaEl) -> GammaEl:
    du = apply_D(u)
    if spec.coefficient == ONE:
        return du
    return gamma_mul(spec.coefficient, du)


D = DerivationSpec("D", ONE)
D11 = DerivationSpec("D11", GammaEl(ONE_MINUS_Y4))
D12 = DerivationSpec("D12", GammaEl(P_ZERO, Poly((0, 1))))
D22 = DerivationSpec("D22", GammaEl(Poly((0, 0, 1))))
DELTA: Dict[int, DerivationSpec] = {11: D11, 12: D12, 22: D22}
DERIVATIONS: Dict[str, DerivationSpec] = {d.name: d for d in (D, D11, D12, D22)}


# ---------------------------------------------------------------------------
# A / M membership

class Membership(NamedTuple):
    in_a: bool
    in_m: bool
    a_part: GammaEl
    m_part: GammaEl


def classify_membership(u: GammaEl) -> Membership:
    """A has p-even/q-odd support, M has p-odd/q-even support; Gamma = A + M."""
    p_even, p_odd = u.p.parity_split()
    q_even, q_odd = u.q.parity_split()
    a_part = GammaEl(p_even, q_odd)
    m_part = GammaEl(p_odd, q_even)
    return Membership(m_part.is_zero(), a_part.is_zero(), a_part, m_part)


def in_space(u: GammaEl, space: str) -> bool:
    if space == Space.GAMMA:
        return True
    m = classify_membership(u)
    return m.in_a if space == Space.A else m.in_m


def split_module_element(m: GammaEl) -> Tuple[GammaEl, GammaEl]:
    """Write m in M as x*a + y*b with a, b in F[y^2] (a subset of A)."""
    if not classify_membership(m).in_m:
        raise ValueError("element is not in M")
    return GammaEl(m.q), GammaEl(m.p.divide_by_y())


# ---------------------------------------------------------------------------
# Bases and sampling

def enumerate_basis(space: str, max_deg: int) -> List[GammaEl]:
    """Monomial basis of total degree <= max_deg: y-powers first, then x*y-powers."""
    if max_deg < 0:
        raise ValueError("max_deg must be >= 0")
    if space not in Space.ALL:
        raise ValueError(f"unknown space: {space}")
    ys = range(0, max_deg + 1)
    xys = range(0, max_deg)
    if space == Space.A:
        ys = [k for k in ys if k % 2 == 0]
        xys = [k for k in xys if k % 2 == 1]
    elif space == Space.M:
        ys = [k for k in ys if k % 2 == 1]
        xys = [k for k in xys if k % 2 == 0]
    return [y_power(k) for k in ys] + [x_y_power(k) for k in xys]


def combine(basis: List[GammaEl], coeffs) -> GammaEl:
    p = [0] * (max((b.p.degree for b in basis if not b.p.is_zero()), default=-1) + 1)
    q = [0] * (max((b.q.degree for b in basis if not b.q.is_zero()), default=-1) + 1)
    for b, c in zip(basis, coeffs):
        c = int(c)
        if c == 0:
            continue
        if b.q.is_zero():
            p[b.p.degree] += c
        else:
            q[b.q.degree] += c
    return GammaEl(Poly(p), Poly(q))


def sample_random(space: str, max_deg: int, rng: np.random.Generator,
                  nonzero: bool = False) -> GammaEl:
    """Integer combination of the basis with coefficients uniform in [-3, 3]."""
    basis = enumerate_basis(space, max_deg)
    if not basis:
        if nonzero:
            raise ValueError(f"no nonzero element of {space} up to degree {max_deg}")
        return ZERO
    while True:
        coeffs = rng.integers(-COEFF_RANGE, COEFF_RANGE + 1, size=len(basis))
        u = combine(basis, coeffs)
        if not nonzero or not u.is_zero():
            return u
