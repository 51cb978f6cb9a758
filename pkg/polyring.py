#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact rational scalars and dense univariate polynomials in y over Q.
- Canonical coefficient tuples (no trailing zeros)
- Zero polynomial has degree NEG_INF, never -1
- Parity (even/odd degree) decomposition, derivative, monic gcd
- Text form "1 - 2*y^4 + y^8" for CLI input/output
"""

import re
from fractions import Fraction
from typing import Iterable, Tuple, Union

Rational = Fraction
Scalar = Union[int, Fraction]

# Degree of the zero polynomial.
NEG_INF = float("-inf")


class ParseError(ValueError):
    """Malformed element text; `position` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"parse error at position {position}: {message}")
        self.position = position


class GcdUndefinedError(ValueError):
    pass


def as_rational(value) -> Scalar:
    """Normalize a scalar: integral values become int, the rest reduced Fractions."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return value


def format_rational(value: Scalar) -> str:
    value = as_rational(value)
    if isinstance(value, int):
        return str(value)
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """Polynomial in y; coeffs[i] is the coefficient of y^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        terms = [as_rational(c) for c in coeffs]
        while terms and terms[-1] == 0:
            terms.pop()
        self.coeffs: Tuple[Scalar, ...] = tuple(terms)

    @classmethod
    def _from_terms(cls, terms: list) -> "Poly":
        """Build from arithmetic results whose entries are already int or Fraction."""
        while terms and terms[-1] == 0:
            terms.pop()
        for i, c in enumerate(terms):
            if type(c) is Fraction and c.denominator == 1:
                terms[i] = c.numerator
        p = cls.__new__(cls)
        p.coeffs = tuple(terms)
        return p

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, c, k: int) -> "Poly":
        if k < 0:
            raise ValueError(f"negative exponent {k}")
        return cls([0] * k + [c])

    # -- structure
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, i: int) -> Scalar:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else 0

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

    def has_even_support(self) -> bool:
        return all(i % 2 == 0 for i in self.support())

    def has_odd_support(self) -> bool:
        return all(i % 2 == 1 for i in self.support())

    # -- arithmetic
    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._from_terms(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._from_terms([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.constant(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            s = as_rational(other)
            if s == 0:
                return ZERO
            return Poly._from_terms([c * s for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj != 0:
                    out[i + j] += ai * bj
        return Poly._from_terms(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "Poly":
        """Multiply by y^k."""
        if not self.coeffs:
            return self
        return Poly._from_terms([0] * k + list(self.coeffs))

    def divide_by_y(self) -> "Poly":
        """Exact division by y; the constant term must vanish."""
        if self.coeff(0) != 0:
            raise ValueError("polynomial is not divisible by y")
        return Poly(self.coeffs[1:])

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lead = Fraction(other.leading())
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c / lead
            quot[i - dq] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - dq + j] -= f * oc
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (Fraction(1) / Fraction(self.leading()))

    def derivative(self) -> "Poly":
        return Poly._from_terms([i * c for i, c in enumerate(self.coeffs) if i > 0])

    def parity_split(self) -> Tuple["Poly", "Poly"]:
        even = Poly(c if i % 2 == 0 else 0 for i, c in enumerate(self.coeffs))
        odd = Poly(c if i % 2 == 1 else 0 for i, c in enumerate(self.coeffs))
        return even, odd

    def __call__(self, point) -> Scalar:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return as_rational(acc)

    # -- identity
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


ZERO = Poly()
ONE = Poly((1,))
Y = Poly((0, 1))


def poly_arith(a: Poly, b: Poly, kind: str) -> Poly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind: {kind}")


def poly_derivative(a: Poly) -> Poly:
    return a.derivative()


def poly_parity_split(a: Poly) -> Tuple[Poly, Poly]:
    return a.parity_split()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm over Q."""
    if a.is_zero() and b.is_zero():
        raise GcdUndefinedError("gcd undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# ---------------------------------------------------------------------------
# Text form

_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?P<coef>\d+(?:/\d+)?)?\s*"
    r"(?P<star>\*)?\s*"
    r"(?P<var>y(?:\s*\^\s*(?P<exp>\d+))?)?\s*"
)


def parse_poly(text: str) -> Poly:
    """Parse "c*y^k" terms joined by +/- in any order; whitespace is free."""
    src = text.replace("−", "-")
    pos = 0
    acc = ZERO
    first = True
    if not src.strip():
        raise ParseError("empty polynomial", 0)
    while pos < len(src):
        if not src[pos:].strip():
            break
        m = _TERM_RE.match(src, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        if not first and m.group("sign") is None:
            raise ParseError("expected '+' or '-' between terms", pos)
        coef, var = m.group("coef"), m.group("var")
        if coef is None and var is None:
            raise ParseError("missing term", m.end())
        if m.group("star") and (coef is None or var is None):
            raise ParseError("dangling '*'", m.start("star"))
        if coef is not None and "/" in coef and int(coef.split("/")[1]) == 0:
            raise ParseError("zero denominator", m.start("coef") + coef.index("/") + 1)
        c = Fraction(coef) if coef is not None else 1
        if m.group("sign") == "-":
            c = -c
        k = int(m.group("exp")) if m.group("exp") else (1 if var else 0)
        acc = acc + Poly.monomial(c, k)
        first = False
        pos = m.end()
    return acc


def format_poly(a: Poly, var: str = "y") -> str:
    """Ascending-degree canonical text; zero prints as "0"."""
    if a.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(a.coeffs):
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = format_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
