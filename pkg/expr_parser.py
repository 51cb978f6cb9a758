#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Element syntax for Gamma and the constructions built on it.

    expr  := term (("+" | "-") term)*
    term  := unary (("*" unary) | ("/" NUMBER))*
    unary := "-" unary | power
    power := atom ("^" NUMBER)?
    atom  := NUMBER | "x" | "y" | "(" expr ")" | FUNC "(" expr ")"
    FUNC  := bar | w1 | w2 | w3 | x1 | x2 | x3

"*" is the product of the chosen construction. Bare polynomials in x, y are
Gamma elements and multiply in Gamma until combined with a construction
element.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import coordalg as ca
import constructions as cs
from coordalg import GammaEl
from polyring import ParseError
from superkernel import DoubleEl

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<func>bar|w[123]|x[123])(?=\s*\()|(?P<var>[xy])|(?P<op>[-+*/^()]))")

FUNCS = ("bar", "w1", "w2", "w3", "x1", "x2", "x3")


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    src = text.replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(src):
        if not src[pos:].strip():
            break
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            stripped = len(src[pos:]) - len(src[pos:].lstrip())
            bad = pos + stripped
            raise ParseError(f"unexpected character {src[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


class _Lit:
    """A Gamma value not yet lifted into the construction."""
    __slots__ = ("g",)

    def __init__(self, g: GammaEl):
        self.g = g


class ExprParser:
    """Recursive-descent evaluator; `construction` None restricts input to Gamma."""

    def __init__(self, text: str, construction: Optional[str] = None):
        self.text = text
        self.construction = construction
        self.handle = cs.get_handle(construction) if construction else None
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers
    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return tok

    # -- lifting
    def lift(self, v, pos: int):
        if not isinstance(v, _Lit):
            return v
        if self.construction is None:
            return v.g
        return lift_gamma(self.construction, v.g)

    def _binary(self, a, b, op: str, pos: int):
        if isinstance(a, _Lit) and isinstance(b, _Lit):
            if op == "+":
                return _Lit(a.g + b.g)
            if op == "-":
                return _Lit(a.g - b.g)
            return _Lit(ca.gamma_mul(a.g, b.g))
        if self.handle is None:
            raise ParseError("construction elements need a construction", pos)
        a, b = self.lift(a, pos), self.lift(b, pos)
        h = self.handle
        if op == "+":
            return h.add(a, b)
        if op == "-":
            return h.sub(a, b)
        return h.mult(a, b)

    def _scale(self, v, s, pos: int):
        if isinstance(v, _Lit):
            return _Lit(v.g * s)
        return self.handle.scale(v, s)

    # -- grammar
    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        v = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return self.lift(v, tok.pos)

    def expr(self):
        v = self.term()
        while self.peek().text in ("+", "-"):
            tok = self.take()
            v = self._binary(v, self.term(), tok.text, tok.pos)
        return v

    def term(self):
        v = self.unary()
        while self.peek().text in ("*", "/"):
            tok = self.take()
            if tok.text == "*":
                v = self._binary(v, self.unary(), "*", tok.pos)
            else:
                num = self.take()
                if num.kind != "num":
                    raise ParseError("division only by an integer", num.pos)
                if int(num.text) == 0:
                    raise ParseError("division by zero", num.pos)
                v = self._scale(v, Fraction(1, int(num.text)), tok.pos)
        return v

    def unary(self):
        if self.peek().text == "-":
            tok = self.take()
            return self._scale(self.unary(), -1, tok.pos)
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek().text == "^":
            tok = self.take()
            num = self.take()
            if num.kind != "num":
                raise ParseError("exponent must be a non-negative integer", num.pos)
            if not isinstance(v, _Lit):
                raise ParseError("powers apply to Gamma elements only", tok.pos)
            v = _Lit(v.g ** int(num.text))
        return v

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return _Lit(GammaEl.scalar(int(tok.text)))
        if tok.kind == "var":
            return _Lit(ca.X if tok.text == "x" else ca.Y)
        if tok.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if tok.kind == "func":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            if not isinstance(inner, _Lit):
                raise ParseError(f"{tok.text}(...) takes a Gamma element", tok.pos)
            if self.construction is None:
                raise ParseError(f"{tok.text}(...) needs a construction", tok.pos)
            return apply_func(self.construction, tok.text, inner.g, tok.pos)
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.pos)
        raise ParseError(f"unexpected {tok.text!r}", tok.pos)


def lift_gamma(construction: str, g: GammaEl):
    if construction == "jvec":
        return cs.JVecEl(g)
    if construction == "jadelta":
        return cs.JADeltaEl(g)
    if construction == "double":
        return DoubleEl(g, ca.ZERO)
    if construction in ("ck", "gck"):
        return _gck_checked(construction, cs.CKEl(a=g))
    raise ValueError(f"unknown construction: {construction}")


def _gck_checked(construction: str, u: cs.CKEl) -> cs.CKEl:
    if construction == "gck":
        ok, why = cs.gck_project(u)
        if not ok:
            raise cs.MembershipError(f"not in GCK(A,Δ): {why}")
    return u


def apply_func(construction: str, func: str, g: GammaEl, pos: int = 0):
    if func == "bar":
        if construction == "jvec":
            return cs.JVecEl(ca.ZERO, g)
        if construction == "jadelta":
            return cs.JADeltaEl(ca.ZERO, g)
        if construction == "double":
            return DoubleEl(ca.ZERO, g)
        return _gck_checked(construction, cs.CKEl(b=g))
    if construction not in ("ck", "gck"):
        raise ParseError(f"{func}(...) exists only in ck and gck", pos)
    i = int(func[1]) - 1
    trip = tuple(g if k == i else ca.ZERO for k in range(3))
    u = cs.CKEl(w=trip) if func[0] == "w" else cs.CKEl(xo=trip)
    return _gck_checked(construction, u)


def parse_gamma(text: str) -> GammaEl:
    return ExprParser(text).parse()


def parse_element(text: str, construction: str):
    return ExprParser(text, construction).parse()


def eval_expr(text: str, construction: str) -> str:
    """Evaluate text in the construction and return the canonical form."""
    h = cs.get_handle(construction)
    return h.describe(parse_element(text, construction))


CK_SLOTS = ("a", "w1", "w2", "w3", "bar", "x1", "x2", "x3")


def parse_ck(text: str) -> cs.CKEl:
    """Read "a | w1:a1 | ... | bar:b | x1:b1 | ..."; omitted slots are zero."""
    values = {name: ca.ZERO for name in CK_SLOTS}
    offset = 0
    for chunk in text.split("|"):
        body = chunk
        name = "a"
        if ":" in chunk:
            name, body = chunk.split(":", 1)
            name = name.strip()
            if name not in CK_SLOTS:
                raise ParseError(f"unknown slot {name!r}", offset)
        if body.strip():
            try:
                values[name] = parse_gamma(body)
            except ParseError as e:
                base = offset + (len(chunk) - len(body))
                raise ParseError(str(e).split(": ", 1)[1], base + e.position) from None
        offset += len(chunk) + 1
    return cs.CKEl(values["a"], (values["w1"], values["w2"], values["w3"]),
                   values["bar"], (values["x1"], values["x2"], values["x3"]))


def parse_in_space(text: str, space: str) -> GammaEl:
    g = parse_gamma(text)
    if not ca.in_space(g, space):
        raise ValueError(f"{g} is not in {space}")
    return g
