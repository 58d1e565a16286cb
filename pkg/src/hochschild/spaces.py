"""A small expression language for spaces.

    expr := "pt" | "circle" | "torus" | "s" "(" INT ")"
          | "wedge" "(" expr ("," expr)+ ")" | "prod" "(" expr "," expr ")"

Whitespace is ignored.  ``circle`` and ``torus`` are aliases and parse to
``s(1)`` and ``prod(s(1), s(1))``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .simplicial import (DEFAULT_TRUNCATION, SimplicialSet, circle, point, product, sphere,
                         wedge)


class SpaceSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text, self.pos = text, pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


@dataclass(frozen=True)
class SpaceExpr:
    op: str  # "pt" | "s" | "wedge" | "prod"
    children: tuple = ()
    n: int = 0


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_]+)|(?P<int>\d+)|(?P<punct>[(),])|(?P<bad>\S))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise SpaceSyntaxError(f"unexpected character {m.group(kind)!r}", text, start)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind, value=None):
        k, v, pos = self.peek()
        if k != kind or (value is not None and v != value):
            want = repr(value) if value else kind
            got = "end of input" if k == "end" else repr(v)
            raise SpaceSyntaxError(f"expected {want}, found {got}", self.text, pos)
        self.i += 1
        return v, pos

    def expr(self) -> SpaceExpr:
        k, v, pos = self.peek()
        if k != "name":
            got = "end of input" if k == "end" else repr(v)
            raise SpaceSyntaxError(f"expected a space, found {got}", self.text, pos)
        self.i += 1
        if v == "pt":
            return SpaceExpr("pt")
        if v == "circle":
            return SpaceExpr("s", n=1)
        if v == "torus":
            return SpaceExpr("prod", (SpaceExpr("s", n=1), SpaceExpr("s", n=1)))
        if v == "s":
            self.take("punct", "(")
            num, npos = self.take("int")
            self.take("punct", ")")
            n = int(num)
            if n == 0:
                raise SpaceSyntaxError("s(0) is not allowed: sphere dimensions start at 1 "
                                       "(use pt for a point)", self.text, npos)
            return SpaceExpr("s", n=n)
        if v in ("wedge", "prod"):
            self.take("punct", "(")
            kids = [self.expr()]
            while self.peek()[:2] == ("punct", ","):
                self.i += 1
                kids.append(self.expr())
            _, cpos = self.take("punct", ")")
            if len(kids) < 2:
                raise SpaceSyntaxError(f"{v} needs at least two arguments", self.text, cpos)
            if v == "prod" and len(kids) != 2:
                raise SpaceSyntaxError("prod takes exactly two arguments", self.text, cpos)
            return SpaceExpr(v, tuple(kids))
        raise SpaceSyntaxError(f"unknown space {v!r}", self.text, pos)


def parse_space(text: str) -> SpaceExpr:
    p = _Parser(text)
    e = p.expr()
    k, v, pos = p.peek()
    if k != "end":
        raise SpaceSyntaxError(f"unexpected {v!r} after the expression", text, pos)
    return e


def print_space(e: SpaceExpr) -> str:
    if e.op == "pt":
        return "pt"
    if e.op == "s":
        return f"s({e.n})"
    return f"{e.op}(" + ", ".join(print_space(c) for c in e.children) + ")"


def max_sphere_dim(e: SpaceExpr) -> int:
    if e.op == "s":
        return e.n
    return max((max_sphere_dim(c) for c in e.children), default=0)


def realize(e: SpaceExpr, truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    """Build the simplicial set of an expression, truncated at `truncation`."""
    if e.op == "pt":
        return point(truncation)
    if e.op == "s":
        return circle(truncation) if e.n == 1 else sphere(e.n, truncation)
    kids = [realize(c, truncation) for c in e.children]
    if e.op == "wedge":
        return wedge(kids, name=print_space(e))
    return product(kids[0], kids[1], name=print_space(e))
