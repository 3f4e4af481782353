"""Tiny parser for integer Laurent polynomial expressions.

Grammar: sums and products of integers and the variables x, y, z, w, with
``^`` (or ``**``) powers, negative exponents allowed on monomials, and
parentheses. Example: ``3 + x + y + x^-1 + y^-1``.
"""

from __future__ import annotations

import re

from .lattice import VARNAMES, IntLaurentPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z]\w*)|(\*\*|[-+*^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, dim):
        self.toks = tokens
        self.i = 0
        self.dim = dim

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r}, got {tok[1]!r}")

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            n = sign * val
            if n < 0 and not base.is_unit():
                raise ParseError("negative exponents are allowed on monomials only")
            return base ** n
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return IntLaurentPoly.constant(self.dim, val)
        if kind == "var":
            if val not in VARNAMES[:self.dim]:
                raise ParseError(f"unknown variable {val!r} for dimension {self.dim}")
            exp = [0] * self.dim
            exp[VARNAMES.index(val)] = 1
            return IntLaurentPoly.monomial(exp)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and val == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {val!r}")


def infer_dim(text: str) -> int:
    names = set(re.findall(r"[a-z]\w*", text))
    bad = names - set(VARNAMES)
    if bad:
        raise ParseError(f"unknown variables: {sorted(bad)}")
    used = [VARNAMES.index(v) for v in names]
    return max(used, default=0) + 1


def parse_poly(text: str, dim: int | None = None) -> IntLaurentPoly:
    """Parse an expression into an IntLaurentPoly; dimension defaults to the last variable used."""
    if dim is None:
        dim = infer_dim(text)
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    p = _Parser(tokens, dim)
    out = p.expr()
    if p.i != len(tokens):
        raise ParseError(f"trailing input starting at token {tokens[p.i][1]!r}")
    return out
