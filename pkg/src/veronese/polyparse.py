"""Recursive-descent parser for polynomial literals in ``s1..sn``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER | "s" INT | "(" expr ")"

Division is only allowed by a nonzero constant, so ``3/2*s1^2`` and
``s1^2/2`` both parse.  The result is a dict ``{exponent: Fraction}``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError
from .jets import MJet

_TOKEN = re.compile(r"\s*(?:(\d+)|(s)(\d+)|([-+*/^()]))")


class PolyParseError(DomainError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at column {pos + 1} in {text!r}")
        self.pos = pos


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        start = len(text) - len(text[pos:].lstrip())
        if not m:
            raise PolyParseError(text, start, f"unexpected character {text[start]!r}")
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("var", int(m.group(3)), start))
        else:
            toks.append((m.group(4), None, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def _add(a: dict, b: dict, sign=1) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c}


def _mul(a: dict, b: dict) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(self.text, tok[2], msg)

    def const(self, c) -> dict:
        c = Fraction(c)
        return {(0,) * self.n: c} if c else {}

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        out = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[0]!r}")
        return out

    def expr(self) -> dict:
        out = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            out = _add(out, self.term(), 1 if op == "+" else -1)
        return out

    def term(self) -> dict:
        out = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()
            divisor = self.peek()
            rhs = self.unary()
            if op[0] == "*":
                out = _mul(out, rhs)
            else:
                zero = (0,) * self.n
                if set(rhs) - {zero}:
                    self.fail("division by a non-constant", divisor)
                if not rhs:
                    self.fail("division by zero", divisor)
                out = {e: c / rhs[zero] for e, c in out.items()}
        return out

    def unary(self) -> dict:
        if self.peek()[0] in "+-":
            op = self.take()[0]
            inner = self.unary()
            return inner if op == "+" else {e: -c for e, c in inner.items()}
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be a nonnegative integer", tok)
            out = self.const(1)
            for _ in range(tok[1]):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> dict:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return self.const(val)
        if kind == "var":
            if not 1 <= val <= self.n:
                self.fail(f"variable s{val} outside s1..s{self.n}", tok)
            e = [0] * self.n
            e[val - 1] = 1
            return {tuple(e): Fraction(1)}
        if kind == "(":
            out = self.expr()
            if self.take()[0] != ")":
                self.fail("missing ')'", self.toks[self.i - 1])
            return out
        self.fail(f"unexpected {kind!r}", tok)


def parse_poly(text: str, n: int) -> dict:
    """Parse ``text`` into ``{exponent tuple: Fraction}`` in ``n`` variables."""
    if n < 1:
        raise DomainError("need at least one variable")
    return _Parser(text, n).parse()


def poly_degree(terms: dict) -> int:
    return max((sum(e) for e in terms), default=0)


def parse_jet(text: str, n: int, T: int) -> MJet:
    """Parse into an MJet truncated at ``T``; terms above ``T`` are an error."""
    terms = parse_poly(text, n)
    d = poly_degree(terms)
    if d > T:
        raise DomainError(f"{text!r} has degree {d} above the truncation {T}")
    return MJet(n, T, terms)
