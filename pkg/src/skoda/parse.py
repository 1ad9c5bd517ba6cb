"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT | NAME | '(' expr ')'

Division is only allowed by a nonzero constant, which covers rational
literals such as ``3/4*x``.
"""

from __future__ import annotations

import re

from .errors import ParseError, UnknownVariableError
from .ring import Poly, RingPresentation, d_add, d_mul, d_scale

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingPresentation):
        self.text = text
        self.ring = ring
        self.p = ring.p
        self.tokens = _tokenize(text)
        self.i = 0
        self.one = (0,) * (ring.nvars + 1)
        self.index = {v: k for k, v in enumerate(ring.vars)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", tok[2], self.text)

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)
        return val

    def expr(self) -> dict:
        val = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                val = d_add(val, rhs, self.p, 1 if tok[1] == "+" else -1)
            else:
                return val

    def term(self) -> dict:
        val = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                val = d_mul(val, self.unary(), self.p)
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                at = self.peek()[2]
                rhs = self.unary()
                if not rhs or any(any(m) for m in rhs):
                    raise ParseError("division by a non-constant or zero", at, self.text)
                val = d_scale(val, self.ring.field.inv(rhs[self.one]), self.p)
            else:
                return val

    def unary(self) -> dict:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            val = self.unary()
            return val if tok[1] == "+" else d_scale(val, -1, self.p)
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "int":
                raise ParseError("exponent must be a non-negative integer literal", exp[2], self.text)
            result = {self.one: self.ring.field.one}
            b = base
            k = exp[1]
            while k:
                if k & 1:
                    result = d_mul(result, b, self.p)
                k >>= 1
                if k:
                    b = d_mul(b, b, self.p)
            return result
        return base

    def atom(self) -> dict:
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            c = self.ring.field(val)
            return {self.one: c} if c else {}
        if kind == "name":
            if val not in self.index:
                raise UnknownVariableError(val, pos, self.text)
            m = [0] * (self.ring.nvars + 1)
            m[self.index[val] + 1] = 1
            return {tuple(m): self.ring.field.one}
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token {val!r}", pos, self.text)


def parse_raw(text: str, ring: RingPresentation) -> dict:
    """Parse without reducing modulo the ring relations."""
    return _Parser(text, ring).parse()


def parse_poly(text: str, ring: RingPresentation) -> Poly:
    """Parse ``text`` and return its normal form in ``ring``."""
    return Poly(ring, parse_raw(text, ring))


def parse_list(texts, ring: RingPresentation) -> list:
    if isinstance(texts, str):
        texts = _split_top_level(texts)
    return [parse_poly(t, ring) for t in texts]


def _split_top_level(text: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    parts.append("".join(cur))
    return [p for p in parts if p.strip()]
