"""Recursive-descent parser for the polynomial text grammar.

::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

NAME is a ring variable, or ``t`` over a rational-function field.  A divisor
must be free of ring variables.  Juxtaposition (``2x``) is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DivisionByZero,
    DivisionNotAllowed,
    PolynomialSyntaxError,
    UnknownVariable,
)
from .poly import ModuleVector, Polynomial, Ring

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass
class _Token:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(_Token("INT", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(_Token("NAME", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolynomialSyntaxError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(_Token("OP", ch, m.start(3)))
        pos = m.end()
    tokens.append(_Token("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def _advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _error(self, msg, tok=None):
        tok = tok or self.tok
        return PolynomialSyntaxError(msg, tok.pos, self.text)

    def parse(self) -> Polynomial:
        if self.tok.kind == "END":
            raise self._error("empty expression")
        value = self.expr()
        if self.tok.kind != "END":
            if self.tok.kind in ("INT", "NAME") or self.tok.text == "(":
                raise self._error("implicit multiplication is not allowed; use '*'")
            raise self._error(f"unexpected {self.tok.text!r}")
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self._advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.unary()
        while self.tok.kind == "OP" and self.tok.text in "*/":
            op_tok = self._advance()
            rhs = self.unary()
            if op_tok.text == "*":
                value = value * rhs
            else:
                if not rhs.is_constant():
                    raise DivisionNotAllowed(
                        "division by an expression containing ring variables",
                        op_tok.pos,
                        self.text,
                    )
                c = rhs.constant_coefficient()
                if self.ring.field.is_zero(c):
                    raise DivisionByZero(f"division by zero at position {op_tok.pos}")
                value = value.scale(self.ring.field.inv(c))
        return value

    def unary(self) -> Polynomial:
        if self.tok.kind == "OP" and self.tok.text in "+-":
            op = self._advance().text
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.tok.kind == "OP" and self.tok.text == "^":
            self._advance()
            if self.tok.kind != "INT":
                raise self._error("exponent must be a non-negative integer literal")
            k = int(self._advance().text)
            base = base ** k
        return base

    def atom(self) -> Polynomial:
        tok = self.tok
        if tok.kind == "INT":
            self._advance()
            return self.ring.constant(int(tok.text))
        if tok.kind == "NAME":
            self._advance()
            if tok.text in self.ring.variables:
                return self.ring.var(tok.text)
            if tok.text == "t" and self.ring.field.has_parameter:
                return self.ring.constant(self.ring.field.gen())
            raise UnknownVariable(f"unknown variable {tok.text!r}", tok.pos, self.text)
        if tok.kind == "OP" and tok.text == "(":
            self._advance()
            value = self.expr()
            if not (self.tok.kind == "OP" and self.tok.text == ")"):
                raise self._error("expected ')'")
            self._advance()
            return value
        if tok.kind == "END":
            raise self._error("unexpected end of input")
        raise self._error(f"unexpected {tok.text!r}")


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    return _Parser(text, ring).parse()


def split_top_level(text: str, sep: str = ",") -> list:
    """Split at separators outside parentheses and brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_vector(text: str, ring: Ring) -> ModuleVector:
    """Parse ``[f1, f2, ...]`` into a module vector."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise PolynomialSyntaxError("module vector must be written as [f1, ..., fq]", 0, text)
    entries = split_top_level(s[1:-1])
    if not entries:
        raise PolynomialSyntaxError("empty module vector", 0, text)
    return ModuleVector([parse_polynomial(e, ring) for e in entries], ring)
