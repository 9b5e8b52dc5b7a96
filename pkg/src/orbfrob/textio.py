"""Text forms of scalars and sparse vectors shared by dumps and session files.

Scalar grammar:  expr := term (('+'|'-') term)*,  term := factor ('*' factor)*,
factor := '-' factor | INT ['/' INT] | 'w(' [-]INT '/' INT ')' | 'i' | '(' expr ')'.
``w(a/b)`` is exp(2 pi i a/b).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputSyntaxError, UndeclaredVariable
from .exact import Cyclotomic, MultiPoly


def scalar_text(c: Cyclotomic) -> str:
    """str(c) without blanks, so that it survives whitespace splitting."""
    return str(c).replace(" ", "")


def vec_text(v: Mapping[int, Cyclotomic]) -> str:
    if not v:
        return "0"
    return ",".join(f"{k}:{scalar_text(c)}" for k, c in sorted(v.items()))


class _Scalar:
    def __init__(self, text: str, line: int, col: int):
        self.s = text
        self.i = 0
        self.line = line
        self.col = col

    def error(self, msg: str) -> InputSyntaxError:
        return InputSyntaxError(msg, self.line, self.col + self.i)

    def peek(self) -> str:
        while self.i < len(self.s) and self.s[self.i] == " ":
            self.i += 1
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.i += 1

    def integer(self) -> int:
        self.peek()
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if j == self.i:
            raise self.error("expected a number")
        return int(self.s[j:self.i])

    def expr(self) -> Cyclotomic:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.s[self.i]
            self.i += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Cyclotomic:
        acc = self.factor()
        while self.peek() == "*":
            self.i += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Cyclotomic:
        ch = self.peek()
        if ch == "-":
            self.i += 1
            return -self.factor()
        if ch == "(":
            self.i += 1
            v = self.expr()
            self.eat(")")
            return v
        if ch == "w":
            self.i += 1
            self.eat("(")
            sign = 1
            if self.peek() == "-":
                self.i += 1
                sign = -1
            a = self.integer()
            self.eat("/")
            b = self.integer()
            self.eat(")")
            if b == 0:
                raise self.error("zero denominator")
            return Cyclotomic.root(Fraction(sign * a, b))
        if ch == "i":
            self.i += 1
            return Cyclotomic.root(Fraction(1, 4))
        if ch.isdigit():
            a = self.integer()
            if self.peek() == "/" and self.i + 1 < len(self.s) and self.s[self.i + 1:].lstrip()[:1].isdigit():
                self.i += 1
                b = self.integer()
                if b == 0:
                    raise self.error("zero denominator")
                return Cyclotomic.rational(Fraction(a, b))
            return Cyclotomic.rational(a)
        raise self.error(f"unexpected {ch!r}" if ch else "unexpected end of scalar")


def parse_scalar(text: str, line: int = 0, col: int = 1) -> Cyclotomic:
    p = _Scalar(text, line, col)
    v = p.expr()
    if p.peek():
        raise p.error(f"trailing text {text[p.i:]!r}")
    return v


def parse_vec(text: str, line: int = 0, col: int = 1) -> dict[int, Cyclotomic]:
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    for part in split_top(text, ","):
        k, sep, c = part.partition(":")
        if not sep or not k.strip().isdigit():
            raise InputSyntaxError(f"expected index:scalar, got {part.strip()!r}", line, col)
        val = parse_scalar(c, line, col)
        if val:
            out[int(k)] = val
    return out


def split_top(text: str, sep: str) -> list[str]:
    """Split on sep outside parentheses and brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


class _Poly(_Scalar):
    """Polynomial grammar: the scalar grammar plus declared variables and '^'."""

    def __init__(self, text: str, vars: Sequence[str], weights, line: int, col: int):
        super().__init__(text, line, col)
        self.vars = tuple(vars)
        self.weights = weights

    def const(self, c: Cyclotomic) -> MultiPoly:
        return MultiPoly.const(self.vars, c, self.weights)

    def factor(self):
        ch = self.peek()
        if ch == "-":
            self.i += 1
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            base = base ** self.integer()
        return base

    def atom(self) -> MultiPoly:
        ch = self.peek()
        if ch == "(":
            self.i += 1
            v = self.expr()
            self.eat(")")
            return v
        if ch.isalpha() or ch == "_":
            j = self.i
            while self.i < len(self.s) and (self.s[self.i].isalnum() or self.s[self.i] == "_"):
                self.i += 1
            name = self.s[j:self.i]
            if name in self.vars:
                return MultiPoly.var(self.vars, name, self.weights)
            if name in ("w", "i"):
                self.i = j
                return self.const(super().factor())
            raise UndeclaredVariable(f"{self.line}:{self.col + j}: undeclared variable {name!r}",
                                     witness=(name, self.line, self.col + j))
        if ch.isdigit():
            return self.const(super().factor())
        raise self.error(f"unexpected {ch!r}" if ch else "unexpected end of polynomial")

    def expr(self):
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.s[self.i]
            self.i += 1
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        if not isinstance(acc, MultiPoly):
            acc = self.const(acc)
        return acc


def parse_poly(text: str, vars: Sequence[str], weights=None, line: int = 0, col: int = 1) -> MultiPoly:
    p = _Poly(text, vars, weights, line, col)
    v = p.expr()
    if p.peek():
        raise p.error(f"trailing text {text[p.i:]!r}")
    return v
