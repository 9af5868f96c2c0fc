"""Text grammar for polynomials.

Variables are ``t1`` .. ``t9`` plus ``u`` (the homogenizing variable, always
placed after the t's).  Coefficients are integers or ``a/b``; operators are
``+ - * ^`` and parentheses.  Juxtaposition is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import MPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|(t[1-9])|(u)|([-+*^/()]))")


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolyParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        elif m.group(3):
            tokens.append(("var", "u", start))
        else:
            tokens.append(("op", m.group(4), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def variable_count(text: str) -> tuple[int, bool]:
    """(number of t-variables referenced, whether u appears)."""
    idx = [int(v[1:]) for v in re.findall(r"t[1-9]", text)]
    return (max(idx) if idx else 0), ("u" in re.findall(r"[a-z]", text))


class _Parser:
    def __init__(self, text: str, n: int, has_u: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.n = n
        self.has_u = has_u
        self.nvars = n + (1 if has_u else 0)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r}", self.text, pos)

    def parse(self) -> MPoly:
        if self.peek()[0] == "end":
            raise PolyParseError("empty polynomial", self.text, 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            what = "implicit multiplication is not allowed" if kind in ("num", "var") or val == "(" else f"unexpected {val!r}"
            raise PolyParseError(what, self.text, pos)
        return p

    def expr(self) -> MPoly:
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MPoly:
        p = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> MPoly:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise PolyParseError("exponent must be a nonnegative integer", self.text, pos)
            return base ** int(val)
        return base

    def atom(self) -> MPoly:
        kind, val, pos = self.take()
        if kind == "num":
            c = Fraction(int(val))
            if self.peek()[:2] == ("op", "/"):
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num":
                    raise PolyParseError("denominator must be an integer literal", self.text, p2)
                if int(v2) == 0:
                    raise PolyParseError("zero denominator", self.text, p2)
                c = Fraction(int(val), int(v2))
            return MPoly.constant(self.nvars, c)
        if kind == "var":
            if val == "u":
                return MPoly.var(self.nvars, self.nvars - 1)
            i = int(val[1:]) - 1
            if i >= self.n:
                raise PolyParseError(f"variable {val} exceeds declared count {self.n}", self.text, pos)
            return MPoly.var(self.nvars, i)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise PolyParseError("unexpected end of input", self.text, pos)
        raise PolyParseError(f"unexpected {val!r}", self.text, pos)


def parse_poly(text: str, n: int | None = None) -> MPoly:
    """Parse polynomial text.

    ``n`` is the number of t-variables; it defaults to the largest index
    used.  If ``u`` occurs the result has ``n + 1`` variables, ``u`` last.
    """
    used, has_u = variable_count(text)
    if n is None:
        n = used
    elif used > n:
        raise ValueError(f"polynomial uses t{used} but only {n} variables were declared")
    return _Parser(text, n, has_u).parse()


def parse_rational_list(text: str) -> list[Fraction]:
    """Comma-separated rationals, e.g. ``"0,1/2,-3"``."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ValueError(f"empty entry in {text!r}")
        out.append(Fraction(item))
    return out
