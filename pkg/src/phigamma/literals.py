"""Parser for coefficient and series literals.

Grammar (whitespace ignored)::

    expr   := [sign] term (sign term)*
    term   := factor ('*' factor)*
    factor := INT | 'g' ['^' INT] | 'pi' ['^' [sign] INT] | '(' expr ')'

A literal denotes a Laurent polynomial in ``pi`` whose coefficients are
integer polynomials in ``g``; it is returned as ``{(pi_exp, g_exp): int}``.
"""

from __future__ import annotations

import re

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|(pi)|(g)|(\*\*)|([-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[col]!r}", column=col + 1)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("pi", "pi", start))
        elif m.group(3):
            tokens.append(("g", "g", start))
        elif m.group(4):
            raise ParseError("'**' is not allowed; write exponents with '^'", column=start + 1)
        else:
            tokens.append(("op", m.group(5), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, column=tok[2] + 1)

    def expect_int(self) -> int:
        tok = self.take()
        if tok[0] != "int":
            self.fail("expected an integer", tok)
        return int(tok[1])

    def signed_int(self) -> int:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        return sign * self.expect_int()

    def expr(self) -> dict:
        result: dict = {}
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        _acc(result, self.term(), sign)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                _acc(result, self.term(), -1 if tok[1] == "-" else 1)
            else:
                break
        return result

    def term(self) -> dict:
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            value = _mul(value, self.factor())
        return value

    def factor(self) -> dict:
        tok = self.take()
        kind, text = tok[0], tok[1]
        if kind == "int":
            return {(0, 0): int(text)}
        if kind == "g":
            e = 1
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                self.take()
                e = self.expect_int()
            return {(0, e): 1}
        if kind == "pi":
            e = 1
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                self.take()
                e = self.signed_int()
            return {(e, 0): 1}
        if kind == "op" and text == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        self.fail(f"unexpected {text!r}" if text else "unexpected end of input", tok)

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            self.fail("empty literal")
        out = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return {k: v for k, v in out.items() if v}


def _acc(target: dict, src: dict, sign: int) -> None:
    for k, v in src.items():
        target[k] = target.get(k, 0) + sign * v


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (pa, ga), va in a.items():
        for (pb, gb), vb in b.items():
            key = (pa + pb, ga + gb)
            out[key] = out.get(key, 0) + va * vb
    return out


def parse_literal(text: str) -> dict[tuple[int, int], int]:
    """Parse a series literal into ``{(pi_exp, g_exp): coefficient}``."""
    return _Parser(text).parse()


def parse_gpoly(text: str) -> list[int]:
    """Parse a polynomial in ``g`` (no ``pi`` allowed); lowest degree first."""
    terms = parse_literal(text)
    if any(pe != 0 for pe, _ in terms):
        raise ParseError(f"coefficient literal {text!r} must not contain pi")
    deg = max((ge for _, ge in terms), default=0)
    out = [0] * (deg + 1)
    for (_, ge), v in terms.items():
        out[ge] += v
    return out
