"""Expression grammar for polynomials, forms and currents in case files.

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/" | "^") unary)*      "^" not followed by an integer is a wedge
    unary   := "-" unary | power
    power   := atom ("^" INT)*
    atom    := NUMBER | IDENT | "(" expr ")"
             | "bar(" IDENT ")" | "d(" IDENT ")" | "dbar(" IDENT ")"
             | "pv(1/" IDENT ["^" INT] ")" | "res(1/" IDENT ["^" INT] ")"
             | "delbar(" expr ")"

``dbar(x)`` is the one-form generator; ``delbar(...)`` applies the
operator to an expression; ``res(1/x^a)`` is the residue factor.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .curralg import CurrentSum, dbar
from .errors import CaseParseError
from .symalg import ONE, Form, Poly, RatFun, conj, dz, dzbar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")
_FUNCS = {"bar", "d", "dbar", "pv", "res", "delbar"}


@dataclass
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(src: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("int", m.group(1), start))
        elif m.group(2):
            out.append(Token("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise CaseParseError(f"unexpected character {ch!r}", 1, start + 1)
            out.append(Token("op", ch, start))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, variables: Sequence[str]):
        self.src = src
        self.vars = {v: i for i, v in enumerate(variables)}
        self.toks = tokenize(src)
        self.i = 0

    # helpers
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise CaseParseError(msg, 1, tok.pos + 1)

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text or t.kind not in ("op", "int"):
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}", t)
        return t

    def variable(self) -> int:
        t = self.next()
        if t.kind != "name" or t.text not in self.vars:
            self.error(f"unknown variable {t.text!r}", t)
        return self.vars[t.text]

    def integer(self) -> int:
        t = self.next()
        if t.kind != "int":
            self.error(f"expected an integer, found {t.text or 'end of input'!r}", t)
        return int(t.text)

    # grammar
    def parse(self) -> CurrentSum:
        c = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return c

    def expr(self) -> CurrentSum:
        acc = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.next().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> CurrentSum:
        acc = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/", "^"):
            op = self.next()
            rhs = self.unary()
            if op.text == "/":
                acc = acc * CurrentSum.lift(self._reciprocal(rhs, op))
            else:
                acc = acc * rhs
        return acc

    def _reciprocal(self, c: CurrentSum, tok: Token) -> RatFun:
        if not c.is_smooth() or any(k != (0, (), (), ()) for k in c.terms):
            self.error("can only divide by a function", tok)
        if c.is_zero():
            self.error("division by zero", tok)
        r = c.terms[(0, (), (), ())]
        return RatFun(r.den, r.num)

    def unary(self) -> CurrentSum:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.next()
            return -self.unary()
        if self.peek().kind == "op" and self.peek().text == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> CurrentSum:
        base = self.atom()
        while self.peek().text == "^" and self.peek(1).kind == "int":
            self.next()
            n = int(self.next().text)
            out = CurrentSum.lift(ONE)
            for _ in range(n):
                out = out * base
            base = out
        return base

    def atom(self) -> CurrentSum:
        t = self.next()
        if t.kind == "int":
            return CurrentSum.lift(Fraction(int(t.text)))
        if t.kind == "op" and t.text == "(":
            c = self.expr()
            self.expect(")")
            return c
        if t.kind == "name":
            if t.text in _FUNCS and self.peek().text == "(":
                return self.func(t)
            if t.text in self.vars:
                return CurrentSum.lift(Poly.var(self.vars[t.text]))
            self.error(f"unknown identifier {t.text!r}", t)
        self.error(f"unexpected {t.text or 'end of input'!r}", t)

    def func(self, t: Token) -> CurrentSum:
        self.expect("(")
        name = t.text
        if name == "delbar":
            c = self.expr()
            self.expect(")")
            return dbar(c)
        if name in ("pv", "res"):
            one = self.next()
            if one.text != "1":
                self.error("expected 1/<variable>", one)
            self.expect("/")
            v = self.variable()
            e = 1
            if self.peek().text == "^":
                self.next()
                e = self.integer()
                if e < 1:
                    self.error("exponent must be positive")
            self.expect(")")
            return CurrentSum.pv_atom(v, e) if name == "pv" else CurrentSum.res_atom(v, e)
        v = self.variable()
        self.expect(")")
        if name == "bar":
            return CurrentSum.lift(Poly.gen(conj(v)))
        if name == "d":
            return CurrentSum.from_form(Form.gen(dz(v)))
        return CurrentSum.from_form(Form.gen(dzbar(v)))


def parse_current(src: str, variables: Sequence[str]) -> CurrentSum:
    return _Parser(src, variables).parse()


def parse_poly(src: str, variables: Sequence[str], *, holomorphic: bool = False) -> Poly:
    c = parse_current(src, variables)
    if not c.is_smooth() or any(k != (0, (), (), ()) for k in c.terms):
        raise CaseParseError(f"{src!r} is not a polynomial")
    if c.is_zero():
        return Poly()
    r = c.terms[(0, (), (), ())]
    if not r.is_poly():
        raise CaseParseError(f"{src!r} is not a polynomial")
    if holomorphic and not r.num.is_holomorphic():
        raise CaseParseError(f"{src!r} involves conjugate variables")
    return r.num


def parse_form(src: str, variables: Sequence[str]) -> Form:
    c = parse_current(src, variables)
    try:
        return c.to_form()
    except ValueError:
        raise CaseParseError(f"{src!r} is not a smooth form") from None
