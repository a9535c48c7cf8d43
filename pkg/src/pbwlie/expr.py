"""Expression language for the command line.

Grammar (whitespace insensitive)::

    sum     := product (('+' | '-') product)*
    product := unary ('*' unary)*
    unary   := '-' unary | atom
    atom    := GEN | RATIONAL | '[' sum ',' sum ']' | ('exp' | 'log') '(' sum ';' INT ')' | '(' sum ')'

Generators are ``X<digits>``; rationals are ``p`` or ``p/q``.  Both output
formats (:func:`pbwlie.freeassoc.to_text` and :func:`pbwlie.freelie.lie_text`)
parse back to the same element.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .errors import ExpressionSyntaxError, TruncationMissing, UnknownGenerator
from .freeassoc import NcPolynomial, commutator, nc_mul, truncated_exp, truncated_log


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Sum:
    left: "Expr"
    right: "Expr"
    sign: int  # +1 or -1


@dataclass(frozen=True)
class Prod:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str  # "exp" or "log"
    arg: "Expr"
    order: int


Expr = Union[Gen, Num, Neg, Sum, Prod, Bracket, Call]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*\[\],;()])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def _line_col(text: str, pos: int) -> Tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _error(text: str, pos: int, msg: str) -> ExpressionSyntaxError:
    line, col = _line_col(text, pos)
    return ExpressionSyntaxError(msg, line, col)


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.take()
        if t.text != text:
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise _error(self.text, t.pos, f"expected {text!r}, found {found}")
        return t

    def parse(self) -> Expr:
        e = self.sum()
        t = self.peek()
        if t.kind != "end":
            raise _error(self.text, t.pos, f"unexpected {t.text!r}")
        return e

    def sum(self) -> Expr:
        e = self.product()
        while self.peek().text in ("+", "-"):
            sign = 1 if self.take().text == "+" else -1
            e = Sum(e, self.product(), sign)
        return e

    def product(self) -> Expr:
        e = self.unary()
        while self.peek().text == "*":
            self.take()
            e = Prod(e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.peek().text == "-":
            self.take()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        t = self.take()
        if t.kind == "num":
            return Num(Fraction(t.text))
        if t.kind == "name":
            if t.text in ("exp", "log"):
                return self.call(t)
            m = re.fullmatch(r"X([1-9]\d*)", t.text)
            if not m:
                line, col = _line_col(self.text, t.pos)
                raise UnknownGenerator(f"unknown generator {t.text!r}; expected X1, X2, ...", line, col)
            return Gen(int(m.group(1)))
        if t.text == "[":
            a = self.sum()
            self.expect(",")
            b = self.sum()
            self.expect("]")
            return Bracket(a, b)
        if t.text == "(":
            e = self.sum()
            self.expect(")")
            return e
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise _error(self.text, t.pos, f"unexpected {found}")

    def call(self, name: Token) -> Expr:
        self.expect("(")
        arg = self.sum()
        t = self.take()
        if t.text == ")":
            line, col = _line_col(self.text, name.pos)
            raise TruncationMissing(f"{name.text} needs a truncation order, e.g. {name.text}(a;4)", line, col)
        if t.text != ";":
            raise _error(self.text, t.pos, "expected ';'")
        n = self.take()
        if n.kind != "num" or "/" in n.text:
            raise _error(self.text, n.pos, "truncation order must be a non-negative integer")
        self.expect(")")
        return Call(name.text, arg, int(n.text))


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def evaluate(e: Expr) -> NcPolynomial:
    """Interpret an expression in the free associative algebra."""
    if isinstance(e, Gen):
        return NcPolynomial.gen(e.index)
    if isinstance(e, Num):
        return NcPolynomial.one().scale(e.value)
    if isinstance(e, Neg):
        return -evaluate(e.arg)
    if isinstance(e, Sum):
        a, b = evaluate(e.left), evaluate(e.right)
        return a + b if e.sign > 0 else a - b
    if isinstance(e, Prod):
        return nc_mul(evaluate(e.left), evaluate(e.right))
    if isinstance(e, Bracket):
        return commutator(evaluate(e.left), evaluate(e.right))
    if isinstance(e, Call):
        arg = evaluate(e.arg)
        if e.name == "exp":
            return truncated_exp(arg, e.order)
        return truncated_log(arg, e.order)
    raise TypeError(f"not an expression node: {e!r}")


def evaluate_text(text: str) -> NcPolynomial:
    return evaluate(parse(text))
