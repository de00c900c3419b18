"""Expressions over a preset algebra: tokenizer, recursive-descent parser,
printer and evaluator.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' ['-'] int)?
    atom   := generator | rational | 'q' | '(' expr ')'

Generators are ``z<k>``, ``zs<k>`` (starred), ``w<k>``, ``ws<k>`` and
``O<k>`` (Omega).  Whitespace is ignored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .coeff import LaurentPoly, format_rational
from .errors import DomainError, ParseError
from .ncalg import AlgebraPreset, NCElement, multiply, omega, power


@dataclass(frozen=True)
class Scalar:
    value: LaurentPoly


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Power:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Product:
    factors: Tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]  # (sign, node)


Node = Union[Scalar, Gen, Power, Product, Sum]

_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<rat>\d+\s*/\s*\d+)"
    r"|(?P<int>\d+)"
    r"|(?P<gen>(?:zs|ws|z|w|O)\d+)"
    r"|(?P<q>q)(?![A-Za-z0-9_])"
    r"|(?P<op>[-+*^()])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _where(text: str, pos: int) -> Tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _error(text: str, pos: int, msg: str) -> ParseError:
    line, col = _where(text, pos)
    return ParseError(f"line {line}, column {col}: {msg}", line, col)


def tokenize(text: str) -> List[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            word = re.match(r"[A-Za-z_]\w*", text[pos:])
            if word:
                raise _error(text, pos, f"unknown name {word.group(0)!r}")
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        kind = mt.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, mt.group(0), pos))
        pos = mt.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, op: str) -> bool:
        return self.cur.kind == "op" and self.cur.text == op

    def fail(self, msg: str):
        raise _error(self.text, self.cur.pos, msg)

    def parse(self) -> Node:
        node = self.expr()
        if self.cur.kind != "end":
            self.fail(f"unexpected {self.cur.text!r}")
        return node

    def expr(self) -> Node:
        terms = []
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        terms.append((sign, self.term()))
        while self.at("+") or self.at("-"):
            sign = 1 if self.take().text == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.at("*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        if self.at("^"):
            self.take()
            neg = False
            if self.at("-"):
                self.take()
                neg = True
            if self.cur.kind != "int":
                self.fail("expected an integer exponent")
            e = int(self.take().text)
            return Power(base, -e if neg else e)
        return base

    def atom(self) -> Node:
        t = self.cur
        if t.kind == "gen":
            self.take()
            return Gen(t.text)
        if t.kind == "q":
            self.take()
            return Scalar(LaurentPoly.q())
        if t.kind == "int":
            self.take()
            return Scalar(LaurentPoly(int(t.text)))
        if t.kind == "rat":
            self.take()
            num, den = (int(x) for x in t.text.split("/"))
            if den == 0:
                raise _error(self.text, t.pos, "zero denominator")
            return Scalar(LaurentPoly(Fraction(num, den)))
        if self.at("("):
            self.take()
            node = self.expr()
            if not self.at(")"):
                self.fail("expected ')'")
            self.take()
            return node
        if t.kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {t.text!r}")


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing


def _scalar_text(p: LaurentPoly) -> str:
    if p == LaurentPoly.q():
        return "q"
    if p.is_constant() and p.coefficient(0) >= 0:
        return format_rational(p.coefficient(0))
    return "(" + p.format() + ")"


def to_text(node: Node) -> str:
    if isinstance(node, Scalar):
        return _scalar_text(node.value)
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Power):
        b = to_text(node.base)
        if not isinstance(node.base, (Scalar, Gen)):
            b = f"({b})"
        return f"{b}^{node.exp}"
    if isinstance(node, Product):
        # a nested product keeps its parentheses so the tree survives reparsing
        return "*".join(f"({to_text(f)})" if isinstance(f, (Sum, Product)) else to_text(f) for f in node.factors)
    out = []
    for k, (sign, t) in enumerate(node.terms):
        s = to_text(t)
        if isinstance(t, Sum):
            s = f"({s})"
        if k == 0:
            out.append(s if sign > 0 else "-" + s)
        else:
            out.append((" + " if sign > 0 else " - ") + s)
    return "".join(out)


# ---------------------------------------------------------------------------
# evaluation


def evaluate(node: Node, algebra: AlgebraPreset, mode: Optional[int] = None) -> NCElement:
    if isinstance(node, Scalar):
        return NCElement.scalar(algebra, node.value, mode)
    if isinstance(node, Gen):
        if node.name.startswith("O"):
            return omega(algebra, int(node.name[1:]), mode)
        return NCElement.gen(algebra, node.name, mode)
    if isinstance(node, Power):
        if isinstance(node.base, Scalar) and node.exp < 0:
            v = node.base.value
            if v.is_zero():
                raise DomainError("zero raised to a negative power")
            if len(v.terms) != 1:
                raise DomainError(f"scalar {v.format()} is not invertible")
            return NCElement.scalar(algebra, v ** node.exp, mode)
        if isinstance(node.base, Gen) and node.exp < 0:
            name = node.base.name
            if name.startswith("O") or algebra.index(name) not in algebra.invertible:
                raise DomainError(f"{name} is not invertible in {algebra.label}")
        return power(evaluate(node.base, algebra, mode), node.exp)
    if isinstance(node, Product):
        out = evaluate(node.factors[0], algebra, mode)
        for f in node.factors[1:]:
            out = multiply(out, evaluate(f, algebra, mode))
        return out
    out = NCElement(algebra, {}, mode)
    for sign, t in node.terms:
        v = evaluate(t, algebra, mode)
        out = out + v if sign > 0 else out - v
    return out


def evaluate_text(text: str, algebra: AlgebraPreset, mode: Optional[int] = None) -> NCElement:
    return evaluate(parse_expression(text), algebra, mode)
