"""Recursive-descent parser for polynomial expressions in ``x, y, z``.

Grammar (whitespace is ignored, multiplication must be written)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := rational | var | param | '(' expr ')' | '-' factor

``rational`` is ``digits`` or ``digits/digits``; ``var`` is one of ``x, y, z``;
``param`` is any other single ASCII letter and must be bound to a rational
before evaluation.  Unary minus binds looser than ``^``, so ``-x^2`` is
``-(x^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Union

from .forms import HomForm, as_rational

VARIABLES = ("x", "y", "z")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"syntax error at offset {offset}: {message}")
        self.offset = offset


class PolynomialValueError(ValueError):
    """Raised when a parsed expression cannot become the requested form."""


# AST nodes


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Param, Neg, BinOp, Pow]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _fail(self, message: str):
        raise PolynomialSyntaxError(message, self.pos)

    def _uint(self) -> str:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self._fail("expected an unsigned integer")
        return self.text[start:self.pos]

    def parse(self) -> Expr:
        node = self.expr()
        if self._peek():
            ch = self._peek()
            if ch.isalpha() or ch.isdigit() or ch == "(":
                self._fail(f"unexpected {ch!r} (multiplication must be explicit)")
            if ch not in "+-*/^()":
                self._fail(f"unknown character {ch!r}")
            self._fail(f"unexpected {ch!r}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self._peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self._peek() == "*":
            self.pos += 1
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.base()
        if self._peek() == "^":
            self.pos += 1
            node = Pow(node, int(self._uint()))
        return node

    def base(self) -> Expr:
        ch = self._peek()
        if not ch:
            self._fail("unexpected end of input")
        if ch == "-":
            self.pos += 1
            return Neg(self.factor())
        if ch == "(":
            self.pos += 1
            node = self.expr()
            if self._peek() != ")":
                self._fail("expected ')'")
            self.pos += 1
            return node
        if ch.isdigit():
            num = self._uint()
            if self.pos < len(self.text) and self.text[self.pos] == "/":
                self.pos += 1
                if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                    self._fail("expected a denominator")
                den = self._uint()
                if int(den) == 0:
                    self._fail("zero denominator")
                return Num(Fraction(int(num), int(den)))
            return Num(Fraction(int(num)))
        if ch.isascii() and ch.isalpha():
            self.pos += 1
            return Var(ch) if ch in VARIABLES else Param(ch)
        if ch in "+*^)/":
            self._fail(f"unexpected {ch!r}")
        self._fail(f"unknown character {ch!r}")


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree; raises :class:`PolynomialSyntaxError`."""
    return _Parser(text).parse()


# evaluation: sparse dicts keyed by (i, j, k) exponent triples

Poly = Dict[Tuple[int, int, int], Fraction]


def _add(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for (i, j, k), c in a.items():
        for (p, q, r), e in b.items():
            key = (i + p, j + q, k + r)
            v = out.get(key, 0) + c * e
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def expand(node: Expr, bindings: Mapping[str, Fraction]) -> Poly:
    if isinstance(node, Num):
        return {(0, 0, 0): node.value} if node.value else {}
    if isinstance(node, Var):
        return {tuple(int(v == node.name) for v in VARIABLES): Fraction(1)}
    if isinstance(node, Param):
        if node.name not in bindings:
            raise PolynomialValueError(f"unbound parameter {node.name}")
        value = as_rational(bindings[node.name])
        return {(0, 0, 0): value} if value else {}
    if isinstance(node, Neg):
        return {m: -c for m, c in expand(node.operand, bindings).items()}
    if isinstance(node, Pow):
        base = expand(node.base, bindings)
        out: Poly = {(0, 0, 0): Fraction(1)}
        for _ in range(node.exponent):
            out = _mul(out, base)
        return out
    left = expand(node.left, bindings)
    right = expand(node.right, bindings)
    if node.op == "+":
        return _add(left, right)
    if node.op == "-":
        return _add(left, right, -1)
    return _mul(left, right)


def evaluate(
    ast: Expr,
    bindings: Optional[Mapping[str, Fraction]] = None,
    expected_degree: Optional[int] = None,
) -> HomForm:
    """Expand ``ast`` into a :class:`HomForm`, enforcing homogeneity.

    A polynomial that expands to zero is accepted and returned as the zero
    form of ``expected_degree`` (or degree 0 when no degree is expected).
    """
    poly = expand(ast, bindings or {})
    degrees = sorted({sum(m) for m in poly})
    if len(degrees) > 1:
        raise PolynomialValueError(
            "inhomogeneous: degree mix {" + ", ".join(map(str, degrees)) + "}"
        )
    if not degrees:
        return HomForm.zero(expected_degree or 0)
    d = degrees[0]
    if expected_degree is not None and d != expected_degree:
        raise PolynomialValueError(f"degree mismatch: got {d}, expected {expected_degree}")
    return HomForm(d, {(i, j): c for (i, j, _), c in poly.items()})


def parse_form(
    text: str,
    degree: Optional[int] = None,
    params: Optional[Mapping[str, Fraction]] = None,
) -> HomForm:
    """``evaluate(parse(text), params, degree)`` in one call."""
    return evaluate(parse(text), params, degree)
