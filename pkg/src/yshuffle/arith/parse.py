"""Recursive-descent parser for the expression grammar.

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' ['-'] int)?
    atom   := rational | 'h' | 'l(' vertex ',' slot ')' | 'x(' vertex ',' power ')' | '(' expr ')'

Parsing produces a small AST; evaluators turn it into a Polynomial, a
RationalFunction (negative powers allowed) or, in :mod:`yshuffle.shuffle`,
a shuffle-algebra element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Union

from .polynomial import Polynomial
from .rational import RationalFunction


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Hbar:
    pass


@dataclass(frozen=True)
class Slot:
    vertex: int
    slot: int


@dataclass(frozen=True)
class Gen:
    vertex: int
    power: int


@dataclass(frozen=True)
class Add:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


Node = Union[Num, Hbar, Slot, Gen, Add, Mul, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z]+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            out.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            if m.group(3).isspace():
                pos = m.end()
                continue
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, allow_negative_powers: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_negative_powers = allow_negative_powers

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, self.peek()[2] if pos is None else pos, self.text)

    def expect(self, op: str) -> None:
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            shown = val or "end of input"
            raise self.error(f"expected '{op}' but found '{shown}'")
        self.take()

    def integer(self) -> int:
        kind, val, pos = self.peek()
        if kind != "int":
            raise self.error(f"expected an integer but found '{val or 'end of input'}'")
        self.take()
        return int(val)

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected '{self.peek()[1]}'")
        return node

    def expr(self) -> Node:
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            sign = -1
        terms.append((sign, self.term()))
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                terms.append((1 if val == "+" else -1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Add(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            neg = False
            kind, val, pos = self.peek()
            if kind == "op" and val == "-":
                if not self.allow_negative_powers:
                    raise self.error("negative exponents are only allowed in pairing expressions")
                self.take()
                neg = True
            e = self.integer()
            return Pow(base, -e if neg else e)
        return base

    def atom(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            num = int(val)
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                den = self.integer()
                if den == 0:
                    raise self.error("zero denominator", pos)
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if kind == "name":
            self.take()
            if val == "h":
                return Hbar()
            if val in ("l", "x"):
                self.expect("(")
                a = self.integer()
                self.expect(",")
                b = self.integer()
                self.expect(")")
                if val == "l":
                    if b < 1:
                        raise ParseError("slot index must be >= 1", pos, self.text)
                    return Slot(a, b)
                return Gen(a, b)
            raise ParseError(f"unknown name '{val}'", pos, self.text)
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        raise self.error(f"unexpected '{val or 'end of input'}'")


def parse_expression(text: str, *, allow_negative_powers: bool = False) -> Node:
    return _Parser(text, allow_negative_powers).parse()


def walk(node: Node) -> Iterable[Node]:
    yield node
    if isinstance(node, Add):
        for _, t in node.terms:
            yield from walk(t)
    elif isinstance(node, Mul):
        for f in node.factors:
            yield from walk(f)
    elif isinstance(node, Pow):
        yield from walk(node.base)


def evaluate(node: Node, leaf: Callable[[Node], object], power: Callable[[object, int], object] | None = None):
    """Fold the AST with ``leaf`` for atoms and the value type's own + - * operators."""
    if isinstance(node, Add):
        acc = None
        for sign, t in node.terms:
            v = evaluate(t, leaf, power)
            if sign < 0:
                v = -v
            acc = v if acc is None else acc + v
        return acc
    if isinstance(node, Mul):
        acc = evaluate(node.factors[0], leaf, power)
        for f in node.factors[1:]:
            acc = acc * evaluate(f, leaf, power)
        return acc
    if isinstance(node, Pow):
        base = evaluate(node.base, leaf, power)
        if power is not None:
            return power(base, node.exponent)
        return base**node.exponent
    return leaf(node)


def _check_vertex(vertex: int, vertices) -> None:
    if vertices is not None and vertex not in vertices:
        raise ValueError(f"unknown vertex id {vertex}")


def _poly_leaf(vertices):
    def leaf(node):
        if isinstance(node, Num):
            return Polynomial.const(node.value)
        if isinstance(node, Hbar):
            return Polynomial.hbar()
        if isinstance(node, Slot):
            _check_vertex(node.vertex, vertices)
            return Polynomial.slot(node.vertex, node.slot)
        raise ValueError("generator literals x(k,r) are not polynomials; use an element context")

    return leaf


def parse_polynomial(text: str, vertices: Iterable[int] | None = None) -> Polynomial:
    """Parse an expression into a Polynomial; ``vertices`` restricts the vertex ids."""
    vs = None if vertices is None else set(vertices)
    return evaluate(parse_expression(text), _poly_leaf(vs))


def parse_rational(text: str, vertices: Iterable[int] | None = None) -> RationalFunction:
    """Like parse_polynomial, but negative powers of linear factors are allowed."""
    vs = None if vertices is None else set(vertices)
    poly_leaf = _poly_leaf(vs)

    def leaf(node):
        return RationalFunction(poly_leaf(node))

    def power(base: RationalFunction, e: int) -> RationalFunction:
        if e >= 0:
            return base**e
        b = base.normalize()
        if b.den or b.num.degree() > 1:
            raise ValueError("negative powers are supported only for linear factors")
        if b.num.is_zero():
            raise ZeroDivisionError("negative power of zero")
        inv = RationalFunction.inverse_of(b.num)
        return inv ** (-e)

    return evaluate(parse_expression(text, allow_negative_powers=True), leaf, power)
