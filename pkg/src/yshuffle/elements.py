"""Shuffle elements from text: generator expressions and element files."""

from __future__ import annotations

import json
from typing import Mapping, Sequence

from .arith.parse import Gen, Hbar, Num, ParseError, Slot, evaluate, parse_expression, parse_polynomial
from .arith.polynomial import Polynomial
from .quiver import DimensionVector, Quiver
from .shuffle import ShuffleElement, shuffle_mul


class _Value:
    """Wrapper so the generic AST fold uses the shuffle product for '*'."""

    __slots__ = ("e", "q")

    def __init__(self, e: ShuffleElement, q: Quiver):
        self.e = e
        self.q = q

    def __add__(self, other):
        return _Value(self.e + other.e, self.q)

    def __neg__(self):
        return _Value(-self.e, self.q)

    def __mul__(self, other):
        return _Value(shuffle_mul(self.e, other.e, self.q), self.q)


def _power(base: _Value, e: int) -> _Value:
    if e < 0:
        raise ValueError("negative powers are not allowed for shuffle elements")
    out = _Value(ShuffleElement.unit(), base.q)
    for _ in range(e):
        out = out * base
    return out


def parse_element(text: str, q: Quiver, weight: Mapping[int, int] | None = None) -> ShuffleElement:
    """Evaluate an element expression.

    Without ``weight``: x(k,r) is the generator at weight e_k, '*' is the shuffle
    product and numbers and h are weight-0 scalars.  With ``weight``: the text is
    a polynomial in l(k,s) and h, which must be symmetric at that weight.
    """
    if weight is not None:
        poly = parse_polynomial(text, q.vertices)
        return ShuffleElement(weight, poly)
    vertices = set(q.vertices)

    def leaf(node):
        if isinstance(node, Num):
            return _Value(ShuffleElement(DimensionVector(), Polynomial.const(node.value), check=False), q)
        if isinstance(node, Hbar):
            return _Value(ShuffleElement(DimensionVector(), Polynomial.hbar(), check=False), q)
        if isinstance(node, Gen):
            if node.vertex not in vertices:
                raise ValueError(f"unknown vertex id {node.vertex}")
            return _Value(ShuffleElement.generator(node.vertex, node.power), q)
        if isinstance(node, Slot):
            raise ValueError("slot variables l(k,s) need an explicit weight")
        raise ValueError(f"unexpected node {node!r}")

    return evaluate(parse_expression(text), leaf, _power).e


def parse_element_file(path: str, vertices: Sequence[int] | None = None) -> list[tuple[DimensionVector, Polynomial]]:
    """Read a JSON array of {"weight": [ints], "poly": expr}.

    ``weight`` lists multiplicities in vertex order (vertex ids 0, 1, ... when
    ``vertices`` is not given).  Polynomials are checked for symmetry.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if not text.strip():
        return []
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, list):
        raise ValueError(f"{path}: expected a JSON array of elements")
    out = []
    for n, item in enumerate(doc):
        if not isinstance(item, dict) or "weight" not in item or "poly" not in item:
            raise ValueError(f"{path}: element {n} needs 'weight' and 'poly'")
        w = item["weight"]
        if not isinstance(w, list) or any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in w):
            raise ValueError(f"{path}: element {n} has a malformed weight {w!r}")
        vs = list(vertices) if vertices is not None else list(range(len(w)))
        if len(vs) != len(w):
            raise ValueError(f"{path}: element {n} weight has {len(w)} entries for {len(vs)} vertices")
        weight = DimensionVector.from_list(w, vs)
        try:
            poly = parse_polynomial(item["poly"], vs)
        except ParseError as exc:
            raise ValueError(f"{path}: element {n}: {exc}") from exc
        try:
            ShuffleElement(weight, poly)
        except ValueError as exc:
            raise ValueError(f"{path}: element {n}: {exc}") from exc
        out.append((weight, poly))
    return out


def dump_element_file(elements: Sequence[tuple[Mapping[int, int], Polynomial]], vertices: Sequence[int]) -> str:
    from .arith.polynomial import format_polynomial

    doc = [{"weight": DimensionVector(w).to_list(vertices), "poly": format_polynomial(p)} for w, p in elements]
    return json.dumps(doc, indent=2)
