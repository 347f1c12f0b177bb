"""Residue pairings at the levels where they are fully determined.

* rank one: (f, g) = Res_{x=inf} f(x) g(-x) dx for f, g at the same weight e_k;
* Cartan series: (H_k(u), H_k(w)) = fac(u|w) / fac(w|u), expanded for |u| >> |w|;
* the kernel fac(x_v) of the general-weight pairing (exposed, experimental).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith.polynomial import HBAR, Polynomial, Variable, slot
from .arith.rational import RationalFunction
from .arith.series import INFINITY, COEFFICIENT, expand_two, residue_at
from .quiver import DimensionVector, Quiver
from .shuffle import HALF, _form, fac_factors


@dataclass(frozen=True)
class RankOneElement:
    vertex: int
    value: RationalFunction

    def __post_init__(self) -> None:
        x = slot(self.vertex, 1)
        for v in self.value.variables():
            if v != HBAR and v != x:
                raise ValueError(f"rank-one element at vertex {self.vertex} may only use {x} and h, found {v}")

    @classmethod
    def power(cls, vertex: int, r: int) -> "RankOneElement":
        """lambda^r, negative r allowed (adele extension)."""
        x = Polynomial.slot(vertex, 1)
        if r >= 0:
            return cls(vertex, RationalFunction(x**r))
        return cls(vertex, RationalFunction.inverse_of(x) ** (-r))

    @property
    def variable(self) -> Variable:
        return slot(self.vertex, 1)


def pair_rank_one(f: RankOneElement, g: RankOneElement, convention: str = COEFFICIENT) -> RationalFunction:
    """Res_{x=inf}(f(x) g(-x) dx); zero across different vertices."""
    if f.vertex != g.vertex:
        return RationalFunction(0)
    x = f.variable
    integrand = f.value * g.value.scale_variable(x, -1)
    return residue_at(integrand, x, INFINITY, convention)


def cartan_variables(k: int) -> tuple[Variable, Variable]:
    """u and w are the first and second slot of weight 2 e_k."""
    return slot(k, 1), slot(k, 2)


def cartan_ratio(k: int, q: Quiver, *, swapped: bool = False) -> RationalFunction:
    """fac(u|w) / fac(w|u) with u = l(k,1), w = l(k,2); ``swapped`` exchanges u and w."""
    if q.directed_count(k, k):
        raise ValueError(f"vertex {k} carries an edge loop")
    e = DimensionVector.unit(k)
    num, den, arrows = fac_factors(e, e, q)
    u, w = cartan_variables(k)
    swap = {u: w, w: u}
    num_sw = [p.relabel(swap) for p in num + arrows]
    den_sw = [p.relabel(swap) for p in den]
    top = Polynomial.const(1)
    for p in num + arrows + den_sw:
        top = top * p
    ratio = RationalFunction.from_factors(top, den + num_sw).normalize()
    return ratio.relabel(swap) if swapped else ratio


def pair_cartan_series(k: int, q: Quiver, orders: tuple[int, int]) -> dict[tuple[int, int], RationalFunction]:
    """Coefficient table {(i, j): c} of c * u^(-i) * w^j, expanded for |u| >> |w|."""
    u, w = cartan_variables(k)
    return expand_two(cartan_ratio(k, q), u, w, orders)


def swap_product_table(k: int, q: Quiver, orders: tuple[int, int]) -> dict[tuple[int, int], RationalFunction]:
    """Series of ratio(u, w) * ratio(w, u), multiplied as truncated series (should be the constant 1)."""
    u, w = cartan_variables(k)
    a = expand_two(cartan_ratio(k, q), u, w, orders)
    b = expand_two(cartan_ratio(k, q, swapped=True), u, w, orders)
    m_order, n_order = orders
    out: dict[tuple[int, int], RationalFunction] = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            i, j = i1 + i2, j1 + j2
            if i > m_order or j > n_order:
                continue
            out[(i, j)] = out[(i, j)] + c1 * c2 if (i, j) in out else c1 * c2
    return {key: c.normalize() for key, c in out.items() if not c.normalize().is_zero()}


def pairing_kernel(v, q: Quiver) -> RationalFunction:
    """fac(x_v) of the general-weight pairing, all primes identified with x_v.

    Experimental: the surrounding residue sum over P^1 for |v| > 1 is not
    implemented.  The 1/prod(v_i!) normalization is not included.
    """
    v = v if isinstance(v, DimensionVector) else DimensionVector(v)
    nums: list[Polynomial] = []
    dens: list[Polynomial] = []
    for i, n in v.items():
        for s in range(1, n + 1):
            for t in range(1, n + 1):
                if s != t:
                    nums.append(_form([(i, s, 1), (i, t, -1)], 1))
                    dens.append(_form([(i, t, 1), (i, s, -1)], 0))
    for h in q.arrows:
        o, n = h.out, h.inc
        for s in range(1, v.get(o, 0) + 1):
            for t in range(1, v.get(n, 0) + 1):
                nums.append(_form([(n, t, 1), (o, s, -1)], h.m * HALF))
        for s in range(1, v.get(n, 0) + 1):
            for t in range(1, v.get(o, 0) + 1):
                nums.append(_form([(o, t, 1), (n, s, -1)], h.m_star * HALF))
    top = Polynomial.const(1)
    for p in nums:
        top = top * p
    return RationalFunction.from_factors(top, dens)
