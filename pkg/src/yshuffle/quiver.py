"""Quivers, arrow weights, Cartan matrices and dimension vectors."""

from __future__ import annotations

import hashlib
import json
import os
import warnings
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence


class QuiverError(ValueError):
    pass


class PBWScopeWarning(UserWarning):
    """The quiver is representable but outside the range where the results are claimed."""


class DimensionVector(Mapping[int, int]):
    """Finitely supported map vertex -> nonnegative integer (zero entries dropped)."""

    __slots__ = ("_items", "_hash")

    def __init__(self, data: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = dict(data.items() if isinstance(data, Mapping) else data)
        for k, n in items.items():
            if not isinstance(n, int) or n < 0:
                raise ValueError(f"dimension vector entries must be nonnegative integers, got {n!r} at {k}")
        self._items = tuple(sorted((k, n) for k, n in items.items() if n))
        self._hash = hash(self._items)

    @classmethod
    def unit(cls, k: int) -> "DimensionVector":
        return cls({k: 1})

    @classmethod
    def from_list(cls, values: Sequence[int], vertices: Sequence[int]) -> "DimensionVector":
        if len(values) != len(vertices):
            raise ValueError(f"weight has {len(values)} entries but the quiver has {len(vertices)} vertices")
        return cls(dict(zip(vertices, values)))

    def __getitem__(self, k: int) -> int:
        for key, n in self._items:
            if key == k:
                return n
        return 0

    def get(self, k, default=0):
        v = self[k]
        return v if v else default

    def __iter__(self) -> Iterator[int]:
        return (k for k, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, DimensionVector):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self._items == DimensionVector(other)._items
        return NotImplemented

    def __add__(self, other: Mapping[int, int]) -> "DimensionVector":
        out = dict(self._items)
        for k, n in other.items():
            out[k] = out.get(k, 0) + n
        return DimensionVector(out)

    def __sub__(self, other: Mapping[int, int]) -> "DimensionVector":
        out = dict(self._items)
        for k, n in other.items():
            out[k] = out.get(k, 0) - n
        return DimensionVector(out)

    def scaled(self, c: int) -> "DimensionVector":
        return DimensionVector({k: c * n for k, n in self._items})

    def __le__(self, other: Mapping[int, int]) -> bool:
        return all(n <= other.get(k, 0) for k, n in self._items)

    def norm(self) -> int:
        return sum(n for _, n in self._items)

    def is_zero(self) -> bool:
        return not self._items

    def to_list(self, vertices: Sequence[int]) -> list[int]:
        return [self[k] for k in vertices]

    def __repr__(self) -> str:
        return f"DimensionVector({dict(self._items)})"

    def __str__(self) -> str:
        return "(" + ",".join(f"{k}:{n}" for k, n in self._items) + ")"


def sub_vectors(v: Mapping[int, int]) -> Iterator[DimensionVector]:
    """All dimension vectors w <= v, in lexicographic order."""
    keys = sorted(v)
    for combo in product(*(range(v[k] + 1) for k in keys)):
        yield DimensionVector(dict(zip(keys, combo)))


@dataclass(frozen=True)
class Arrow:
    out: int
    inc: int
    ordinal: int  # p, 1-based within the parallel class out -> inc
    class_size: int  # a

    @property
    def m(self) -> int:
        return self.class_size + 2 - 2 * self.ordinal

    @property
    def m_star(self) -> int:
        return -self.class_size + 2 * self.ordinal

    def is_loop(self) -> bool:
        return self.out == self.inc


class Quiver:
    """Vertices and arrows; parallel arrows are numbered within their class."""

    def __init__(self, vertices: Sequence[int], arrows: Iterable[tuple[int, int]], *, allow_loops: bool = False, name: str = ""):
        vertices = list(vertices)
        if len(set(vertices)) != len(vertices):
            raise QuiverError("duplicate vertex ids")
        for v in vertices:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise QuiverError(f"vertex ids must be nonnegative integers, got {v!r}")
        pairs = [(int(o), int(i)) for o, i in arrows]
        vset = set(vertices)
        for o, i in pairs:
            if o not in vset or i not in vset:
                raise QuiverError(f"arrow {o}->{i} uses an unknown vertex")
            if o == i and not allow_loops:
                raise QuiverError(f"edge loop at vertex {o}; set allow_loops to represent it")
        counts: dict[tuple[int, int], int] = {}
        for p in pairs:
            counts[p] = counts.get(p, 0) + 1
        seen: dict[tuple[int, int], int] = {}
        numbered = []
        for p in pairs:
            seen[p] = seen.get(p, 0) + 1
            numbered.append(Arrow(p[0], p[1], seen[p], counts[p]))
        self.vertices = vertices
        self.arrows = tuple(numbered)
        self.allow_loops = allow_loops
        self.name = name

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_cartan(
        cls,
        cartan: Sequence[Sequence[int]],
        vertices: Sequence[int] | None = None,
        orientation: Iterable[tuple[int, int]] | None = None,
        name: str = "",
    ) -> "Quiver":
        n = len(cartan)
        if any(len(row) != n for row in cartan):
            raise QuiverError("Cartan matrix must be square")
        vertices = list(range(n)) if vertices is None else list(vertices)
        if len(vertices) != n:
            raise QuiverError("vertex list does not match the Cartan matrix size")
        for a in range(n):
            if cartan[a][a] != 2:
                raise QuiverError(f"diagonal entry c[{a}][{a}] must be 2 (edge loops need an explicit arrow list)")
            for b in range(n):
                if cartan[a][b] != cartan[b][a]:
                    raise QuiverError("Cartan matrix is not symmetric")
                if a != b and cartan[a][b] > 0:
                    raise QuiverError(f"positive off-diagonal entry c[{a}][{b}]")
        if orientation is None:
            arrows = []
            for a in range(n):
                for b in range(a + 1, n):
                    arrows += [(vertices[a], vertices[b])] * (-cartan[a][b])
        else:
            arrows = [tuple(x) for x in orientation]
        q = cls(vertices, arrows, name=name)
        if q.cartan() != [list(r) for r in cartan]:
            raise QuiverError("orientation does not realize the Cartan matrix")
        return q

    @classmethod
    def from_dict(cls, doc: Mapping, name: str = "") -> "Quiver":
        if not isinstance(doc, Mapping) or "vertices" not in doc:
            raise QuiverError("quiver document needs a 'vertices' list")
        vertices = doc["vertices"]
        if not isinstance(vertices, list):
            raise QuiverError("'vertices' must be a list")
        allow_loops = bool(doc.get("allow_loops", False))
        name = doc.get("name", name)
        if "arrows" in doc:
            arrows = []
            for a in doc["arrows"]:
                try:
                    arrows.append((a["out"], a["inc"]))
                except (KeyError, TypeError) as exc:
                    raise QuiverError(f"malformed arrow {a!r}") from exc
            q = cls(vertices, arrows, allow_loops=allow_loops, name=name)
            if "cartan" in doc and q.cartan() != doc["cartan"]:
                raise QuiverError("arrow list does not realize the given Cartan matrix")
            return q
        if "cartan" in doc:
            return cls.from_cartan(doc["cartan"], vertices, name=name)
        raise QuiverError("quiver document needs 'cartan' or 'arrows'")

    @classmethod
    def load(cls, path: str) -> "Quiver":
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        return cls.from_dict(doc, name=os.path.splitext(os.path.basename(path))[0])

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"out": a.out, "inc": a.inc} for a in self.arrows],
            "allow_loops": self.allow_loops,
        }

    def fingerprint(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]

    # -- data -----------------------------------------------------------
    def index(self, vertex: int) -> int:
        return self.vertices.index(vertex)

    def directed_count(self, i: int, j: int) -> int:
        """Number of arrows i -> j."""
        return sum(1 for a in self.arrows if a.out == i and a.inc == j)

    def cartan(self) -> list[list[int]]:
        n = len(self.vertices)
        c = [[0] * n for _ in range(n)]
        for a_i, i in enumerate(self.vertices):
            for a_j, j in enumerate(self.vertices):
                if i == j:
                    c[a_i][a_j] = 2 - 2 * self.directed_count(i, i)
                else:
                    c[a_i][a_j] = -(self.directed_count(i, j) + self.directed_count(j, i))
        return c

    def c(self, i: int, j: int) -> int:
        return self.cartan()[self.index(i)][self.index(j)]

    def has_loops(self) -> bool:
        return any(a.is_loop() for a in self.arrows)

    def is_affine_a1(self) -> bool:
        return len(self.vertices) == 2 and self.cartan() == [[2, -2], [-2, 2]]

    def scope_warnings(self) -> list[str]:
        out = []
        if self.has_loops():
            out.append("quiver has edge loops; no verified claim covers it")
        if self.is_affine_a1():
            out.append("type A1^(1) is excluded from the PBW statement")
        return out

    def warn_scope(self) -> None:
        for msg in self.scope_warnings():
            warnings.warn(msg, PBWScopeWarning, stacklevel=2)

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.c(i, j) != 0

    def weight(self, values: Sequence[int]) -> DimensionVector:
        return DimensionVector.from_list(values, self.vertices)

    def euler_shift(self, v1: Mapping[int, int], v2: Mapping[int, int]) -> int:
        """Degree of the polynomial part of fac(v1, v2)."""
        return sum(v1.get(a.out, 0) * v2.get(a.inc, 0) + v1.get(a.inc, 0) * v2.get(a.out, 0) for a in self.arrows)

    def h_degree(self, v: Mapping[int, int]) -> int:
        return sum(v.get(a.out, 0) * v.get(a.inc, 0) for a in self.arrows)

    def __repr__(self) -> str:
        arrows = ", ".join(f"{a.out}->{a.inc}" for a in self.arrows)
        return f"Quiver({self.name or 'unnamed'}: vertices={self.vertices}, arrows=[{arrows}])"


def arrow_weights(q: Quiver) -> list[tuple[Arrow, int, int]]:
    """(arrow, m_h, m_h*) for every arrow."""
    return [(a, a.m, a.m_star) for a in q.arrows]


# -- affine bookkeeping ------------------------------------------------


def delta_vector(cartan: Sequence[Sequence[int]]) -> list[int]:
    """Primitive positive integer kernel vector of an affine Cartan matrix."""
    import sympy

    m = sympy.Matrix(cartan)
    kernel = m.nullspace()
    if len(kernel) != 1:
        raise QuiverError(f"Cartan matrix has corank {len(kernel)}, expected 1")
    vec = kernel[0]
    den = sympy.ilcm(*[sympy.fraction(sympy.nsimplify(x))[1] for x in vec])
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = sympy.igcd(g, x)
    ints = [x // int(g) for x in ints]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if not all(x > 0 for x in ints):
        raise QuiverError("kernel vector is not strictly positive; matrix is not of affine type")
    return ints


def is_positive_definite(cartan: Sequence[Sequence[int]]) -> bool:
    n = len(cartan)
    if n == 0:
        return True
    import sympy

    m = sympy.Matrix(cartan)
    return all(m[:k, :k].det() > 0 for k in range(1, n + 1))


def finite_positive_roots(cartan: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Positive roots of a finite-type Cartan matrix by root-string closure.

    Roots are coefficient tuples in the simple roots, sorted by height then
    lexicographically.
    """
    n = len(cartan)
    if not is_positive_definite(cartan):
        raise QuiverError("Cartan submatrix is not of finite type")
    simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = set(simples)
    layer = list(simples)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # pairing <beta, alpha_i^vee> for a symmetrizable matrix in row convention
                pair = sum(beta[j] * cartan[i][j] for j in range(n))
                q = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        q += 1
                    else:
                        break
                p = q - pair
                if p > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))
