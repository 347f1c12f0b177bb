"""Exact rank computations.

Rows are polynomials in hbar and the slot variables; their rank is taken over
the field Q(hbar), with the slot monomials as the column basis.  Elimination is
fraction free (Bareiss) with entries in Z[hbar].
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .. import _kernels as K
from .polynomial import Polynomial

DEFAULT_SEED = 0xCAFE

# -- univariate integer polynomials (coefficient lists, low degree first) --

UPoly = list


def _utrim(p: UPoly) -> UPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _umul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _utrim(out)


def _usub(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _utrim(out)


def _udiv_exact(a: UPoly, b: UPoly) -> UPoly:
    """a / b for integer polynomials when the division is known to be exact."""
    if not a:
        return []
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if c % lead:
            raise ArithmeticError("inexact division in fraction-free elimination")
        c //= lead
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] -= c * y
    if any(a):
        raise ArithmeticError("inexact division in fraction-free elimination")
    return _utrim(q)


def _bareiss_rank(matrix: list[list], mul, sub, divexact, is_zero, one) -> int:
    """Generic fraction-free elimination; consumes ``matrix``."""
    rows = len(matrix)
    if not rows:
        return 0
    cols = len(matrix[0])
    prev = one
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if not is_zero(matrix[r][c]):
                pivot = r
                break
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        p = matrix[rank][c]
        for r in range(rank + 1, rows):
            row = matrix[r]
            f = row[c]
            prow = matrix[rank]
            for k in range(c + 1, cols):
                row[k] = divexact(sub(mul(p, row[k]), mul(f, prow[k])), prev)
            row[c] = 0 if one == 1 else []
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix (Bareiss)."""
    m = [list(r) for r in matrix if any(r)]
    if not m:
        return 0

    def divexact(a, b):
        q, rem = divmod(a, b)
        if rem:
            raise ArithmeticError("inexact division in fraction-free elimination")
        return q

    return _bareiss_rank(m, lambda a, b: a * b, lambda a, b: a - b, divexact, lambda a: a == 0, 1)


def rational_rank(matrix: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank over Q of a matrix with rational entries."""
    ints = []
    for row in matrix:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        ints.append([int(x * den) for x in row])
    return integer_rank(ints)


def uhbar_rank(matrix: list[list[UPoly]]) -> int:
    """Rank over Q(hbar) of a matrix with entries in Z[hbar]."""
    m = [[list(e) for e in row] for row in matrix if any(row)]
    if not m:
        return 0
    return _bareiss_rank(m, _umul, _usub, _udiv_exact, lambda a: not a, [1])


# -- polynomial rows -------------------------------------------------------


def _lambda_part(m: int) -> int:
    return m >> K.FIELD_BITS << K.FIELD_BITS


def coefficient_matrix(rows: Sequence[Polynomial]) -> tuple[list[int], list[list[UPoly]]]:
    """Columns are slot monomials; entries are integer polynomials in hbar.

    Each row is scaled by its own denominator, which does not change the rank.
    """
    columns = sorted({_lambda_part(m) for p in rows for m in p.terms})
    index = {c: i for i, c in enumerate(columns)}
    out = []
    for p in rows:
        row: list[UPoly] = [[] for _ in columns]
        for m, c in p.terms.items():
            e = m & K.FIELD_MASK
            cell = row[index[_lambda_part(m)]]
            if len(cell) <= e:
                cell.extend([0] * (e + 1 - len(cell)))
            cell[e] += c
        out.append([_utrim(cell) for cell in row])
    return columns, out


def _specialize(matrix: list[list[UPoly]], value: Fraction) -> list[list[Fraction]]:
    out = []
    for row in matrix:
        new = []
        for cell in row:
            acc = Fraction(0)
            for c in reversed(cell):
                acc = acc * value + c
            new.append(acc)
        out.append(new)
    return out


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    method: str
    specializations: tuple[tuple[Fraction, int], ...]

    @property
    def certified(self) -> bool:
        """True when some specialization reached the generic rank."""
        return any(r == self.rank for _, r in self.specializations) or self.rank == 0


def _all_homogeneous(rows: Iterable[Polynomial]) -> bool:
    return all(p.is_homogeneous() for p in rows)


def rank_certificate(
    rows: Sequence[Polynomial], *, method: str = "auto", seed: int = DEFAULT_SEED, checks: int = 3
) -> RankCertificate:
    """Rank over Q(hbar) with a random-specialization cross-check.

    ``method``: "bareiss" runs fraction-free elimination over Z[hbar];
    "homogeneous" uses that for rows that are each homogeneous, scaling rows by
    hbar^-deg and columns by hbar^deg turns the matrix into its hbar = 1
    specialization, so the Q(hbar) rank equals a rank over Q; "auto" picks the
    latter whenever it applies.
    """
    rows = [p for p in rows if not p.is_zero()]
    if not rows:
        return RankCertificate(0, "empty", ())
    _, matrix = coefficient_matrix(rows)
    if method == "auto":
        method = "homogeneous" if _all_homogeneous(rows) else "bareiss"
    if method == "homogeneous":
        if not _all_homogeneous(rows):
            raise ValueError("homogeneous rank requested for inhomogeneous rows")
        rank = rational_rank(_specialize(matrix, Fraction(1)))
    elif method == "bareiss":
        rank = uhbar_rank(matrix)
    else:
        raise ValueError(f"unknown rank method {method!r}")
    rng = random.Random(seed)
    specs = []
    for _ in range(checks):
        value = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**3))
        r = rational_rank(_specialize(matrix, value))
        if r > rank:
            raise ArithmeticError(f"specialized rank {r} exceeds generic rank {rank}")
        specs.append((value, r))
    return RankCertificate(rank, method, tuple(specs))


def exact_rank(rows: Sequence[Polynomial], *, method: str = "auto", seed: int = DEFAULT_SEED) -> int:
    """Rank of the polynomial rows over Q(hbar)."""
    return rank_certificate(rows, method=method, seed=seed).rank


def rank_of_columns(rows: Sequence[Polynomial], keep) -> int:
    """Q-rank of the rows restricted to the full monomials (hbar included) with keep(m)."""
    columns = sorted({m for p in rows for m in p.terms if keep(m)})
    if not columns:
        return 0
    index = {c: i for i, c in enumerate(columns)}
    matrix = []
    for p in rows:
        row = [0] * len(columns)
        for m, c in p.terms.items():
            i = index.get(m)
            if i is not None:
                row[i] = Fraction(c, p.den)
        matrix.append(row)
    return rational_rank(matrix)


def q_rank(rows: Sequence[Polynomial]) -> int:
    """Rank over Q, every monomial (hbar included) a separate column."""
    return rank_of_columns(rows, lambda m: True)
