"""Exact arithmetic: polynomials, rational functions, series, ranks, parsing."""

from .linalg import exact_rank, rank_certificate
from .parse import ParseError, parse_polynomial, parse_rational
from .polynomial import HBAR, Polynomial, Variable, slot, symmetrize, symmetry_violation
from .rational import LinearForm, RationalFunction
from .series import INFINITY, LaurentSeries, expand, residue_at, residue_sum

__all__ = [
    "HBAR",
    "INFINITY",
    "LaurentSeries",
    "LinearForm",
    "ParseError",
    "Polynomial",
    "RationalFunction",
    "Variable",
    "exact_rank",
    "expand",
    "parse_polynomial",
    "parse_rational",
    "rank_certificate",
    "residue_at",
    "residue_sum",
    "slot",
    "symmetrize",
    "symmetry_violation",
]
