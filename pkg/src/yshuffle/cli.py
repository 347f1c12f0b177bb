"""Command-line interface: ``ysh <group> <command> [options]``.

Exit codes: 0 when every check passes, 1 on any failed check, 2 on usage,
input or budget errors.
"""

from __future__ import annotations

import argparse
import os
import signal
import sys
from contextlib import contextmanager
from typing import Sequence

from . import __version__
from .arith.parse import ParseError, parse_rational
from .arith.polynomial import format_polynomial
from .arith.series import COEFFICIENT, STANDARD
from .census import (
    K_AT_L,
    K_AT_L_PLUS_1,
    bigrade_identity_check,
    pbw_compare,
    pbw_grid,
    triangular_count,
)
from .checks import DEFAULT_SEED, check_closure_associativity, check_embedding, check_hbar_zero
from .elements import parse_element
from .pairing import RankOneElement, pair_cartan_series, pair_rank_one, swap_product_table
from .quiver import DimensionVector, Quiver, QuiverError, sub_vectors
from .relations import not_checked_reports, ordered_pairs, serre_suite, series_suite, y4_suite
from .report import FAIL, INFO, PASS, ReportDocument, VerificationReport
from .shuffle import DEFAULT_MAX_FDEG, DEFAULT_MAX_NORM, BudgetExceeded, check_budget, shuffle_mul

DEFAULT_TIME_CAP = 1800.0
CONVENTION_FLAGS = {"k-at-l": K_AT_L, "k-at-l+1": K_AT_L_PLUS_1}


class UsageError(Exception):
    pass


class TimeCapExceeded(Exception):
    pass


# -- argument helpers ---------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        try:
            i, j = item.split("-")
            out.append((int(i), int(j)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected pairs like 0-1,1-2, got {text!r}")
    return out


def _orders(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2 or min(vals) < 0:
        raise argparse.ArgumentTypeError("expected two nonnegative integers M,N")
    return vals[0], vals[1]


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--max-norm", type=_positive, default=DEFAULT_MAX_NORM, help="budget on |v|")
    common.add_argument("--budget-degree", type=_positive, default=DEFAULT_MAX_FDEG, help="budget on the filtration degree")

    withq = argparse.ArgumentParser(add_help=False, parents=[common])
    withq.add_argument("--quiver", required=True, help="quiver JSON file")

    parser = argparse.ArgumentParser(prog="ysh", description="Exact shuffle-algebra computations for quiver Yangians.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("quiver").add_subparsers(dest="command", required=True)
    g.add_parser("validate", parents=[withq])

    g = groups.add_parser("shuffle").add_subparsers(dest="command", required=True)
    p = g.add_parser("mul", parents=[withq])
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--lhs-weight", type=_int_list, help="read --lhs as a polynomial in l(k,s) at this weight")
    p.add_argument("--rhs-weight", type=_int_list)

    g = groups.add_parser("verify").add_subparsers(dest="command", required=True)
    for name in ("y4", "serre"):
        p = g.add_parser(name, parents=[withq])
        p.add_argument("--max-mode", type=_nonneg, default=2)
        p.add_argument("--pairs", type=_pairs)
    p = g.add_parser("series-oracle", parents=[withq])
    p.add_argument("--order", type=_positive, default=3, help="truncation order R")
    p.add_argument("--pairs", type=_pairs)
    for name in ("fac-embedding", "closure", "hbar-zero"):
        p = g.add_parser(name, parents=[withq])
        p.add_argument("--bound", type=_int_list, help="bound on the total weight (default 2 per vertex)")
        p.add_argument("--max-degree", type=_nonneg, default=3)
        p.add_argument("--count", type=_positive, default=20)

    g = groups.add_parser("pair").add_subparsers(dest="command", required=True)
    p = g.add_parser("rank-one", parents=[common])
    p.add_argument("--vertex", type=_nonneg, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--residue-convention", choices=(COEFFICIENT, STANDARD), default=COEFFICIENT)
    p = g.add_parser("cartan", parents=[withq])
    p.add_argument("--vertex", type=_nonneg, required=True)
    p.add_argument("--orders", type=_orders, default=(3, 3))

    g = groups.add_parser("pbw").add_subparsers(dest="command", required=True)
    p = g.add_parser("table", parents=[withq])
    p.add_argument("--weight", type=_int_list, required=True)
    p.add_argument("--max-degree", type=_nonneg, default=2)
    p.add_argument("--convention", choices=sorted(CONVENTION_FLAGS), default="k-at-l+1")
    p.add_argument("--grid", action="store_true", help="every nonzero weight <= --weight")
    p.add_argument("--force", action="store_true", help="allow type A1^(1)")

    g = groups.add_parser("bigrade").add_subparsers(dest="command", required=True)
    p = g.add_parser("check", parents=[withq])
    p.add_argument("--weight", type=_int_list, required=True)
    p.add_argument("--max-m", type=_nonneg, default=3)

    g = groups.add_parser("triangular").add_subparsers(dest="command", required=True)
    p = g.add_parser("count", parents=[withq])
    p.add_argument("--plus", type=_int_list, required=True)
    p.add_argument("--minus", type=_int_list, required=True)
    p.add_argument("--max-degree", type=_nonneg, default=3)
    p.add_argument("--convention", choices=sorted(CONVENTION_FLAGS), default="k-at-l+1")
    return parser


# -- time cap -----------------------------------------------------------------


def time_cap() -> float:
    raw = os.environ.get("YSH_BUDGET_SECONDS")
    if raw is None:
        return DEFAULT_TIME_CAP
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"YSH_BUDGET_SECONDS must be a number, got {raw!r}")
    if value <= 0:
        raise UsageError("YSH_BUDGET_SECONDS must be positive")
    return value


@contextmanager
def _deadline(seconds: float):
    if not hasattr(signal, "SIGALRM"):
        yield
        return

    def fire(signum, frame):
        raise TimeCapExceeded(f"time cap of {seconds:g} s exceeded")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


# -- command implementations --------------------------------------------------


def _weight(values: list[int], q: Quiver, what: str = "--weight") -> DimensionVector:
    if len(values) != len(q.vertices):
        raise UsageError(f"{what} has {len(values)} entries but the quiver has {len(q.vertices)} vertices")
    if any(v < 0 for v in values):
        raise UsageError(f"{what} entries must be nonnegative")
    return DimensionVector.from_list(values, q.vertices)


def _document(args, q: Quiver | None) -> ReportDocument:
    doc = ReportDocument(
        command=f"{args.group} {args.command}",
        quiver=q.to_dict() if q else None,
        quiver_fingerprint=q.fingerprint() if q else None,
    )
    doc.provenance["seed"] = args.seed
    if q is not None:
        doc.provenance["orientation"] = [f"{a.out}->{a.inc}" for a in q.arrows]
        doc.provenance["arrow_count"] = "directed count of the chosen orientation"
        warnings = q.scope_warnings()
        if warnings:
            doc.provenance["scope_warnings"] = warnings
    return doc


def cmd_quiver_validate(args, q, doc):
    doc.tables["cartan"] = q.cartan()
    doc.reports.append(
        VerificationReport(kind="quiver", instance={"name": q.name}, outcome=PASS, stats={"vertices": list(q.vertices), "arrows": len(q.arrows)})
    )


def cmd_shuffle_mul(args, q, doc):
    lw = _weight(args.lhs_weight, q, "--lhs-weight") if args.lhs_weight else None
    rw = _weight(args.rhs_weight, q, "--rhs-weight") if args.rhs_weight else None
    f = parse_element(args.lhs, q, lw)
    g = parse_element(args.rhs, q, rw)
    prod = shuffle_mul(f, g, q)
    doc.tables["product"] = {
        "weight": prod.weight.to_list(q.vertices),
        "poly": format_polynomial(prod.poly),
        "origin": "computed shuffle product",
    }
    doc.reports.append(VerificationReport(kind="shuffle-mul", instance={"lhs": args.lhs, "rhs": args.rhs}, outcome=PASS))
    return format_polynomial(prod.poly)


def cmd_verify(args, q, doc):
    if args.command == "y4":
        reports = y4_suite(q, args.max_mode, args.pairs)
    elif args.command == "serre":
        pairs = args.pairs if args.pairs is not None else ordered_pairs(q, distinct=True, adjacent=True)
        reports = serre_suite(q, args.max_mode, pairs)
    elif args.command == "series-oracle":
        reports = series_suite(q, args.order, args.pairs)
    else:
        bound = _weight(args.bound, q, "--bound") if args.bound else DimensionVector({k: 2 for k in q.vertices})
        check = {"fac-embedding": check_embedding, "closure": check_closure_associativity, "hbar-zero": check_hbar_zero}[args.command]
        reports = [check(q, bound, args.max_degree, args.count, args.seed)]
    doc.reports.extend(reports)
    if args.command in ("y4", "serre", "series-oracle"):
        doc.reports.extend(not_checked_reports())


def cmd_pair_rank_one(args, q, doc):
    x = f"l({args.vertex},1)"
    try:
        f = RankOneElement(args.vertex, parse_rational(args.f))
        g = RankOneElement(args.vertex, parse_rational(args.g))
    except ValueError as exc:
        raise UsageError(f"{exc} (rank-one elements use {x} and h only)")
    value = pair_rank_one(f, g, args.residue_convention)
    doc.provenance["residue_convention"] = args.residue_convention
    doc.tables["pairing"] = {"value": str(value), "origin": "computed residue at infinity"}
    doc.reports.append(VerificationReport(kind="pair-rank-one", instance={"vertex": args.vertex, "f": args.f, "g": args.g}, outcome=PASS))
    return str(value)


def cmd_pair_cartan(args, q, doc):
    if args.vertex not in q.vertices:
        raise UsageError(f"unknown vertex {args.vertex}")
    table = pair_cartan_series(args.vertex, q, args.orders)
    check = swap_product_table(args.vertex, q, args.orders)
    ok = set(check) == {(0, 0)} and str(check[(0, 0)]) == "1"
    doc.provenance["expansion_region"] = "|u| >> |w|: expand in 1/u first, then in w"
    doc.tables["series"] = {f"u^-{i} w^{j}": str(c) for (i, j), c in sorted(table.items())}
    doc.reports.append(
        VerificationReport(
            kind="cartan-swap-product",
            instance={"vertex": args.vertex, "orders": list(args.orders)},
            outcome=PASS if ok else FAIL,
            witness="0" if ok else repr({str(k): str(v) for k, v in check.items()}),
        )
    )
    lines = [f"u^-{i} w^{j}: {c}" for (i, j), c in sorted(table.items())]
    return "\n".join(lines)


def _census_lines(rows, convention) -> list[str]:
    out = []
    for r in rows:
        out.append(f"v={r.weight}  computed gr={r.computed_gr}  predicted[{convention}]={r.predicted_gr[convention]}  matching={','.join(r.matching) or '-'}")
    return out


def cmd_pbw_table(args, q, doc):
    convention = CONVENTION_FLAGS[args.convention]
    v = _weight(args.weight, q)
    budget = dict(max_norm=args.max_norm, max_deg=args.budget_degree)
    if args.grid:
        for w in sub_vectors(v):
            check_budget(w, args.max_degree, **budget)
        reports, rows, consistent = pbw_grid(v, args.max_degree, q, convention=convention, force=args.force)
        doc.tables["consistent_conventions"] = consistent
    else:
        rep, row = pbw_compare(v, args.max_degree, q, convention=convention, force=args.force, **budget)
        reports, rows = [rep], [row]
    doc.provenance["central_convention"] = convention
    doc.tables["census"] = [
        {
            "weight": r.weight,
            "computed_gr": r.computed_gr,
            "computed_origin": "computed rank",
            "predicted_gr": r.predicted_gr,
            "predicted_origin": "predicted census",
            "matching_conventions": r.matching,
        }
        for r in rows
    ]
    doc.reports.extend(reports)
    return "\n".join(_census_lines(rows, convention))


def cmd_bigrade(args, q, doc):
    v = _weight(args.weight, q)
    check_budget(v, args.max_m, args.max_norm, args.budget_degree)
    doc.provenance["filtration_reading"] = "F by slot degree, F' by hbar order; word-degree filtration reported as INFO"
    doc.reports.extend(bigrade_identity_check(v, args.max_m, q))


def cmd_triangular(args, q, doc):
    plus = _weight(args.plus, q, "--plus")
    minus = _weight(args.minus, q, "--minus")
    convention = CONVENTION_FLAGS[args.convention]
    doc.provenance["central_convention"] = convention
    doc.provenance["degree_convention"] = "Cartan and t- generators sit one degree above their mode index"
    doc.reports.append(triangular_count(plus, minus, args.max_degree, q, convention))


HANDLERS = {
    ("quiver", "validate"): cmd_quiver_validate,
    ("shuffle", "mul"): cmd_shuffle_mul,
    ("verify", "y4"): cmd_verify,
    ("verify", "serre"): cmd_verify,
    ("verify", "series-oracle"): cmd_verify,
    ("verify", "fac-embedding"): cmd_verify,
    ("verify", "closure"): cmd_verify,
    ("verify", "hbar-zero"): cmd_verify,
    ("pair", "rank-one"): cmd_pair_rank_one,
    ("pair", "cartan"): cmd_pair_cartan,
    ("pbw", "table"): cmd_pbw_table,
    ("bigrade", "check"): cmd_bigrade,
    ("triangular", "count"): cmd_triangular,
}


def _human(doc: ReportDocument, summary: str | None) -> str:
    lines = []
    if summary is not None:
        lines.append(summary)
    for r in doc.reports:
        if r.outcome in (PASS,) and summary is not None and r.kind in ("shuffle-mul", "pair-rank-one", "quiver"):
            continue
        lines.append(r.line())
        if r.outcome == INFO:
            lines.append(f"    {r.witness}")
    d = doc.to_dict()
    if len(doc.reports) > 1:
        lines.append(f"{d['summary']['status']}: {d['summary']['total'] - d['summary']['failed']}/{d['summary']['total']} ok")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> tuple[int, ReportDocument | None]:
    """Parse argv, execute, write the report; return (exit code, document)."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), None
    try:
        q = Quiver.load(args.quiver) if getattr(args, "quiver", None) else None
        doc = _document(args, q)
        for msg in doc.provenance.get("scope_warnings", []):
            print(f"ysh: warning: {msg}", file=stderr)
        with _deadline(time_cap()):
            summary = HANDLERS[(args.group, args.command)](args, q, doc)
    except (UsageError, QuiverError, ParseError, BudgetExceeded, TimeCapExceeded, OSError, ValueError) as exc:
        print(f"ysh: error: {exc}", file=stderr)
        return 2, None
    text = doc.to_json() if args.format == "json" else _human(doc, summary)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return (0 if doc.ok() else 1), doc


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
