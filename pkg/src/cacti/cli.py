"""Command-line front end: counting, table reproduction, verification, series.

Exit codes are a stable contract: 0 success, 1 cross-check mismatch,
2 usage / validation / budget errors.  Counts are always rendered as exact
decimal strings (they outgrow 64-bit integers quickly), and JSON output
never encodes a count as a native number.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import formulas, oracle, series, stats
from .formulas import AutMode, GonalKind
from .stats import ColorStat, DegreeStat, SizeStat, Statistic, ValidationError

SERIES_MULTI_BOUND = 16
SERIES_ONE_SORT_BOUND = 64

MODES = ("rooted", "labelled", "pointed", "unlabelled", "asymmetric",
         "aut-exact", "aut-atleast", "gonal", "free", "constellation")

# Degree rows of the published degree-distribution table; the first row is
# incoherent (its rows disagree on the polygon count) and must be annotated,
# not silently fixed.
TABLE1_ROWS: list[tuple[int, str]] = [
    (2, "1^5 3^2; 2^7"),
    (2, "1^2 2^2 4^1; 1^2 2^4"),
    (3, "1^3 2^3; 1^3 2^3; 1^6 3^1"),
    (3, "1^2 2^1; 1^2 2^1; 1^2 2^1"),
    (3, "4^1; 1^4; 1^4"),
    (3, "2^2; 1^2 2^1; 1^4"),
    (3, "1^1 3^1; 1^2 2^1; 1^4"),
    (3, "1^2 2^2; 1^2 2^2; 1^4 2^1"),
    (3, "1^3 2^1 4^1; 1^3 2^3; 1^7 2^1"),
    (3, "1^3 2^2; 1^3 2^2; 1^3 2^2"),
    (3, "1^2 3^2; 1^4 2^2; 1^6 2^1"),
    (3, "2^4; 1^4 2^2; 1^6 2^1"),
    (3, "1^4 4^1; 1^4 2^2; 1^4 2^2"),
    (3, "1^2 2^3; 1^4 2^2; 1^4 2^2"),
    (4, "1^4 2^2; 1^4 2^2; 1^4 2^2; 1^6 2^1"),
]

TABLE2_ROWS: list[tuple[int, ...]] = [
    (7, 7), (5, 6),
    (6, 6, 7), (4, 4, 5), (5, 6, 8), (5, 5, 5), (4, 6, 7), (5, 6, 6),
    (3, 4, 4, 5), (6, 6, 6, 7),
    (1, 3, 3), (2, 2, 3), (1, 4, 4), (2, 3, 4), (3, 3, 3), (3, 3, 5),
    (1, 3, 3, 3), (2, 2, 3, 3), (2, 3, 4, 4), (4, 4, 4, 4),
]


class UsageError(ValueError):
    """Incompatible or missing flags."""


@dataclass
class Report:
    query: dict
    count: int
    path: str

    def as_dict(self) -> dict:
        return {"query": self.query, "count": str(self.count), "path": self.path}


def _build_stat(args) -> Statistic:
    given = [name for name in ("p", "colors", "degrees")
             if getattr(args, name) is not None]
    if len(given) != 1:
        raise UsageError("exactly one of --p, --colors, --degrees is required")
    if args.p is not None:
        return stats.size_stat(args.m, args.p)
    if args.colors is not None:
        try:
            counts = [int(c) for c in args.colors.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --colors value {args.colors!r}") from exc
        return stats.color_stat(args.m, counts)
    matrix = stats.parse_degree_spec(args.degrees)
    if matrix.m != args.m:
        raise UsageError(f"--degrees has {matrix.m} rows but --m is {args.m}")
    return matrix


def _count_formula(mode: str, stat: Statistic, args) -> int:
    if mode == "rooted":
        return formulas.count_rooted(stat)
    if mode == "labelled":
        return formulas.count_labelled(stat)
    if mode == "pointed":
        return formulas.count_pointed(stat, args.color)
    if mode == "unlabelled":
        return formulas.count_unlabelled(stat)
    if mode == "asymmetric":
        return formulas.count_asymmetric(stat)
    if mode in ("aut-exact", "aut-atleast"):
        if args.s is None:
            raise UsageError(f"--mode {mode} requires --s")
        which = AutMode.EXACTLY if mode == "aut-exact" else AutMode.AT_LEAST
        return formulas.count_aut(stat, args.s, which)
    if mode == "gonal":
        if not isinstance(stat, SizeStat):
            raise UsageError("--mode gonal works at size level (--p)")
        return formulas.count_gonal(stat.m, stat.p, GonalKind(args.kind))
    if mode == "free":
        if not isinstance(stat, ColorStat):
            raise UsageError("--mode free needs --colors")
        return formulas.count_free_labelled(stat)
    if mode == "constellation":
        if not isinstance(stat, SizeStat):
            raise UsageError("--mode constellation works at size level (--p)")
        return formulas.count_constellation_rooted(stat.m, stat.p)
    raise UsageError(f"unknown mode {mode!r}")


def _count_series(mode: str, stat: Statistic, args) -> int:
    # The truncated-series route only covers the plain counting modes; the
    # p = 0 row is reconciled with the single-vertex conventions here rather
    # than inside the series module.
    if mode not in ("rooted", "pointed", "unlabelled"):
        raise UsageError(f"--path series does not support mode {mode!r}")
    if stat.p == 0:
        return _count_formula(mode, stat, args)
    order = stat.n
    if isinstance(stat, SizeStat):
        if mode == "pointed":
            raise UsageError("--path series: pointed needs --colors")
        if order > SERIES_ONE_SORT_BOUND:
            raise oracle.BudgetExceeded(
                f"series order {order} > {SERIES_ONE_SORT_BOUND}")
        if mode == "rooted":
            a = series.solve_one_sort(stat.m, order)
            return int((a - series.variable(1, order, 0))[(order,)])
        return int(series.series_unlabelled(stat.m, order, one_sort=True)[(order,)])
    if order > SERIES_MULTI_BOUND:
        raise oracle.BudgetExceeded(f"series order {order} > {SERIES_MULTI_BOUND}")
    if isinstance(stat, ColorStat):
        family = series.solve_planted(stat.m, order)
        if mode == "rooted":
            return int(series.series_rooted(family)[stat.counts])
        if mode == "pointed":
            if args.color is None:
                raise UsageError("--mode pointed requires --color here")
            return int(series.series_pointed_unlabelled(
                family, args.color)[stat.counts])
        return int(series.series_unlabelled(stat.m, order)[stat.counts])
    if mode != "rooted":
        raise UsageError("--path series at degree level supports --mode rooted only")
    family = series.solve_planted(stat.m, order, weighted=True)
    poly = series.series_rooted(family)[stat.color_counts]
    key = tuple(sorted(((i + 1, j), k)
                       for i, row in enumerate(stat.rows) for j, k in row))
    if isinstance(poly, series.MarkerPoly):
        return poly.terms.get(key, 0)
    return 0


def _count_oracle(mode: str, stat: Statistic, args) -> int:
    if stat.p == 0:
        return _count_formula(mode, stat, args)
    m, p = stat.m, stat.p
    if mode == "free":
        if not isinstance(stat, ColorStat):
            raise UsageError("--mode free needs --colors")
        return oracle.free_labelled_bruteforce(stat)
    if mode == "gonal":
        if GonalKind(args.kind) is not GonalKind.UNLABELLED:
            raise UsageError("--path oracle supports only unlabelled gonal counts")
        return oracle.enumerate_gonal(m, p)
    if mode == "constellation":
        raise UsageError("no exhaustive constellation generator; use --path formula")

    def matches(colors: ColorStat, degrees: DegreeStat) -> bool:
        if isinstance(stat, ColorStat):
            return colors == stat
        if isinstance(stat, DegreeStat):
            return degrees == stat
        return True

    if mode == "rooted":
        total = 0
        for rc in oracle.generate_rooted(m, p):
            if matches(*oracle.graph_stats(oracle.to_graph(rc))):
                total += 1
        return total
    classes = [(rep, st) for rep, st in oracle.enumerate_unlabelled(m, p)
               if matches(st.colors, st.degrees)]
    if mode == "unlabelled":
        return len(classes)
    if mode == "asymmetric":
        return sum(1 for _, st in classes if st.aut_order == 1)
    if mode in ("aut-exact", "aut-atleast"):
        if args.s is None:
            raise UsageError(f"--mode {mode} requires --s")
        if mode == "aut-exact":
            return sum(1 for _, st in classes if st.aut_order == args.s)
        return sum(1 for _, st in classes if st.aut_order % args.s == 0)
    if mode == "labelled":
        if isinstance(stat, SizeStat):
            weights = [math.factorial(stat.n)] * len(classes)
        else:
            weights = [math.prod(math.factorial(c) for c in st.colors.counts)
                       for _, st in classes]
        return sum(w // st.aut_order
                   for w, (_, st) in zip(weights, classes))
    if mode == "pointed":
        colors = ([args.color] if args.color is not None
                  else list(range(1, m + 1)))
        if isinstance(stat, SizeStat) and args.color is not None:
            raise formulas.ColorForbidden("size-level pointed counts take no color")
        if not isinstance(stat, SizeStat) and args.color is None:
            raise formulas.ColorRequired("pointed counts need a color at this level")
        return sum(oracle.count_pointed_orbits(oracle.to_graph(rep), c)
                   for rep, _ in classes for c in colors)
    raise UsageError(f"--path oracle does not support mode {mode!r}")


def cmd_count(args) -> int:
    stat = _build_stat(args)
    compute = {"formula": _count_formula, "series": _count_series,
               "oracle": _count_oracle}[args.path]
    count = compute(args.mode, stat, args)
    if args.check:
        other = _count_oracle(args.mode, stat, args)
        if other != count:
            print(f"MISMATCH: formula gives {count}, oracle gives {other}",
                  file=sys.stderr)
            return 1
    query = {"mode": args.mode, "m": args.m}
    if args.p is not None:
        query["p"] = args.p
    if args.colors is not None:
        query["colors"] = args.colors
    if args.degrees is not None:
        query["degrees"] = args.degrees
    if args.color is not None:
        query["color"] = args.color
    if args.s is not None:
        query["s"] = args.s
    if args.mode == "gonal":
        query["kind"] = args.kind
    report = Report(query, count, args.path)
    if args.format == "json":
        print(json.dumps(report.as_dict()))
    else:
        print(count)
    return 0


def _table1_rows() -> list[dict]:
    rows = []
    for m, spec in TABLE1_ROWS:
        entry: dict = {"m": m, "degrees": spec}
        try:
            matrix = stats.parse_degree_spec(spec)
        except ValidationError as exc:
            entry["error"] = f"COHERENCE-FAIL ({type(exc).__name__}: {exc})"
            rows.append(entry)
            continue
        entry["pointed"] = [formulas.count_pointed(matrix, c)
                            for c in range(1, m + 1)]
        entry["rooted"] = formulas.count_rooted(matrix)
        entry["unlabelled"] = formulas.count_unlabelled(matrix)
        entry["asymmetric"] = formulas.count_asymmetric(matrix)
        rows.append(entry)
    return rows


def _table2_rows() -> list[dict]:
    rows = []
    for counts in TABLE2_ROWS:
        c = stats.color_stat(len(counts), counts)
        rows.append({"colors": list(counts),
                     "rooted": formulas.count_rooted(c),
                     "unlabelled": formulas.count_unlabelled(c),
                     "asymmetric": formulas.count_asymmetric(c)})
    return rows


def _table3_rows(m_lo: int, m_hi: int, p_max: int) -> list[dict]:
    rows = []
    for m in range(m_lo, m_hi + 1):
        for p in range(p_max + 1):
            rows.append({
                "m": m, "p": p, "n": (m - 1) * p + 1,
                "unlabelled": formulas.count_unlabelled(stats.size_stat(m, p)),
                "asymmetric": formulas.count_asymmetric(stats.size_stat(m, p)),
                "gonal": formulas.count_gonal(m, p, GonalKind.UNLABELLED),
            })
    return rows


def _parse_m_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError as exc:
        raise UsageError(f"bad --m-range {text!r}, expected like 2..7") from exc


def cmd_table(args) -> int:
    if args.which == 1:
        rows = _table1_rows()
        header = ["m", "degrees", "pointed", "rooted", "unlabelled", "asymmetric"]
        def cells(r):
            if "error" in r:
                return [r["m"], r["degrees"], r["error"], "", "", ""]
            return [r["m"], r["degrees"],
                    " ".join(str(x) for x in r["pointed"]),
                    r["rooted"], r["unlabelled"], r["asymmetric"]]
    elif args.which == 2:
        rows = _table2_rows()
        header = ["colors", "rooted", "unlabelled", "asymmetric"]
        def cells(r):
            return [",".join(str(x) for x in r["colors"]),
                    r["rooted"], r["unlabelled"], r["asymmetric"]]
    else:
        m_lo, m_hi = _parse_m_range(args.m_range)
        rows = _table3_rows(m_lo, m_hi, args.p_max)
        header = ["m", "p", "n", "unlabelled", "asymmetric", "gonal"]
        def cells(r):
            return [r[h] for h in header]
    table = [[str(c) for c in cells(r)] for r in rows]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(table)
        sys.stdout.write(buf.getvalue())
        return 0
    widths = [max(len(h), *(len(row[i]) for row in table))
              for i, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for row in table:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return 0


def cmd_verify(args) -> int:
    report = oracle.verify(args.m, args.p_max)
    if args.format == "json":
        print(json.dumps({
            "m": report.m, "p_max": report.p_max, "passed": report.passed,
            "results": [{"name": r.name, "p": r.p,
                         "comparisons": r.comparisons,
                         "passed": r.passed, "detail": r.detail}
                        for r in report.results]}))
    else:
        for r in report.results:
            mark = "PASS" if r.passed else "FAIL"
            line = f"{mark} m={report.m} p={r.p} {r.name} ({r.comparisons} comparisons)"
            if r.detail:
                line += f" -- {r.detail}"
            print(line)
        print("all checks passed" if report.passed
              else f"FAILED: {report.first_failure.name}")
    return 0 if report.passed else 1


def cmd_series(args) -> int:
    one_sort = args.one_sort
    bound = SERIES_ONE_SORT_BOUND if one_sort else SERIES_MULTI_BOUND
    if args.order < 1 or args.order > bound:
        raise oracle.BudgetExceeded(
            f"--order must be within 1..{bound} for this target")
    if one_sort:
        if args.target == "planted":
            out = series.solve_one_sort(args.m, args.order)
        elif args.target == "rooted":
            a = series.solve_one_sort(args.m, args.order)
            out = a - series.variable(1, args.order, 0)
        else:
            out = series.series_unlabelled(args.m, args.order, one_sort=True)
    else:
        family = series.solve_planted(args.m, args.order)
        if args.target == "planted":
            out = family.series[(args.color or 1) - 1]
        elif args.target == "rooted":
            out = series.series_rooted(family)
        else:
            out = series.series_unlabelled(args.m, args.order)
    items = sorted(out.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    if args.format == "json":
        print(json.dumps({
            "m": args.m, "order": args.order, "target": args.target,
            "one_sort": one_sort,
            "coefficients": [{"exponents": list(e), "coefficient": str(c)}
                             for e, c in items]}))
        return 0
    for e, c in items:
        print(f"{_monomial(e, one_sort)} {c}")
    return 0


def _monomial(exponents: tuple[int, ...], one_sort: bool) -> str:
    if not any(exponents):
        return "1"
    bits = []
    for i, e in enumerate(exponents):
        if e:
            name = "x" if one_sort else f"x{i + 1}"
            bits.append(name if e == 1 else f"{name}^{e}")
    return "*".join(bits)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cacti",
        description="Exact counts of cyclically colored polygonal plane cacti.")
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="count cacti for one statistic")
    count.add_argument("--m", type=int, required=True, help="gon size (>= 2)")
    count.add_argument("--p", type=int, help="polygon count (size level)")
    count.add_argument("--colors", help="comma-separated color counts, e.g. 4,4,5")
    count.add_argument("--degrees", help='degree rows, e.g. "1^2 2^2 4^1; 1^2 2^4"')
    count.add_argument("--mode", choices=MODES, required=True)
    count.add_argument("--color", type=int, help="pointed color (1-based)")
    count.add_argument("--s", type=int, help="automorphism order for aut-* modes")
    count.add_argument("--kind", choices=[k.value for k in GonalKind],
                       default="unlabelled", help="gonal count kind")
    count.add_argument("--path", choices=["formula", "series", "oracle"],
                       default="formula", help="computation path")
    count.add_argument("--check", choices=["oracle"],
                       help="recompute via the oracle and fail on mismatch")
    count.add_argument("--format", choices=["text", "json"], default="text")
    count.set_defaults(func=cmd_count)

    table = sub.add_parser("table", help="reproduce a published table")
    table.add_argument("which", type=int, choices=[1, 2, 3])
    table.add_argument("--m-range", default="2..7", help="table 3 range, e.g. 2..7")
    table.add_argument("--p-max", type=int, default=12, help="table 3 max p")
    table.add_argument("--format", choices=["text", "csv"], default="text")
    table.set_defaults(func=cmd_table)

    verify = sub.add_parser("verify", help="cross-check formulas against the oracle")
    verify.add_argument("--m", type=int, required=True)
    verify.add_argument("--p-max", type=int, required=True)
    verify.add_argument("--format", choices=["text", "json"], default="text")
    verify.set_defaults(func=cmd_verify)

    ser = sub.add_parser("series", help="print truncated series coefficients")
    ser.add_argument("--m", type=int, required=True)
    ser.add_argument("--order", type=int, required=True)
    ser.add_argument("--target", choices=["planted", "rooted", "unlabelled"],
                     required=True)
    ser.add_argument("--one-sort", action="store_true",
                     help="single-variable series graded by vertex count")
    ser.add_argument("--color", type=int, help="which planted series (default 1)")
    ser.add_argument("--format", choices=["text", "json"], default="text")
    ser.set_defaults(func=cmd_series)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, UsageError, oracle.BudgetExceeded,
            formulas.ColorOutOfRange, formulas.ColorRequired,
            formulas.ColorForbidden, formulas.STooSmall,
            formulas.NonPositiveP, oracle.ColorOutOfRange) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
