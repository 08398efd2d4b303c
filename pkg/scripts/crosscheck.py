#!/usr/bin/env python3
"""Run the full formula / series / oracle cross-validation sweep.

Exhaustively generates small cacti and compares every count against the
closed forms, then checks the truncated series coefficients against the
formulas up to a total degree.  Exits nonzero on the first mismatch.

Usage: python scripts/crosscheck.py [--degree 10] [--budgets "2:6,3:4,4:3"]
"""

import argparse
import sys
import time

from cacti import formulas, oracle, series, stats
from cacti.formulas import GonalKind


def parse_budgets(text: str) -> dict[int, int]:
    out = {}
    for pair in text.split(","):
        m, p = pair.split(":")
        out[int(m)] = int(p)
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--degree", type=int, default=10,
                        help="series agreement bound (total degree)")
    parser.add_argument("--budgets", default="2:6,3:4,4:3",
                        help="m:p_max pairs for the exhaustive sweep")
    args = parser.parse_args()
    start = time.perf_counter()

    for m, p_max in sorted(parse_budgets(args.budgets).items()):
        report = oracle.verify(m, p_max)
        status = "ok" if report.passed else "FAILED"
        comparisons = sum(r.comparisons for r in report.results)
        print(f"verify m={m} p<={p_max}: {comparisons} comparisons {status}")
        if not report.passed:
            failure = report.first_failure
            print(f"  first failure: {failure.name} p={failure.p}: {failure.detail}")
            return 1
        for p in range(1, p_max + 1):
            gonal = oracle.enumerate_gonal(m, p)
            expected = formulas.count_gonal(m, p, GonalKind.UNLABELLED)
            if gonal != expected:
                print(f"gonal mismatch m={m} p={p}: {gonal} vs {expected}")
                return 1
        print(f"gonal m={m} p<={p_max}: ok")

    for m in (2, 3):
        fam = series.solve_planted(m, args.degree)
        rooted = series.series_rooted(fam)
        unlabelled = series.series_unlabelled(m, args.degree)
        checked = 0
        for counts, coeff in sorted(rooted.coeffs.items()):
            stat = stats.color_stat(m, counts)
            if coeff != formulas.count_rooted(stat):
                print(f"series mismatch at {counts}")
                return 1
            checked += 1
        for counts, coeff in sorted(unlabelled.coeffs.items()):
            if sum(counts) == 1:
                continue
            if coeff != formulas.count_unlabelled(stats.color_stat(m, counts)):
                print(f"series mismatch at {counts}")
                return 1
            checked += 1
        print(f"series m={m} degree<={args.degree}: {checked} coefficients ok")

    print(f"all cross-checks passed in {time.perf_counter() - start:.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
