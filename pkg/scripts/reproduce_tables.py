#!/usr/bin/env python3
"""Print all three published tables via the CLI, in order.

Usage: python scripts/reproduce_tables.py [--format text|csv]
"""

import argparse
import sys

from cacti import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--format", choices=["text", "csv"], default="text")
    args = parser.parse_args()
    for which in ("1", "2", "3"):
        print(f"# table {which}")
        code = cli.main(["table", which, "--format", args.format])
        if code:
            return code
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
