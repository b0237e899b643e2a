#!/usr/bin/env python3
"""Run the acceptance battery and print one verdict line per criterion.

Exit status is 0 only if every criterion passes.  The same battery is
reachable as `haarnull eset acceptance`; this script is the bare-metal
variant for quick iteration while hacking on the library.
"""

import argparse
import sys

from haarnull.acceptance import run_all


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--budget", type=int, default=10**7)
    args = parser.parse_args()
    results = run_all(seed=args.seed, budget=args.budget)
    for result in results:
        print(f"{result.line()}  ({result.elapsed:.2f}s)")
    passed = sum(1 for r in results if r.passed)
    total = sum(r.elapsed for r in results)
    print(f"{passed}/{len(results)} criteria passed in {total:.2f}s")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
