#!/usr/bin/env python3
"""Run every verification suite and print a compact summary.

Usage: python scripts/run_property_suites.py [--seed N]
"""
import argparse
import sys
import time

from gmc.suites import SUITES, run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20260808)
    args = parser.parse_args()

    any_failed = False
    for name in sorted(SUITES):
        t0 = time.perf_counter()
        results = run_suite(name, args.seed)
        elapsed = time.perf_counter() - t0
        failed = [r for r in results if not r.passed]
        any_failed = any_failed or bool(failed)
        status = "ok " if not failed else "FAIL"
        print(f"[{status}] {name:<24} {len(results) - len(failed)}/{len(results)} properties  ({elapsed:.2f} s)")
        for r in failed:
            print("   " + r.line())
    return 1 if any_failed else 0


if __name__ == "__main__":
    sys.exit(main())
