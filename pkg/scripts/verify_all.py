#!/usr/bin/env python3
"""Run the anti-involution law checks and the oracle comparison on a reduced grid.

The full suites live in tests/test_acceptance.py; this is a quick smoke run.
"""
import argparse
import time

from qpdo.verify import check_involution, law_grid, monomial_window, normalized_grid, oracle_mismatches


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Nmax", type=int, default=3)
    ap.add_argument("--window", type=int, default=1)
    args = ap.parse_args()
    Ns = tuple(range(1, args.Nmax + 1))
    t0 = time.time()
    laws = [(p, check_involution(p, args.window, args.window)) for p in law_grid(Ns)]
    bad = [(p, rep) for p, rep in laws if not rep.ok]
    print(f"laws: {len(laws)} parameter sets, {len(bad)} failing ({time.time() - t0:.1f}s)")
    for p, rep in bad:
        print("  ", p.to_dict(), rep.summary())
    t0 = time.time()
    grid = list(normalized_grid(Ns))
    mism = sum(len(oracle_mismatches(p, monomial_window(p.N, args.window, args.window))) for p in grid)
    print(f"oracle: {len(grid)} parameter sets, {mism} mismatches ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
