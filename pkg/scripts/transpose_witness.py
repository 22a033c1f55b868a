#!/usr/bin/env python3
"""Search for monomials whose weight changes under the transpose-based
anti-involution, for each (N, n)."""
import argparse

from qpdo.verify import monomial_window, normalized_grid, transpose_gradation_witness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Nmax", type=int, default=3)
    ap.add_argument("--window", type=int, default=2, help="|k|, |m| bound")
    args = ap.parse_args()
    for N in range(1, args.Nmax + 1):
        keys = monomial_window(N, args.window, args.window)
        for n in range(1, N + 1):
            found = None
            for p in normalized_grid((N,)):
                if p.n == n:
                    found = found or transpose_gradation_witness(p, keys)
            print(f"N={N} n={n}: {found if found else 'no witness'}")


if __name__ == "__main__":
    main()
