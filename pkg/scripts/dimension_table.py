#!/usr/bin/env python3
"""Dimensions of the graded pieces of fixed subalgebras on a window, side by side
with the count predicted by the generator families."""
import argparse

from qpdo.involutions import InvolutionParams
from qpdo.parser import parse_scalar
from qpdo.subalgebras import FixedSubalgebraSpec, dim_table, generators_by_weight, row_reduce


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=3)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--epsilon", type=int, default=-1)
    ap.add_argument("--r", type=int, default=0)
    ap.add_argument("--A", default=None, help="scalar for n = N, e.g. -1 or v^2")
    ap.add_argument("--c", default="1,-1", help="comma separated sign pattern")
    ap.add_argument("--window", type=int, nargs=4, default=(-2, 2, -3, 3), metavar=("ZMIN", "ZMAX", "TMIN", "TMAX"))
    args = ap.parse_args()
    c = [parse_scalar(x) for x in args.c.split(",")] if args.c else None
    A = parse_scalar(args.A) if args.A else None
    p = InvolutionParams.make(args.N, args.n, epsilon=args.epsilon, r=args.r, c=c, A=A)
    spec = FixedSubalgebraSpec(p, *args.window)
    dims = dim_table(spec)
    gens = generators_by_weight(spec)
    print(f"{'weight':>6} {'dim':>4} {'families':>8}")
    for w, d in dims.items():
        rank = len(row_reduce(dict(x._terms) for x in gens.get(w, [])))
        print(f"{w:>6} {d:>4} {rank:>8}")


if __name__ == "__main__":
    main()
