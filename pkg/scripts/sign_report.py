#!/usr/bin/env python3
"""Print the symmetry sign of each residue form on each block.

With --weighted the forms carry the c-weights of every valid sign pattern,
which can flip the sign on the second block.
"""
import argparse

from qpdo.bilinear import FormSpec, block_symmetry_signs
from qpdo.involutions import InvolutionParams, valid_sign_patterns

NAMES = {1: "symmetric", -1: "antisymmetric", None: "neither"}


def describe(signs):
    return ", ".join(f"{block}: {NAMES[s]}" for block, s in signs.items())


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Nmax", type=int, default=4)
    ap.add_argument("--U", type=int, default=4)
    ap.add_argument("--weighted", action="store_true")
    args = ap.parse_args()
    for N in range(1, args.Nmax + 1):
        for n in range(1, N + 1):
            for sign in (1, -1):
                variant = "nN" if n == N else "n<N"
                if not args.weighted:
                    print(f"N={N} n={n} sign {sign:+d}: {describe(block_symmetry_signs(FormSpec(sign, variant, N, n), args.U))}")
                    continue
                for c in valid_sign_patterns(N, n, sign if n < N else 1):
                    p = InvolutionParams.make(N, n, epsilon=sign, c=c)
                    spec = FormSpec.for_params(p)
                    print(f"N={N} n={n} sign {sign:+d} c={c}: {describe(block_symmetry_signs(spec, args.U))}")


if __name__ == "__main__":
    main()
