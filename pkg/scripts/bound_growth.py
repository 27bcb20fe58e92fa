#!/usr/bin/env python3
"""Tabulate the witness lower bound 2^floor(r_max(n)/2) against n.

The bound is sub-exponential in the witness size 2n; rows where n hits a
triangular number r(r+1)/2 are the sizes at which the explicit
construction attains it.

Usage: python3 scripts/bound_growth.py [-n 120]
"""

import argparse

from corrfact import r_max


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", type=int, default=120, help="largest n to tabulate")
    args = parser.parse_args()

    print(f"{'n':>6} {'witness size':>12} {'r_max(n)':>9} {'lower bound':>12} {'attained':>9}")
    previous = None
    for n in range(1, args.n + 1):
        r = r_max(n)
        if r == previous:
            continue
        previous = r
        bound = 2 ** (r // 2)
        triangular = r * (r + 1) // 2 == n
        print(f"{n:>6} {2 * n:>12} {r:>9} {bound:>12} {'yes' if triangular else '':>9}")


if __name__ == "__main__":
    main()
