"""Jumping numbers and the multiplier ideals between them for log|(x^a, y^b)|."""

import argparse
from fractions import Fraction

from valslice import ValFun, jumping_numbers, minimalize, multiplier_ideal


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--b", type=int, default=3)
    ap.add_argument("--t-max", type=Fraction, default=Fraction(2))
    args = ap.parse_args()
    phi = ValFun.log(minimalize([(args.a, 0), (0, args.b)]))
    print(f"phi = log|{minimalize([(args.a, 0), (0, args.b)])}|")
    for j in jumping_numbers(phi, args.t_max):
        before = multiplier_ideal(phi, j, closed=True)
        after = multiplier_ideal(phi, j)
        print(f"  t = {str(j):>5}: J jumps from {before} to {after}")


if __name__ == "__main__":
    main()
