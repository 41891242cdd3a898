"""Log canonical thresholds of (x^a, y^b), checked against 1/a + 1/b."""

import argparse
from fractions import Fraction

from valslice import ValFun, lct, minimalize


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=6)
    args = ap.parse_args()
    top = args.max_exp
    print("a\\b " + " ".join(f"{b:>7}" for b in range(1, top + 1)))
    for a in range(1, top + 1):
        row = []
        for b in range(1, top + 1):
            value = lct(ValFun.log(minimalize([(a, 0), (0, b)])))
            assert value == Fraction(1, a) + Fraction(1, b)
            row.append(f"{str(value):>7}")
        print(f"{a:>3} " + " ".join(row))


if __name__ == "__main__":
    main()
