"""Distance from phi to (1/t) log|J(t phi)| along t = 1, 2, 4, ...

The error always stays below 1/t, but it can stall between consecutive
doublings: for phi = (1/3) log|y| the ideals J(phi) and J(2 phi) are both
the unit ideal.
"""

import argparse
import random

from valslice import ValFun, approximation_error, minimalize
from valslice.sampling import random_qpsh


def report(name, phi, steps):
    errs = [approximation_error(phi, 2**k) for k in range(steps)]
    stalls = sum(1 for a, b in zip(errs, errs[1:]) if a and not b < a)
    print(f"{name}: " + ", ".join(str(e) for e in errs) + (f"   ({stalls} stall{'s' * (stalls > 1)})" if stalls else ""))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--steps", type=int, default=6)
    ap.add_argument("--random", type=int, default=5, help="number of random examples")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    report("log|(x^2, y^3)|", ValFun.log(minimalize([(2, 0), (0, 3)])), args.steps)
    report("(1/3) log|y|", ValFun.log(minimalize([(0, 1)]), "1/3"), args.steps)
    rng = random.Random(args.seed)
    for k in range(args.random):
        report(f"random #{k}", random_qpsh(rng, 2), args.steps)


if __name__ == "__main__":
    main()
