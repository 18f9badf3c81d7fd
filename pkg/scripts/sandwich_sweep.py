#!/usr/bin/env python3
"""Sandwich bounds for the least total variation within a uniform ball.

Sweeps the accuracy budget c for a chosen path and prints, per c, the lower
bound TTV(f, c), the greedy witness's total variation, and the lambda-grid
upper bound.  The planar three-point fixture shows a strict lower gap.
"""

import argparse
import sys

import numpy as np

from tvkit import gen_alpha_stable, gen_fixture, oscillation, sandwich


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", default="circle3", help="circle3|stepSplit")
    ap.add_argument("--gen-n", type=int, default=0,
                    help="use an alpha-stable path with this many samples instead")
    ap.add_argument("--alpha", type=float, default=1.5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--lambdas", default="1.5,2,4")
    ap.add_argument("--points", type=int, default=12)
    args = ap.parse_args(argv)

    if args.gen_n:
        path = gen_alpha_stable(args.gen_n, args.alpha, seed=args.seed)
    else:
        path = gen_fixture(args.fixture)
    lams = tuple(float(x) for x in args.lambdas.split(","))
    osc = oscillation(path)
    print("c,lower,witness_tv,upper")
    for c in np.linspace(0.1 * osc, 1.2 * osc, args.points):
        sw = sandwich(path, float(c), lams)
        print(f"{float(c)!r},{sw.lower!r},{sw.witness_tv!r},{sw.upper!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
