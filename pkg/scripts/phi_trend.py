#!/usr/bin/env python3
"""Growth of the weighted variation of the log-spike fixture.

For growing spike counts, prints the phi-variation under the
logarithmically-corrected weight (which diverges, slowly) next to the
2.5-variation partials (which converge, also slowly).  Deterministic.
"""

import argparse
import sys

from tvkit import PhiSpec, gen_fixture, p_variation, phi_variation


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=2.0, help="fixture exponent (> 1)")
    ap.add_argument("--gamma", type=float, default=2.0, help="weight log power (> 1)")
    ap.add_argument("--q", type=float, default=2.5, help="comparison variation exponent")
    ap.add_argument("--max-exp", type=int, default=10,
                    help="largest spike count is 2**max_exp")
    args = ap.parse_args(argv)

    phi = PhiSpec.family(1, args.p, args.gamma)
    print("spikes,phi_variation,q_variation")
    prev_phi = None
    for e in range(4, args.max_exp + 1, 2):
        n = 2 ** e
        path = gen_fixture("logSeq", p=args.p, n=n)
        vphi = phi_variation(path, phi)
        vq = p_variation(path, args.q)
        print(f"{n},{vphi!r},{vq!r}")
        if prev_phi is not None and vphi <= prev_phi:
            print("warning: weighted variation failed to grow", file=sys.stderr)
        prev_phi = vphi
    return 0


if __name__ == "__main__":
    sys.exit(main())
