#!/usr/bin/env python3
"""Measure how the exact weighted star discrepancy of the power-residue family
decays with p, and fit the log-log slope (the proven envelope exponent is
-(1/2 - delta), so the observed slope should be at least that steep).

Example:
    python scripts/decay_trend.py --primes 11,23,47,97 --s 3
"""
import argparse
import sys

import numpy as np

from psetdisc.discrepancy import weighted_star_discrepancy_exact
from psetdisc.pointset import PSetKind, generate
from psetdisc.weights import GeometricTail, ProductWeights


def parse_args():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="11,23,47,97")
    ap.add_argument("--s", type=int, default=3)
    ap.add_argument("--ratio", type=float, default=0.5)
    return ap.parse_args()


def main():
    args = parse_args()
    primes = [int(p) for p in args.primes.split(",")]
    w = ProductWeights(tail=GeometricTail(args.ratio))
    values = []
    print("p,n,weighted_dstar,subset")
    for p in primes:
        ps = generate(PSetKind.KOROBOV_P, p, args.s)
        res = weighted_star_discrepancy_exact(ps, w)
        values.append(res.value)
        print(f"{p},{ps.n},{res.value!r},\"{','.join(map(str, res.subset))}\"")
    slope = float(np.polyfit(np.log(primes), np.log(values), 1)[0])
    print(f"# loglog_slope: {slope!r}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
