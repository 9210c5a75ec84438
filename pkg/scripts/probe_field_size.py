#!/usr/bin/env python3
"""How often does random probing reach the term rank, as a function of field size?

Small fields lose rank through accidental cancellation; the 0/1 witness does
not.  For each prime the script reports the share of instances whose best of
``--trials`` random evaluations attains the term rank.
"""

import argparse
import warnings

from toeprank import FieldSpec, max_rank_random, term_rank
from toeprank.sampling import PatternSampler


def main():
    ap = argparse.ArgumentParser(description="random-probe success rate by field size")
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--trials", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7, 31, 257, 65521])
    args = ap.parse_args()
    warnings.simplefilter("ignore")

    sampler = PatternSampler(max_rows=5, max_cols=5, max_index=3, density=0.4, max_k=4,
                             max_q=None)
    insts = [(i, h, k, term_rank(h, k)[0]) for i, h, k in sampler.draw(args.count, args.seed)]
    print(f"{'prime':>7} {'hit rate':>9}")
    for q in args.primes:
        f = FieldSpec(q)
        hits = sum(max_rank_random(h, k, f, trials=args.trials, seed=i) == tr
                   for i, h, k, tr in insts)
        print(f"{q:>7} {hits / len(insts):>9.3f}")


if __name__ == "__main__":
    main()
