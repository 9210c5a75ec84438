#!/usr/bin/env python3
"""Random sweep: certified term rank vs direct matching vs exhaustive GF(2) max rank.

    python scripts/theorem_sweep.py --count 500 --max-q 12
"""

import argparse
import time
import warnings
from collections import Counter

from toeprank import index_parameters, term_rank, expand_toeplitz
from toeprank.oracle import max_rank_exhaustive_gf2, term_rank_closed_form, term_rank_direct
from toeprank.sampling import PatternSampler


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-rows", type=int, default=4)
    ap.add_argument("--max-cols", type=int, default=4)
    ap.add_argument("--max-index", type=int, default=3)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--max-q", type=int, default=12)
    args = ap.parse_args()
    warnings.simplefilter("ignore")

    sampler = PatternSampler(max_rows=args.max_rows, max_cols=args.max_cols,
                             max_index=args.max_index, density=args.density,
                             max_k=args.max_k, max_q=args.max_q)
    t0 = time.perf_counter()
    agree = 0
    by_k = Counter()
    gap = Counter()
    for i, h, k in sampler.draw(args.count, args.seed):
        value, _ = term_rank(h, k)
        direct = term_rank_direct(expand_toeplitz(h, k))
        closed = term_rank_closed_form(h, k)
        gf2 = max_rank_exhaustive_gf2(h, k) if index_parameters(h, k).q <= 16 else None
        ok = value == direct == closed and gf2 in (None, value)
        agree += ok
        by_k[k] += 1
        # how much T_k(H) gains over k copies of the k=1 term rank
        gap[value - k * term_rank(h, 1)[0]] += 1
        if not ok:
            print(f"MISMATCH seed {args.seed}:{i} k={k}: cert={value} direct={direct} "
                  f"closed={closed} gf2={gf2}")
    dt = time.perf_counter() - t0
    print(f"{agree}/{args.count} instances agree ({dt:.1f}s)")
    print("instances per k:", dict(sorted(by_k.items())))
    print("term_rank(T_k) - k * term_rank(H_0):", dict(sorted(gap.items())))


if __name__ == "__main__":
    main()
