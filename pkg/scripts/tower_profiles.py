"""Factor profiles, induced-series blocks and classifications for the corpus towers.

Usage: python3 scripts/tower_profiles.py [--seed 0] [--pairs 50]
"""
import argparse
import random
import time

from profinite_jh.corpus import towers
from profinite_jh.tower import anabelian, induced_series, match_series, profile, prosolvable


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pairs", type=int, default=50, help="random seed pairs for match_series")
    args = ap.parse_args()
    rng = random.Random(args.seed)

    for t in towers():
        t0 = time.perf_counter()
        prof = profile(t)
        series = induced_series(t, args.seed)
        matches = sum(match_series(t, *rng.sample(range(1000), 2)).passed for _ in range(args.pairs))
        print(f"== {t.name}  (orders {[g.order() for g in t.levels]})")
        for s in prof.types():
            print(f"   {str(s):<10} {str(prof.counts[s]):<12} trace {prof.trace[s]}")
        print(f"   blocks {series.block_lengths()}  factors {[str(f) for f in series.factors()]}")
        print(f"   prosolvable={bool(prosolvable(t))} anabelian={bool(anabelian(t))}  "
              f"match {matches}/{args.pairs}  ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
