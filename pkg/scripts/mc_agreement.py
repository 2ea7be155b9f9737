"""z-scores of the Monte Carlo mean against the exact expectation over many seeds.

Usage: python scripts/mc_agreement.py [--n 16] [--partition 14+1+1] [--seeds 20] [--trials 50000]
"""
import argparse

import numpy as np

from bdris.archgraph import Partition
from bdris.montecarlo import run_mc, z_score
from bdris.power import expected_power_exact


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--partition", default="14+1+1")
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--trials", type=int, default=50_000)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    p = Partition.parse(args.partition, args.n)
    closed = expected_power_exact(p)
    zs = np.array([z_score(run_mc(args.n, p, args.trials, s, workers=args.workers), closed)
                   for s in range(args.seeds)])
    print("seed,z")
    for s, z in enumerate(zs):
        print(f"{s},{float(z)!r}")
    print(f"# closed form {closed!r}; mean z {zs.mean():+.3f}, std {zs.std(ddof=1):.3f}, "
          f"|z| <= 4 in {int(np.sum(np.abs(zs) <= 4))}/{len(zs)}")


if __name__ == "__main__":
    main()
