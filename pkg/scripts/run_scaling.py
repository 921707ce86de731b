#!/usr/bin/env python3
"""Success fraction versus dimension at a fixed budget multiple of
n*log(n); writes one harness CSV (input for the n-vs-success figure)."""

import argparse
import sys

import numpy as np

from levmc.harness import ExperimentConfig, evaluate_cell, rows_to_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ns", default="100,150,200,300")
    ap.add_argument("--rank", type=int, default=5)
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--multiplier", type=float, default=10.0,
                    help="budget = multiplier * n * log(n)")
    ap.add_argument("--trials", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--output", default="scaling.csv")
    args = ap.parse_args()

    rows = []
    for n in (int(x) for x in args.ns.split(",")):
        m = int(args.multiplier * n * np.log(n))
        for scheme in ("uniform", "oracle-leverage", "two-phase"):
            cfg = ExperimentConfig(n=n, r=args.rank, alpha=args.alpha,
                                   scheme=scheme, trials=args.trials,
                                   seed=args.seed)
            row = evaluate_cell(cfg, m)
            rows.append(row)
            print(f"n={n} {scheme} m={m} frac={row['success_frac']:.3f}",
                  file=sys.stderr)
    with open(args.output, "w") as fh:
        fh.write(rows_to_csv(rows))


if __name__ == "__main__":
    main()
