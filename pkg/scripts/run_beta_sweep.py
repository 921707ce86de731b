#!/usr/bin/env python3
"""Minimal successful budget as a function of the phase-1 fraction beta;
writes one harness CSV (input for the beta-vs-samples figure)."""

import argparse
import sys

import numpy as np

from levmc.harness import ExperimentConfig, beta_sweep, rows_to_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--rank", type=int, default=5)
    ap.add_argument("--alpha", type=float, default=0.7)
    ap.add_argument("--betas", default="0.2,0.4,0.55,0.667,0.8,0.9,1.0")
    ap.add_argument("--multipliers", default="8,10,12,14,17,20,24,30")
    ap.add_argument("--trials", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--output", default="beta_sweep.csv")
    args = ap.parse_args()

    base = args.n * np.log(args.n)
    grid = [int(float(c) * base) for c in args.multipliers.split(",")]
    cfg = ExperimentConfig(n=args.n, r=args.rank, alpha=args.alpha,
                           trials=args.trials, seed=args.seed)
    minima, rows = beta_sweep(cfg, [float(b) for b in args.betas.split(",")],
                              grid=grid)
    for beta, m in minima.items():
        print(f"beta={beta} minimal_m={m}", file=sys.stderr)
    with open(args.output, "w") as fh:
        fh.write(rows_to_csv(rows))


if __name__ == "__main__":
    main()
