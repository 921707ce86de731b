"""Command-line entry points for instance generation, sampling,
completion, the two pipelines, certificate checks, the lower-bound
construction, and experiment sweeps."""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import replace

import numpy as np

from . import certify, harness, lowerbound, matio
from .leverage import (calibrated_c0, comparison_distribution,
                       leverage_scores, leveraged_distribution)
from .linalg import svd_rank_r
from .pipelines import TwoPhaseConfig, row_coherent_complete, two_phase_complete
from .sampling import RandomStream, bernoulli_sample, sample_without_replacement
from .solver import SolverConfig, WeightMatrices, complete_nuclear, complete_weighted


def _solver_config(args) -> SolverConfig:
    return SolverConfig(max_outer_iterations=args.max_iterations,
                        relative_residual_tolerance=args.tolerance)


def _add_solver_flags(p):
    p.add_argument("--tolerance", type=float, default=1e-7)
    p.add_argument("--max-iterations", type=int, default=500)


def cmd_generate(args):
    M, _ = harness.power_law_matrix(args.n, args.rank, args.alpha,
                                    RandomStream(args.seed))
    matio.write_matrix(args.output, M)


def cmd_sample(args):
    M = matio.read_matrix(args.matrix)
    rng = RandomStream(args.seed)
    if args.scheme == "oracle-leverage":
        F = svd_rank_r(M, args.rank)
        c0 = args.c0 if args.c0 is not None else calibrated_c0(*M.shape, args.rank)
        P = leveraged_distribution(leverage_scores(F), c0)
        obs = bernoulli_sample(M, P, rng)
    elif args.scheme == "uniform":
        weights = np.full(M.size, 1.0 / M.size)
        obs = sample_without_replacement(M, weights, args.budget, rng)
    else:  # l1 / l2 on the full matrix
        weights = comparison_distribution(args.scheme, M)
        obs = sample_without_replacement(M, weights, args.budget, rng)
    matio.write_observations(args.output, obs)


def cmd_complete(args):
    obs = matio.read_observations(args.observations)
    config = _solver_config(args)
    if args.weights:
        with open(args.weights) as fh:
            R = np.asarray([float(x) for x in fh.readline().split()])
            C = np.asarray([float(x) for x in fh.readline().split()])
        report = complete_weighted(obs, WeightMatrices(R, C), config)
    else:
        report = complete_nuclear(obs, config)
    matio.write_matrix(args.output, report.X_hat)
    print(json.dumps({"iterations": report.iterations,
                      "residual": report.final_constraint_residual,
                      "nuclear_norm": report.nuclear_norm_value,
                      "converged": report.converged}))


def cmd_twophase(args):
    M = matio.read_matrix(args.matrix)
    cfg = TwoPhaseConfig(args.rank, args.budget, args.beta, _solver_config(args))
    for trial in range(args.trials):
        rng = RandomStream(args.seed, trial + 1)
        report, meta = two_phase_complete(M, cfg, rng)
        rel = float(np.linalg.norm(report.X_hat - M) / np.linalg.norm(M))
        print(json.dumps({
            "seed": args.seed, "trial": trial, "m": args.budget,
            "beta": args.beta, "success": rel <= args.success_threshold,
            "relative_error": rel, "phase1_samples": len(meta.phase1),
            "phase2_samples": len(meta.phase2),
            "rank_deficiency": meta.rank_deficiency,
        }))
    if args.output:
        matio.write_matrix(args.output, report.X_hat)


def cmd_rowcoherent(args):
    M = matio.read_matrix(args.matrix)
    for trial in range(args.trials):
        rng = RandomStream(args.seed, trial + 1)
        result = row_coherent_complete(M, args.mu0, args.rank, args.c0, rng,
                                       _solver_config(args))
        rel = float(np.linalg.norm(result.report.X_hat - M) / np.linalg.norm(M))
        print(json.dumps({
            "seed": args.seed, "trial": trial,
            "success": rel <= args.success_threshold,
            "relative_error": rel, "rows_picked": int(result.picked_rows.size),
            "row_space_captured": result.row_space_captured,
            "total_samples": result.total_samples,
        }))
    if args.output:
        matio.write_matrix(args.output, result.report.X_hat)


def cmd_certify(args):
    rng = RandomStream(args.seed)
    M, F = harness.power_law_matrix(args.n, args.rank, args.alpha, rng.substream(0))
    c0 = args.c0 if args.c0 is not None else calibrated_c0(args.n, args.n, args.rank)
    P = leveraged_distribution(leverage_scores(F), c0)
    for trial in range(args.trials):
        report = certify.golfing_certificate(M, F, P, RandomStream(args.seed, trial + 1))
        print(json.dumps({
            "trial": trial,
            "operator_norm_estimate": report.operator_norm_estimate,
            "delta_frobenius_trace": report.delta_frobenius_trace.tolist(),
            "tangent_residual": report.tangent_residual,
            "offspace_spectral": report.offspace_spectral,
            "condition_operator": report.condition_operator,
            "condition_tangent_literal": report.condition_tangent_literal,
            "condition_tangent_decay": report.condition_tangent_decay,
            "condition_offspace": report.condition_offspace,
        }))


def cmd_lowerbound(args):
    a = [float(x) for x in args.row_targets.split(",")]
    b = [float(x) for x in args.col_targets.split(",")]
    inst = lowerbound.construct_hard_pair(args.n, args.rank, a, b, args.s_bar)
    p = lowerbound.boundary_block_probability(inst, args.eta)
    P = np.full((args.n, args.n), p)
    result = lowerbound.indistinguishability_test(inst, P, args.trials,
                                                  RandomStream(args.seed))
    matio.write_matrix(args.m0_output, inst.M0)
    matio.write_matrix(args.m1_output, inst.M1)
    print(json.dumps({
        "empirical": result.empirical, "halfwidth": result.halfwidth,
        "analytic": result.analytic, "trials": result.trials,
        "block_probability": p,
        "s": inst.s.tolist(), "t": inst.t.tolist(),
        "k1": inst.k1, "k2": inst.k2, "i_star": inst.i_star,
    }))


def _config_from_file(path) -> harness.ExperimentConfig:
    parser = configparser.ConfigParser()
    with open(path) as fh:
        text = fh.read()
    if "[experiment]" not in text:
        text = "[experiment]\n" + text
    parser.read_string(text)
    sec = parser["experiment"]
    grid = tuple(int(x) for x in sec.get("sample_grid", "").replace(",", " ").split())
    return harness.ExperimentConfig(
        n=sec.getint("n", 200), r=sec.getint("r", 5),
        alpha=sec.getfloat("alpha", 0.5),
        scheme=sec.get("scheme", "two-phase"),
        beta=sec.getfloat("beta", 2.0 / 3.0), sample_grid=grid,
        trials=sec.getint("trials", 40),
        noise_sigma=sec.getfloat("noise_sigma", 0.0),
        seed=sec.getint("seed", 0),
        success_threshold=sec.getfloat("success_threshold", 0.01),
        success_quantile=sec.getfloat("success_quantile", 0.95))


def cmd_sweep(args):
    if args.config:
        cfg = _config_from_file(args.config)
    else:
        grid = tuple(int(x) for x in args.sample_grid.split(","))
        cfg = harness.ExperimentConfig(n=args.n, r=args.rank, alpha=args.alpha,
                                       scheme=args.scheme, beta=args.beta,
                                       sample_grid=grid, trials=args.trials,
                                       noise_sigma=args.noise_sigma,
                                       seed=args.seed)
    rows = harness.success_sweep(cfg)
    csv = harness.rows_to_csv(rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="levmc")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a power-law test matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sample", help="draw an observation set from a matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--scheme", default="oracle-leverage",
                   choices=["oracle-leverage", "uniform", "l1", "l2"])
    p.add_argument("--rank", type=int, default=5)
    p.add_argument("--budget", type=int, default=0)
    p.add_argument("--c0", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("complete", help="nuclear-norm completion of an observation file")
    p.add_argument("--observations", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--weights", help="file with R diagonal on line 1, C on line 2")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("twophase", help="two-phase sampling and completion")
    p.add_argument("--matrix", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--beta", type=float, default=2.0 / 3.0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--success-threshold", type=float, default=0.01)
    p.add_argument("--output")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_twophase)

    p = sub.add_parser("rowcoherent", help="knowledge-free row-sampling pipeline")
    p.add_argument("--matrix", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--mu0", type=float, required=True)
    p.add_argument("--c0", type=float, default=None)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--success-threshold", type=float, default=0.01)
    p.add_argument("--output")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_rowcoherent)

    p = sub.add_parser("certify", help="golfing certificate diagnostics (JSON lines)")
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--c0", type=float, default=None)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("lowerbound", help="hard-pair construction and failure frequency")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--row-targets", required=True, help="comma-separated a_k")
    p.add_argument("--col-targets", required=True, help="comma-separated b_k")
    p.add_argument("--s-bar", type=int, default=None)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m0-output", default="M0.txt")
    p.add_argument("--m1-output", default="M1.txt")
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("sweep", help="success-rate sweep, CSV output")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--rank", type=int, default=5)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--scheme", default="two-phase", choices=list(harness.SCHEMES))
    p.add_argument("--beta", type=float, default=2.0 / 3.0)
    p.add_argument("--sample-grid", default="")
    p.add_argument("--trials", type=int, default=40)
    p.add_argument("--noise-sigma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
