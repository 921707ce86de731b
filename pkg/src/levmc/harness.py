"""Experiment driver: power-law instance generation, noisy observations,
and success-rate sweeps over coherence, budget split, and dimension."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from .leverage import LeverageScores, comparison_distribution, leverage_scores
from .linalg import Factorization, check_dense, svd_rank_r
from .pipelines import TwoPhaseConfig, two_phase_complete, union_observations
from .sampling import RandomStream, bernoulli_sample, sample_without_replacement
from .solver import SolverConfig, complete_nuclear

CSV_HEADER = ("scheme,alpha,beta,n,r,m,trials,success_frac,ci_halfwidth,"
              "median_rel_err,mean_samples,seconds")

SCHEMES = ("oracle-leverage", "two-phase", "uniform", "l1", "l2")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 200
    r: int = 5
    alpha: float = 0.5
    scheme: str = "two-phase"
    beta: float = 2.0 / 3.0
    sample_grid: tuple = ()
    trials: int = 40
    noise_sigma: float = 0.0
    seed: int = 0
    c0: float | None = None
    success_threshold: float = 0.01
    success_quantile: float = 0.95
    solver: SolverConfig = SolverConfig()

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(m > self.n * self.n for m in self.sample_grid):
            raise ValueError("sample budget exceeds n^2")


def power_law_matrix(n: int, r: int, alpha: float,
                     rng: RandomStream) -> tuple[np.ndarray, Factorization]:
    """M = D U V^T D with Gaussian U, V and D_ii = i^-alpha, normalized to
    unit Frobenius norm. Returns M and its rank-r SVD."""
    gen = rng.generator()
    U = gen.standard_normal((n, r))
    V = gen.standard_normal((n, r))
    d = np.arange(1, n + 1, dtype=float) ** -alpha
    M = (d[:, None] * U) @ (V.T * d[None, :])
    M /= np.linalg.norm(M)
    return M, svd_rank_r(M, r)


def add_noise(M: np.ndarray, sigma: float, rng: RandomStream) -> np.ndarray:
    """M plus Gaussian noise rescaled so ||Z||_F = sigma ||M||_F exactly."""
    M = check_dense(M)
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if sigma == 0:
        return M.copy()
    Z = rng.generator().standard_normal(M.shape)
    Z *= sigma * np.linalg.norm(M) / np.linalg.norm(Z)
    return M + Z


def _scaled_leveraged_probs(scores: LeverageScores, m: int) -> np.ndarray:
    """Leveraged-shape probabilities scaled so the capped expected sample
    count equals m (bisection on the scale factor)."""
    base = np.add.outer(scores.mu, scores.nu)
    total = base.size
    if m >= total:
        return np.ones_like(base)
    lo, hi = 0.0, 1.0
    while np.minimum(hi * base, 1.0).sum() < m:
        hi *= 2
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if np.minimum(mid * base, 1.0).sum() < m:
            lo = mid
        else:
            hi = mid
    return np.minimum(hi * base, 1.0)


def run_trial(M: np.ndarray, F: Factorization, cfg: ExperimentConfig, m: int,
              rng: RandomStream) -> tuple[float, int]:
    """One sampling + completion trial; returns (relative error, samples)."""
    M_obs = add_noise(M, cfg.noise_sigma, rng.substream(90)) \
        if cfg.noise_sigma > 0 else M
    if cfg.scheme == "oracle-leverage":
        P = _scaled_leveraged_probs(leverage_scores(F), m)
        obs = bernoulli_sample(M_obs, P, rng.substream(1))
        if len(obs) == 0:
            return np.inf, 0
        report = complete_nuclear(obs, cfg.solver)
    elif cfg.scheme == "two-phase":
        tp = TwoPhaseConfig(cfg.r, m, cfg.beta, cfg.solver)
        report, meta = two_phase_complete(M_obs, tp, rng)
        obs = None
        n_samples = len(meta.phase1) + len(meta.phase2)
    elif cfg.scheme == "uniform":
        tp = TwoPhaseConfig(cfg.r, m, 1.0, cfg.solver)
        report, meta = two_phase_complete(M_obs, tp, rng)
        obs = None
        n_samples = len(meta.phase1)
    else:  # l1 / l2: phase 1 uniform, phase 2 element-wise on the estimate
        m1 = int(np.floor(cfg.beta * m))
        uniform = np.full(M.size, 1.0 / M.size)
        omega1 = sample_without_replacement(M_obs, uniform, m1, rng.substream(0))
        F_est = svd_rank_r(omega1.dense(), cfg.r)
        weights = comparison_distribution(cfg.scheme, F_est.matrix())
        omega2 = sample_without_replacement(M_obs, weights, m - m1,
                                            rng.substream(1), exclude=omega1)
        obs = union_observations(omega1, omega2)
        report = complete_nuclear(obs, cfg.solver)
    if obs is not None:
        n_samples = len(obs)
    rel_err = float(np.linalg.norm(report.X_hat - M) / np.linalg.norm(M))
    return rel_err, n_samples


def evaluate_cell(cfg: ExperimentConfig, m: int, early_stop: bool = False) -> dict:
    """Run cfg.trials independent completions at budget m.

    With early_stop, the cell is abandoned (and reported over the trials
    actually run) as soon as enough failures accumulate that the success
    quantile is out of reach; used by the minimal-m search.
    """
    start = time.perf_counter()
    max_failures = int(np.floor((1 - cfg.success_quantile) * cfg.trials))
    errs, counts = [], []
    failures = 0
    for t in range(cfg.trials):
        trial_rng = RandomStream(cfg.seed, t + 1)
        M, F = power_law_matrix(cfg.n, cfg.r, cfg.alpha, trial_rng.substream(7))
        try:
            err, cnt = run_trial(M, F, cfg, m, trial_rng)
        except Exception:
            err, cnt = np.inf, 0
        errs.append(err)
        counts.append(cnt)
        failures += err > cfg.success_threshold
        if early_stop and failures > max_failures:
            break
    errs = np.asarray(errs)
    counts = np.asarray(counts)
    ran = errs.size
    frac = float(np.mean(errs <= cfg.success_threshold))
    return {
        "scheme": cfg.scheme, "alpha": cfg.alpha, "beta": cfg.beta,
        "n": cfg.n, "r": cfg.r, "m": m, "trials": ran,
        "success_frac": frac,
        "ci_halfwidth": 3 * np.sqrt(max(frac * (1 - frac), 1.0 / ran) / ran),
        "median_rel_err": float(np.median(errs)),
        "mean_samples": float(counts.mean()),
        "seconds": time.perf_counter() - start,
    }


def _format_row(row: dict) -> str:
    return ",".join(str(row[k]) for k in
                    ("scheme", "alpha", "beta", "n", "r", "m", "trials",
                     "success_frac", "ci_halfwidth", "median_rel_err",
                     "mean_samples", "seconds"))


def rows_to_csv(rows: list[dict]) -> str:
    return "\n".join([CSV_HEADER] + [_format_row(r) for r in rows]) + "\n"


def cell_successful(row: dict, quantile: float) -> bool:
    return row["success_frac"] >= quantile


def success_sweep(cfg: ExperimentConfig) -> list[dict]:
    """One row per budget in the sample grid."""
    return [evaluate_cell(cfg, m) for m in cfg.sample_grid]


def minimal_successful_m(cfg: ExperimentConfig, grid=None) -> tuple[int | None, list[dict]]:
    """Smallest grid budget whose success fraction reaches the success
    quantile: coarse doubling then bisection over the sorted grid."""
    if grid is None:
        grid = cfg.sample_grid
    grid = sorted(int(m) for m in grid)
    rows = []
    results = {}

    def probe(idx):
        if idx not in results:
            row = evaluate_cell(cfg, grid[idx], early_stop=True)
            results[idx] = cell_successful(row, cfg.success_quantile)
            rows.append(row)
        return results[idx]

    # doubling scan for the first success
    hit = None
    idx, step = 0, 1
    while idx < len(grid):
        if probe(idx):
            hit = idx
            break
        idx += step
        step *= 2
    if hit is None:
        if not probe(len(grid) - 1):
            return None, rows
        hit = len(grid) - 1
    # bisect between the last known failure and the first success
    lo = max([i for i in results if i < hit and not results[i]], default=-1)
    while hit - lo > 1:
        mid = (hit + lo) // 2
        if probe(mid):
            hit = mid
        else:
            lo = mid
    return grid[hit], rows


def beta_sweep(cfg: ExperimentConfig, betas, grid=None) -> tuple[dict, list[dict]]:
    """Minimal successful m per beta; returns ({beta: m or None}, rows)."""
    minima = {}
    all_rows = []
    for beta in betas:
        sub = replace(cfg, beta=float(beta), scheme="two-phase")
        m_min, rows = minimal_successful_m(sub, grid)
        minima[float(beta)] = m_min
        all_rows.extend(rows)
    return minima, all_rows


def scaling_sweep(cfg: ExperimentConfig, ns, grid_for=None) -> tuple[dict, list[dict]]:
    """Minimal successful m per dimension n; grid_for(n) supplies the
    budget grid (defaults to multiples of n log n)."""
    if grid_for is None:
        def grid_for(n):
            base = n * np.log(n)
            return [int(c * base) for c in (4, 6, 8, 10, 12, 16, 20, 28, 40, 60)]
    minima = {}
    all_rows = []
    for n in ns:
        sub = replace(cfg, n=int(n))
        m_min, rows = minimal_successful_m(sub, grid_for(int(n)))
        minima[int(n)] = m_min
        all_rows.extend(rows)
    return minima, all_rows
