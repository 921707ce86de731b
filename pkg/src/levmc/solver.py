"""Nuclear-norm minimization under equality constraints via inexact
augmented Lagrangian iterations with singular value thresholding, and the
weighted variant by the scale-solve-unscale reduction."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .linalg import ContractError, Observations, check_dense


@dataclass(frozen=True)
class SolverConfig:
    max_outer_iterations: int = 500
    penalty_initial: float | None = None  # default 1 / ||P_Omega(M)||_2
    penalty_growth: float = 1.05
    relative_residual_tolerance: float = 1e-7
    svd_rank_cap: int | None = None

    def __post_init__(self):
        if self.relative_residual_tolerance <= 0:
            raise ContractError("tolerance must be positive")
        if self.penalty_growth <= 1:
            raise ContractError("penalty growth must exceed 1")


@dataclass(frozen=True)
class SolveReport:
    X_hat: np.ndarray
    iterations: int
    final_constraint_residual: float
    nuclear_norm_value: float
    converged: bool


@dataclass(frozen=True)
class WeightMatrices:
    """Diagonals of the row weight matrix R and column weight matrix C."""

    R: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.R, float)
        C = np.asarray(self.C, float)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "C", C)
        if np.any(R <= 0) or np.any(C <= 0):
            raise ContractError("weight diagonals must be strictly positive")


def svt(M: np.ndarray, tau: float) -> np.ndarray:
    """Singular value soft-thresholding, the proximal operator of
    tau * nuclear norm."""
    M = check_dense(M)
    if tau < 0:
        raise ContractError("tau must be nonnegative")
    U, S, Vt = np.linalg.svd(M, full_matrices=False)
    S = np.maximum(S - tau, 0.0)
    keep = S > 0
    return (U[:, keep] * S[keep]) @ Vt[keep]


def _svt_step(M, tau):
    U, S, Vt = np.linalg.svd(M, full_matrices=False)
    S = np.maximum(S - tau, 0.0)
    keep = int(np.count_nonzero(S))
    return (U[:, :keep] * S[:keep]) @ Vt[:keep], S[:keep]


def complete_nuclear(obs: Observations, config: SolverConfig = SolverConfig()) -> SolveReport:
    """min ||X||_* s.t. X_ij = M_ij on Omega, by inexact ALM.

    Splitting: X + E = D with P_Omega(E) = 0, D the zero-filled observed
    matrix. X-step is SVT, E-step fills the unobserved entries, dual update
    keeps Y supported on Omega.
    """
    if len(obs) == 0:
        raise ContractError("observation set is empty")
    D = obs.dense()
    mask = obs.mask()
    unobs = ~mask
    d_scale = max(1.0, float(np.linalg.norm(D[mask])))
    spec = float(np.linalg.norm(D, 2))
    mu = config.penalty_initial if config.penalty_initial is not None else 1.0 / max(spec, 1e-12)
    X = np.zeros(obs.shape)
    E = np.zeros(obs.shape)
    Y = np.zeros(obs.shape)
    residual = np.inf
    converged = False
    it = 0
    for it in range(1, config.max_outer_iterations + 1):
        X, _ = _svt_step(D - E + Y / mu, 1.0 / mu)
        E[unobs] = (Y / mu - X)[unobs]
        gap = D - X - E
        Y += mu * gap
        mu *= config.penalty_growth
        residual = float(np.linalg.norm(gap[mask])) / d_scale
        if residual <= config.relative_residual_tolerance:
            converged = True
            break
    nuc = float(np.linalg.svd(X, compute_uv=False).sum())
    return SolveReport(X, it, residual, nuc, converged)


def choose_weights(p_row: np.ndarray, p_col: np.ndarray) -> WeightMatrices:
    """Weights aligned with product sampling p_ij = p_i^row p_j^col:
    R_i = sqrt(p_i^row sum(p^col) / n1), C_j = sqrt(p_j^col sum(p^row) / n2)."""
    p_row = np.asarray(p_row, float)
    p_col = np.asarray(p_col, float)
    if np.any(p_row <= 0) or np.any(p_col <= 0):
        raise ContractError("sampling marginals must be positive")
    R = np.sqrt(p_row * p_col.sum() / p_row.shape[0])
    C = np.sqrt(p_col * p_row.sum() / p_col.shape[0])
    return WeightMatrices(R, C)


def complete_weighted(obs: Observations, W: WeightMatrices,
                      config: SolverConfig = SolverConfig()) -> SolveReport:
    """min ||R X C||_* s.t. X_ij = M_ij on Omega: solve the unweighted
    problem on the scaled observations R_i M_ij C_j and unscale."""
    n1, n2 = obs.shape
    if W.R.shape[0] != n1 or W.C.shape[0] != n2:
        raise ContractError("weight vector lengths do not match observations")
    scaled = Observations(obs.shape, obs.rows, obs.cols,
                          obs.values * W.R[obs.rows] * W.C[obs.cols], obs.probs)
    report = complete_nuclear(scaled, config)
    X = report.X_hat / np.outer(W.R, W.C)
    return replace(report, X_hat=X)
