"""End-to-end completion procedures: two-phase sampling with estimated
leverage scores, and the knowledge-free procedure for matrices with an
incoherent column space and arbitrary rows."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .leverage import (LeverageScores, calibrated_c0, estimated_distribution,
                       leverage_scores)
from .linalg import (ContractError, Observations, check_dense, observe_entries,
                     svd_rank_r)
from .sampling import RandomStream, sample_full_rows, sample_without_replacement
from .solver import SolveReport, SolverConfig, complete_nuclear


@dataclass(frozen=True)
class TwoPhaseConfig:
    rank_parameter: int
    budget: int
    beta: float
    solver: SolverConfig = SolverConfig()

    def __post_init__(self):
        if not 0 <= self.beta <= 1:
            raise ContractError("beta must lie in [0, 1]")
        if self.budget < 1:
            raise ContractError("budget must be positive")


@dataclass(frozen=True)
class TwoPhaseMetadata:
    phase1: Observations
    phase2: Observations
    estimated_scores: LeverageScores
    rank_deficiency: int  # r minus rank of the phase-1 SVD


def union_observations(a: Observations, b: Observations) -> Observations:
    mask = a.mask() | b.mask()
    dense = a.dense() + b.dense()
    return observe_entries(dense, mask)


def two_phase_complete(M: np.ndarray, cfg: TwoPhaseConfig,
                       rng: RandomStream) -> tuple[SolveReport, TwoPhaseMetadata]:
    """Phase 1: uniform sample of floor(beta*m) entries and rank-r SVD to
    estimate leverage scores. Phase 2: the remaining budget drawn without
    replacement proportional to (mu~_i + nu~_j), excluding phase 1. Then
    nuclear-norm completion on the union."""
    M = check_dense(M)
    r, m, beta = cfg.rank_parameter, cfg.budget, cfg.beta
    if m > M.size:
        raise ContractError("budget exceeds the number of entries")
    if r > min(M.shape):
        raise ContractError("rank parameter exceeds matrix dimensions")
    m1 = int(np.floor(beta * m))
    uniform = np.full(M.size, 1.0 / M.size)
    omega1 = sample_without_replacement(M, uniform, m1, rng.substream(0))
    F = svd_rank_r(omega1.dense(), r) if m1 > 0 else None
    if F is None or F.rank == 0:
        # nothing informative observed: fall back to uniform scores
        scores = LeverageScores(np.ones(M.shape[0]), np.ones(M.shape[1]), r)
        deficiency = r
    else:
        scores = leverage_scores(F, rank=r)
        deficiency = r - F.rank
    m2 = m - m1
    if m2 > 0:
        weights = estimated_distribution(scores)
        omega2 = sample_without_replacement(M, weights, m2, rng.substream(1),
                                            exclude=omega1)
    else:
        omega2 = observe_entries(M, np.zeros(M.shape, dtype=bool))
    union = union_observations(omega1, omega2)
    report = complete_nuclear(union, cfg.solver)
    return report, TwoPhaseMetadata(omega1, omega2, scores, deficiency)


@dataclass(frozen=True)
class RowCoherentResult:
    report: SolveReport
    picked_rows: np.ndarray
    estimated_nu: np.ndarray
    row_space_captured: bool
    total_samples: int


def row_coherent_complete(M: np.ndarray, mu0: float, r: int, c0: float | None,
                          rng: RandomStream,
                          solver: SolverConfig = SolverConfig()) -> RowCoherentResult:
    """Sample whole rows with probability c0*mu0*r*log(n)/n, compute the
    column leverage scores of their span (exact when the rows span the row
    space), then leveraged sampling and a nuclear-norm solve."""
    M = check_dense(M)
    n1, n2 = M.shape
    if mu0 < 1:
        raise ContractError("mu0 must be at least 1")
    n = max(n1, n2)
    if c0 is None:
        c0 = calibrated_c0(n1, n2, r)
    p_row = min(c0 * mu0 * r * np.log(n) / n1, 1.0)
    picked, row_obs = sample_full_rows(M, p_row, rng.substream(0))
    sub = M[picked, :]
    if picked.size:
        _, s_sub, Vt_sub = np.linalg.svd(sub, full_matrices=False)
        keep = int(np.sum(s_sub > 1e-12 * s_sub[0])) if s_sub.size else 0
        V_est = Vt_sub[:keep].T
    else:
        V_est = np.zeros((n2, 0))
    captured = V_est.shape[1] >= r
    nu_est = (n2 / r) * np.sum(V_est**2, axis=1)
    p = np.minimum(c0 * (mu0 + nu_est)[None, :] * r * np.log(n) ** 2 / n1, 1.0)
    P = np.broadcast_to(p, M.shape).copy()
    gen = rng.substream(1).generator()
    mask = gen.random(M.shape) < P
    mask[picked, :] = True
    obs = observe_entries(M, mask)
    report = complete_nuclear(obs, solver)
    return RowCoherentResult(report, picked, nu_est, captured, len(obs))
