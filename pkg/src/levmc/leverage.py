"""Leverage scores and the sampling distributions built from them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ContractError, Factorization, check_dense


class DegenerateDistributionError(ValueError):
    pass


@dataclass(frozen=True)
class LeverageScores:
    """Normalized row scores mu (length n1) and column scores nu (length
    n2): mu_i = (n1/r) ||U^T e_i||^2, similarly nu_j from V."""

    mu: np.ndarray
    nu: np.ndarray
    rank: int

    def __post_init__(self):
        mu = np.asarray(self.mu, float)
        nu = np.asarray(self.nu, float)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)
        if self.rank < 1:
            raise ContractError("rank must be positive")
        if np.any(mu < 0) or np.any(nu < 0):
            raise ContractError("leverage scores must be nonnegative")

    @property
    def mu0(self) -> float:
        """Incoherence parameter: the largest score on either side."""
        return float(max(self.mu.max(), self.nu.max()))


def leverage_scores(F: Factorization, rank: int | None = None) -> LeverageScores:
    """Leverage scores of a factorization. `rank` overrides the
    normalization rank when the factorization is rank-deficient but the
    nominal rank is known (two-phase estimation uses this)."""
    n1, n2 = F.shape
    r = F.rank if rank is None else rank
    mu = (n1 / r) * np.sum(F.U**2, axis=1)
    nu = (n2 / r) * np.sum(F.V**2, axis=1)
    return LeverageScores(mu, nu, r)


def joint_incoherence(F: Factorization) -> float:
    """Diagnostic mu_str with ||UV^T||_inf = sqrt(r * mu_str / (n1 n2))."""
    n1, n2 = F.shape
    uv_inf = np.abs(F.U @ F.V.T).max()
    return float(uv_inf**2 * n1 * n2 / F.rank)


def calibrated_c0(n1: int, n2: int, r: int, target_per_nlogn: float = 10.0) -> float:
    """Constant making the uncapped expected sample count of the leveraged
    distribution equal target_per_nlogn * n * log n (n = max dimension)."""
    n = max(n1, n2)
    return target_per_nlogn * np.log(n) / (2 * r * np.log(n1 + n2) ** 2)


def probability_floor(n1: int, n2: int) -> float:
    """min(n1, n2)^-10; underflows to 0 in double precision for n >= ~35."""
    with np.errstate(under="ignore"):
        return float(min(n1, n2)) ** -10


def leveraged_distribution(scores: LeverageScores, c0: float) -> np.ndarray:
    """Per-entry probabilities p_ij = min{c0 (mu_i + nu_j) r log^2(n1+n2)
    / min(n1,n2), 1}, floored at min(n1,n2)^-10."""
    n1, n2 = scores.mu.shape[0], scores.nu.shape[0]
    scale = c0 * scores.rank * np.log(n1 + n2) ** 2 / min(n1, n2)
    p = np.minimum(scale * np.add.outer(scores.mu, scores.nu), 1.0)
    return np.maximum(p, probability_floor(n1, n2))


def uncapped_expected_samples(scores: LeverageScores, c0: float) -> float:
    """Sum of uncapped leveraged probabilities:
    2 c0 max(n1,n2) r log^2(n1+n2), independent of the scores."""
    n1, n2 = scores.mu.shape[0], scores.nu.shape[0]
    scale = c0 * scores.rank * np.log(n1 + n2) ** 2 / min(n1, n2)
    return float(scale * (n2 * scores.mu.sum() + n1 * scores.nu.sum()))


def estimated_distribution(scores: LeverageScores) -> np.ndarray:
    """Normalized entry weights proportional to (mu_i + nu_j). Entries
    where both scores vanish get weight zero."""
    W = np.add.outer(scores.mu, scores.nu)
    total = W.sum()
    if total <= 0:
        raise DegenerateDistributionError("all leverage scores are zero")
    return W / total


def comparison_distribution(kind: str, M_est: np.ndarray) -> np.ndarray:
    """Element-wise sampling weights: uniform, l1 (prop. to |M_ij|) or l2
    (prop. to M_ij^2)."""
    M_est = check_dense(M_est)
    if kind == "uniform":
        return np.full(M_est.shape, 1.0 / M_est.size)
    if kind == "l1":
        W = np.abs(M_est)
    elif kind == "l2":
        W = M_est**2
    else:
        raise ValueError(f"unknown distribution kind {kind!r}")
    total = W.sum()
    if total <= 0:
        raise DegenerateDistributionError(f"{kind} weights on a zero matrix")
    return W / total
