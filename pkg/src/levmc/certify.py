"""Numerical checks of the convex-duality optimality machinery: the
tangent-space operator norm condition, the golfing construction of a dual
certificate, and concentration-ratio diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (ContractError, Factorization, Observations, check_dense,
                     mu_inf2_norm, mu_inf_norm, observe_entries, project_tangent,
                     project_tangent_perp, r_omega)
from .leverage import leverage_scores
from .sampling import RandomStream

DEFAULT_SIZE_CAP = 64


class SizeCapError(ValueError):
    pass


@dataclass(frozen=True)
class CertificateReport:
    operator_norm_estimate: float
    delta_frobenius_trace: np.ndarray  # ||Delta_k||_F for k = 0..k0
    tangent_residual: float            # ||P_T(Y) - UV^T||_F
    offspace_spectral: float           # ||P_Tperp(Y)||_2
    condition_operator: bool           # ||P_T R_Omega P_T - P_T|| <= 1/2
    condition_tangent_literal: bool    # tangent residual <= 1/(4 n^5)
    condition_tangent_decay: bool      # ||Delta_k||_F <= (1/2)^k sqrt(r)
    condition_offspace: bool           # ||P_Tperp(Y)|| <= 1/2
    non_square_extrapolation: bool


def operator_norm_tangent(obs: Observations, F: Factorization, tol: float = 1e-8,
                          rng: RandomStream = RandomStream(0),
                          size_cap: int = DEFAULT_SIZE_CAP,
                          max_iterations: int = 1000) -> float:
    """Power-iteration estimate of ||P_T R_Omega P_T - P_T||_op, the
    spectral norm of a self-adjoint operator on n1 x n2 matrices."""
    n1, n2 = obs.shape
    if max(n1, n2) > size_cap:
        raise SizeCapError(f"dimension {max(n1, n2)} exceeds cap {size_cap}")
    if obs.probs is None:
        raise ContractError("operator norm requires observation probabilities")

    def apply(Z):
        PZ = project_tangent(F, Z)
        return project_tangent(F, r_omega(obs, PZ)) - PZ

    Z = rng.generator().standard_normal((n1, n2))
    Z /= np.linalg.norm(Z)
    rayleigh = 0.0
    for _ in range(max_iterations):
        AZ = apply(Z)
        norm = np.linalg.norm(AZ)
        if norm == 0:
            return 0.0
        new_rayleigh = abs(float(np.sum(Z * AZ)))
        Z = AZ / norm
        if abs(new_rayleigh - rayleigh) < tol * max(new_rayleigh, 1e-300):
            rayleigh = new_rayleigh
            break
        rayleigh = new_rayleigh
    return rayleigh


def materialize_tangent_operator(obs: Observations, F: Factorization) -> np.ndarray:
    """Explicit (n1*n2) x (n1*n2) matrix of P_T R_Omega P_T - P_T, for
    oracle comparisons at small sizes."""
    n1, n2 = obs.shape
    dim = n1 * n2
    A = np.zeros((dim, dim))
    for idx in range(dim):
        E = np.zeros(dim)
        E[idx] = 1.0
        Z = E.reshape(n1, n2)
        PZ = project_tangent(F, Z)
        out = project_tangent(F, r_omega(obs, PZ)) - PZ
        A[:, idx] = out.reshape(-1)
    return A


def golfing_batch_count(n: int) -> int:
    return int(np.ceil(20 * np.log(n)))


def golfing_certificate(M: np.ndarray, F: Factorization, P: np.ndarray,
                        rng: RandomStream,
                        size_cap: int = DEFAULT_SIZE_CAP) -> CertificateReport:
    """Build the dual certificate Y = W_{k0} from k0 = ceil(20 log n)
    independent batches with per-batch probability q = 1 - (1-p)^(1/k0),
    and evaluate the optimality conditions."""
    M = check_dense(M)
    n1, n2 = M.shape
    n = max(n1, n2)
    if n > size_cap:
        raise SizeCapError(f"dimension {n} exceeds cap {size_cap}")
    P = np.asarray(P, float)
    k0 = golfing_batch_count(n)
    Q = 1.0 - (1.0 - P) ** (1.0 / k0)
    # numerically Q can hit exact 0 where P > 0 is tiny; floor to keep
    # R_Omega well defined (such entries are almost never drawn anyway)
    Q = np.maximum(Q, np.finfo(float).tiny)
    gen = rng.generator()
    UV = F.U @ F.V.T
    r = F.rank

    W = np.zeros((n1, n2))
    union_mask = np.zeros((n1, n2), dtype=bool)
    deltas = [float(np.linalg.norm(UV))]  # Delta_0 = UV^T
    for _ in range(k0):
        batch_mask = gen.random((n1, n2)) < Q
        union_mask |= batch_mask
        batch = observe_entries(M, batch_mask, probs=Q)
        delta = UV - project_tangent(F, W)
        W = W + r_omega(batch, project_tangent(F, delta))
        deltas.append(float(np.linalg.norm(UV - project_tangent(F, W))))
    Y = W
    tangent_residual = deltas[-1]
    offspace = float(np.linalg.norm(project_tangent_perp(F, Y), 2))

    union = observe_entries(M, union_mask, probs=np.maximum(P, np.finfo(float).tiny))
    op_norm = operator_norm_tangent(union, F, rng=rng.substream(1), size_cap=size_cap)

    ks = np.arange(k0 + 1)
    decay_ok = bool(np.all(np.asarray(deltas) <= 0.5**ks * np.sqrt(r) + 1e-12))
    return CertificateReport(
        operator_norm_estimate=op_norm,
        delta_frobenius_trace=np.asarray(deltas),
        tangent_residual=tangent_residual,
        offspace_spectral=offspace,
        condition_operator=op_norm <= 0.5,
        condition_tangent_literal=tangent_residual <= 1.0 / (4 * n**5),
        condition_tangent_decay=decay_ok,
        condition_offspace=offspace <= 0.5,
        non_square_extrapolation=n1 != n2,
    )


@dataclass(frozen=True)
class ConcentrationDiagnostic:
    ratios: np.ndarray
    median: float
    p95: float


def concentration_ratio(Z: np.ndarray, F: Factorization, P: np.ndarray,
                        trials: int, rng: RandomStream) -> ConcentrationDiagnostic:
    """Empirical distribution of ||(R_Omega - I) Z||_2 divided by
    (||Z||_mu(inf) + ||Z||_mu(inf,2)) over random Bernoulli draws."""
    Z = check_dense(Z)
    P = np.asarray(P, float)
    scores = leverage_scores(F)
    denom = mu_inf_norm(Z, scores, F.rank) + mu_inf2_norm(Z, scores, F.rank)
    ratios = np.empty(trials)
    for t in range(trials):
        gen = rng.substream(t).generator()
        mask = gen.random(Z.shape) < P
        obs = observe_entries(Z, mask, probs=P)
        ratios[t] = np.linalg.norm(r_omega(obs, Z) - Z, 2) / denom
    return ConcentrationDiagnostic(ratios, float(np.median(ratios)),
                                   float(np.quantile(ratios, 0.95)))
