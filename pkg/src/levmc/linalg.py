"""Dense linear-algebra substrate: rank-r SVD, tangent-space projections,
the inverse-probability restriction operator, and the leverage-weighted
max norms used throughout."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ORTHO_TOL = 1e-10


class DimensionError(ValueError):
    pass


class ContractError(ValueError):
    pass


def check_dense(M: np.ndarray) -> np.ndarray:
    """Validate a dense real matrix: 2-d, finite entries."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise DimensionError(f"expected a 2-d array, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ContractError("matrix contains NaN or Inf entries")
    return M


@dataclass(frozen=True)
class Factorization:
    """Rank-r SVD triple (U, S, V) with orthonormal U, V columns and
    positive nonincreasing singular values."""

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        U, S, V = self.U, self.S, self.V
        r = S.shape[0]
        if U.ndim != 2 or V.ndim != 2 or U.shape[1] != r or V.shape[1] != r:
            raise DimensionError("inconsistent factor shapes")
        if np.linalg.norm(U.T @ U - np.eye(r)) > ORTHO_TOL:
            raise ContractError("U columns are not orthonormal")
        if np.linalg.norm(V.T @ V - np.eye(r)) > ORTHO_TOL:
            raise ContractError("V columns are not orthonormal")
        if r > 0 and (np.any(S <= 0) or np.any(np.diff(S) > 0)):
            raise ContractError("singular values must be positive and nonincreasing")

    @property
    def rank(self) -> int:
        return self.S.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.U.shape[0], self.V.shape[0])

    def matrix(self) -> np.ndarray:
        return (self.U * self.S) @ self.V.T


@dataclass(frozen=True)
class Observations:
    """A set of observed entries (i, j, value) of an n1 x n2 matrix, with
    the sampling probabilities when drawn from a Bernoulli model."""

    shape: tuple[int, int]
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray
    probs: np.ndarray | None = None

    def __post_init__(self):
        n1, n2 = self.shape
        rows = np.asarray(self.rows, dtype=np.intp)
        cols = np.asarray(self.cols, dtype=np.intp)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "values", values)
        if not (rows.shape == cols.shape == values.shape):
            raise DimensionError("rows, cols, values must have equal length")
        if rows.size and (rows.min() < 0 or rows.max() >= n1):
            raise ContractError("row index out of range")
        if cols.size and (cols.min() < 0 or cols.max() >= n2):
            raise ContractError("column index out of range")
        flat = rows * n2 + cols
        if np.unique(flat).size != flat.size:
            raise ContractError("duplicate (i, j) entries")
        if self.probs is not None:
            probs = np.asarray(self.probs, dtype=float)
            object.__setattr__(self, "probs", probs)
            if probs.shape != values.shape:
                raise DimensionError("probs length mismatch")
            if probs.size and (probs.min() <= 0 or probs.max() > 1):
                raise ContractError("probabilities must lie in (0, 1]")

    def __len__(self) -> int:
        return self.rows.size

    def mask(self) -> np.ndarray:
        m = np.zeros(self.shape, dtype=bool)
        m[self.rows, self.cols] = True
        return m

    def dense(self) -> np.ndarray:
        """Zero-filled dense matrix with the observed values in place."""
        Z = np.zeros(self.shape)
        Z[self.rows, self.cols] = self.values
        return Z

    def flat_indices(self) -> np.ndarray:
        return self.rows * self.shape[1] + self.cols


def observe_entries(M: np.ndarray, mask: np.ndarray,
                    probs: np.ndarray | None = None) -> Observations:
    """Build an Observations record from a boolean mask over M."""
    M = check_dense(M)
    rows, cols = np.nonzero(mask)
    p = probs[rows, cols] if probs is not None else None
    return Observations(M.shape, rows, cols, M[rows, cols], p)


def svd_rank_r(M: np.ndarray, r: int) -> Factorization:
    """Best rank-r approximation via truncated SVD.

    Singular values below 1e-12 * sigma_1 are dropped, so the returned
    factorization may have rank below r for rank-deficient inputs.
    """
    M = check_dense(M)
    if not 1 <= r <= min(M.shape):
        raise DimensionError(f"rank {r} out of range for shape {M.shape}")
    try:
        U, S, Vt = np.linalg.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ContractError(f"SVD did not converge: {exc}") from exc
    keep = min(r, int(np.sum(S > 1e-12 * S[0]))) if S.size else 0
    return Factorization(U[:, :keep], S[:keep], Vt[:keep].T)


def project_tangent(F: Factorization, Z: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto T = {U A^T + B V^T}:
    U U^T Z + Z V V^T - U U^T Z V V^T."""
    Z = check_dense(Z)
    if Z.shape != F.shape:
        raise DimensionError(f"shape {Z.shape} does not match factorization {F.shape}")
    UtZ = F.U.T @ Z
    ZV = Z @ F.V
    return F.U @ UtZ + (ZV - F.U @ (UtZ @ F.V)) @ F.V.T


def project_tangent_perp(F: Factorization, Z: np.ndarray) -> np.ndarray:
    return Z - project_tangent(F, Z)


def r_omega(obs: Observations, Z: np.ndarray) -> np.ndarray:
    """(R_Omega Z)_ij = delta_ij Z_ij / p_ij; unbiased for Z under the
    Bernoulli model."""
    Z = check_dense(Z)
    if Z.shape != obs.shape:
        raise DimensionError("shape mismatch between Z and observations")
    if obs.probs is None:
        raise ContractError("r_omega requires observation probabilities")
    out = np.zeros_like(Z)
    out[obs.rows, obs.cols] = Z[obs.rows, obs.cols] / obs.probs
    return out


def _weight_vectors(Z, scores, r):
    """Row/column weights sqrt(n/(score * r)); zero-score indices demand an
    all-zero slice of Z and get weight 0 by the limit convention."""
    n1, n2 = Z.shape
    mu, nu = np.asarray(scores.mu, float), np.asarray(scores.nu, float)
    if mu.shape[0] != n1 or nu.shape[0] != n2:
        raise DimensionError("leverage score lengths do not match Z")
    dead_rows = mu == 0
    dead_cols = nu == 0
    if np.any(Z[dead_rows, :] != 0) or np.any(Z[:, dead_cols] != 0):
        raise ContractError("nonzero entry at a zero leverage score")
    wr = np.zeros(n1)
    wc = np.zeros(n2)
    wr[~dead_rows] = np.sqrt(n1 / (mu[~dead_rows] * r))
    wc[~dead_cols] = np.sqrt(n2 / (nu[~dead_cols] * r))
    return wr, wc


def mu_inf_norm(Z: np.ndarray, scores, r: int) -> float:
    """Leverage-weighted entrywise max norm:
    max_ij |Z_ij| sqrt(n1/(mu_i r)) sqrt(n2/(nu_j r))."""
    Z = check_dense(Z)
    wr, wc = _weight_vectors(Z, scores, r)
    W = np.abs(Z) * np.outer(wr, wc)
    return float(W.max()) if W.size else 0.0


def mu_inf2_norm(Z: np.ndarray, scores, r: int) -> float:
    """Leverage-weighted max of row and column Euclidean norms."""
    Z = check_dense(Z)
    wr, wc = _weight_vectors(Z, scores, r)
    row = wr * np.linalg.norm(Z, axis=1)
    col = wc * np.linalg.norm(Z, axis=0)
    return float(max(row.max(initial=0.0), col.max(initial=0.0)))
