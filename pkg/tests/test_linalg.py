import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from levmc.linalg import (ContractError, DimensionError, Factorization,
                          Observations, check_dense, mu_inf2_norm, mu_inf_norm,
                          observe_entries, project_tangent, project_tangent_perp,
                          r_omega, svd_rank_r)
from levmc.leverage import LeverageScores, leverage_scores


def random_factorization(gen, n1, n2, r):
    A = gen.standard_normal((n1, r))
    B = gen.standard_normal((n2, r))
    return svd_rank_r(A @ B.T, r)


# ---------------------------------------------------------------- oracles

def jacobi_svd(M, sweeps=60, tol=1e-14):
    """One-sided Jacobi SVD, written independently of np.linalg.svd:
    rotate column pairs of A until all are mutually orthogonal, then
    sigma_k = ||A_k||, u_k = A_k / sigma_k, V accumulates the rotations."""
    M = np.asarray(M, float)
    transposed = M.shape[0] < M.shape[1]
    A = (M.T if transposed else M).copy()
    n = A.shape[1]
    V = np.eye(n)
    for _ in range(sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[:, p] @ A[:, q]
                app = A[:, p] @ A[:, p]
                aqq = A[:, q] @ A[:, q]
                off = max(off, abs(apq))
                if abs(apq) <= tol * np.sqrt(app * aqq) or apq == 0:
                    continue
                tau = (aqq - app) / (2 * apq)
                t = np.sign(tau) / (abs(tau) + np.hypot(1, tau))
                c = 1 / np.hypot(1, t)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                A[:, [p, q]] = A[:, [p, q]] @ rot
                V[:, [p, q]] = V[:, [p, q]] @ rot
        if off < tol:
            break
    sigma = np.linalg.norm(A, axis=0)
    order = np.argsort(-sigma)
    sigma = sigma[order]
    keep = sigma > 1e-13 * max(sigma[0], 1e-300)
    U = A[:, order[keep]] / sigma[keep]
    V = V[:, order[keep]]
    if transposed:
        U, V = V, U
    return U, sigma[keep], V


def tangent_basis(F):
    """Explicit orthonormal basis of T = {U A^T + B V^T} inside R^(n1*n2),
    built by Gram-Schmidt over the spanning set {u_k e_j^T} U {e_i v_k^T}."""
    n1, n2 = F.shape
    span = []
    for k in range(F.rank):
        for j in range(n2):
            Z = np.zeros((n1, n2))
            Z[:, j] = F.U[:, k]
            span.append(Z.reshape(-1))
        for i in range(n1):
            Z = np.zeros((n1, n2))
            Z[i, :] = F.V[:, k]
            span.append(Z.reshape(-1))
    basis = []
    for v in span:
        w = v.copy()
        for b in basis:
            w -= (b @ w) * b
        nrm = np.linalg.norm(w)
        if nrm > 1e-10:
            basis.append(w / nrm)
    return np.array(basis)


# ------------------------------------------------------------- check_dense

def test_check_dense_rejects_bad_inputs():
    with pytest.raises(DimensionError):
        check_dense(np.ones(3))
    with pytest.raises(ContractError):
        check_dense(np.array([[1.0, np.nan]]))
    with pytest.raises(ContractError):
        check_dense(np.array([[np.inf, 1.0]]))


# ----------------------------------------------------------- Factorization

def test_factorization_validates_orthonormality():
    with pytest.raises(ContractError):
        Factorization(np.array([[1.0], [1.0]]), np.array([1.0]),
                      np.array([[1.0], [0.0]]))


def test_factorization_validates_singular_value_order():
    U = np.eye(3)[:, :2]
    with pytest.raises(ContractError):
        Factorization(U, np.array([1.0, 2.0]), U)
    with pytest.raises(ContractError):
        Factorization(U, np.array([1.0, 0.0]), U)


def test_factorization_matrix_roundtrip():
    gen = np.random.default_rng(0)
    F = random_factorization(gen, 6, 5, 2)
    assert F.rank == 2
    assert F.shape == (6, 5)
    R = svd_rank_r(F.matrix(), 2)
    assert np.allclose(R.matrix(), F.matrix(), atol=1e-12)


# -------------------------------------------------------------- svd_rank_r

def test_svd_identity():
    F = svd_rank_r(np.eye(3), 3)
    assert np.allclose(F.S, 1.0)
    assert np.allclose(F.matrix(), np.eye(3), atol=1e-12)


def test_svd_rank_one_canonical():
    M = np.zeros((2, 2))
    M[0, 0] = 1.0
    F = svd_rank_r(M, 1)
    assert np.allclose(F.S, [1.0])
    assert np.allclose(np.abs(F.U[:, 0]), [1.0, 0.0])
    assert np.allclose(np.abs(F.V[:, 0]), [1.0, 0.0])


def test_svd_exact_rank_two_reconstruction():
    gen = np.random.default_rng(1)
    M = gen.standard_normal((6, 2)) @ gen.standard_normal((2, 6))
    F = svd_rank_r(M, 2)
    assert np.linalg.norm(F.matrix() - M) <= 1e-10


def test_svd_matches_jacobi_oracle():
    gen = np.random.default_rng(2)
    for shape in ((7, 7), (9, 5), (5, 9)):
        M = gen.standard_normal(shape)
        U, S, V = jacobi_svd(M)
        r = 3
        F = svd_rank_r(M, r)
        assert np.allclose(F.S, S[:r], rtol=1e-10)
        # compare best rank-r approximations, not sign-ambiguous factors
        assert np.allclose(F.matrix(), (U[:, :r] * S[:r]) @ V[:, :r].T, atol=1e-9)


def test_svd_truncation_error_matches_tail():
    gen = np.random.default_rng(3)
    for _ in range(5):
        M = gen.standard_normal((10, 12))
        _, S, _ = jacobi_svd(M)
        for r in (1, 3, 6):
            F = svd_rank_r(M, r)
            err = np.linalg.norm(F.matrix() - M)
            assert abs(err - np.sqrt(np.sum(S[r:] ** 2))) <= 1e-9


def test_svd_rank_out_of_range():
    with pytest.raises(DimensionError):
        svd_rank_r(np.eye(3), 4)
    with pytest.raises(DimensionError):
        svd_rank_r(np.eye(3), 0)


def test_svd_drops_negligible_singular_values():
    gen = np.random.default_rng(4)
    M = gen.standard_normal((8, 2)) @ gen.standard_normal((2, 8))
    F = svd_rank_r(M, 5)
    assert F.rank == 2


# --------------------------------------------------------- Observations

def test_observations_validation():
    with pytest.raises(ContractError):
        Observations((2, 2), [0, 0], [0, 0], [1.0, 2.0])  # duplicate
    with pytest.raises(ContractError):
        Observations((2, 2), [2], [0], [1.0])  # row out of range
    with pytest.raises(ContractError):
        Observations((2, 2), [0], [0], [1.0], probs=[0.0])  # p outside (0,1]
    with pytest.raises(DimensionError):
        Observations((2, 2), [0], [0, 1], [1.0])


def test_observations_dense_and_mask():
    obs = Observations((2, 3), [0, 1], [2, 0], [5.0, -1.0])
    assert len(obs) == 2
    D = obs.dense()
    assert D[0, 2] == 5.0 and D[1, 0] == -1.0 and D.sum() == 4.0
    assert obs.mask().sum() == 2
    assert sorted(obs.flat_indices()) == [2, 3]


# ----------------------------------------------------------- project_T

def test_project_tangent_fixes_uv():
    gen = np.random.default_rng(5)
    F = random_factorization(gen, 6, 5, 2)
    Z = F.U @ F.V.T
    assert np.allclose(project_tangent(F, Z), Z, atol=1e-12)


def test_project_tangent_annihilates_orthogonal_dyad():
    gen = np.random.default_rng(6)
    F = random_factorization(gen, 6, 5, 2)
    # vectors orthogonal to col(U) and col(V)
    u = gen.standard_normal(6)
    u -= F.U @ (F.U.T @ u)
    v = gen.standard_normal(5)
    v -= F.V @ (F.V.T @ v)
    Z = np.outer(u, v)
    assert np.allclose(project_tangent(F, Z), 0.0, atol=1e-12)
    assert np.allclose(project_tangent_perp(F, Z), Z, atol=1e-12)


def test_project_tangent_matches_basis_oracle():
    gen = np.random.default_rng(7)
    F = random_factorization(gen, 5, 5, 2)
    B = tangent_basis(F)
    assert B.shape[0] == 2 * 5 + 2 * 5 - 4  # dim T = r(n1 + n2 - r)
    for _ in range(5):
        Z = gen.standard_normal((5, 5))
        direct = project_tangent(F, Z)
        oracle = (B.T @ (B @ Z.reshape(-1))).reshape(5, 5)
        assert np.allclose(direct, oracle, atol=1e-10)
        assert np.allclose(project_tangent(F, direct), direct, atol=1e-12)


def test_project_tangent_shape_mismatch():
    gen = np.random.default_rng(8)
    F = random_factorization(gen, 4, 4, 2)
    with pytest.raises(DimensionError):
        project_tangent(F, np.zeros((3, 4)))


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000))
def test_project_tangent_selfadjoint_and_pythagoras(seed):
    gen = np.random.default_rng(seed)
    n1, n2 = int(gen.integers(2, 8)), int(gen.integers(2, 8))
    r = int(gen.integers(1, min(n1, n2) + 1))
    F = random_factorization(gen, n1, n2, r)
    A = gen.standard_normal((n1, n2))
    B = gen.standard_normal((n1, n2))
    lhs = np.sum(project_tangent(F, A) * B)
    rhs = np.sum(A * project_tangent(F, B))
    assert abs(lhs - rhs) <= 1e-10 * max(1, abs(lhs))
    P = project_tangent(F, A)
    Q = project_tangent_perp(F, A)
    assert np.linalg.norm(P) <= np.linalg.norm(A) + 1e-12
    assert abs(np.linalg.norm(A) ** 2
               - np.linalg.norm(P) ** 2 - np.linalg.norm(Q) ** 2) <= 1e-10


# -------------------------------------------------------------- r_omega

def test_r_omega_full_observation_identity():
    gen = np.random.default_rng(9)
    Z = gen.standard_normal((4, 4))
    obs = observe_entries(Z, np.ones((4, 4), bool), probs=np.ones((4, 4)))
    assert np.array_equal(r_omega(obs, Z), Z)


def test_r_omega_empty_set():
    Z = np.ones((3, 3))
    obs = observe_entries(Z, np.zeros((3, 3), bool), probs=np.full((3, 3), 0.5))
    assert np.array_equal(r_omega(obs, Z), np.zeros((3, 3)))


def test_r_omega_requires_probabilities():
    Z = np.ones((2, 2))
    obs = observe_entries(Z, np.ones((2, 2), bool))
    with pytest.raises(ContractError):
        r_omega(obs, Z)


def test_r_omega_monte_carlo_unbiased():
    gen_master = np.random.default_rng(10)
    Z = np.ones((50, 50))
    P = np.full((50, 50), 0.5)
    acc = np.zeros_like(Z)
    trials = 200
    for _ in range(trials):
        mask = gen_master.random(Z.shape) < P
        obs = observe_entries(Z, mask, probs=P)
        acc += r_omega(obs, Z)
    mean = acc / trials
    # per-entry std of R_Omega is sqrt((1-p)/p) = 1; 5 standard errors
    se = 1.0 / np.sqrt(trials)
    assert np.all(np.abs(mean - Z) <= 5 * se)


# -------------------------------------------------------- weighted norms

def test_mu_norms_zero_matrix():
    scores = LeverageScores(np.ones(3), np.ones(3), 1)
    assert mu_inf_norm(np.zeros((3, 3)), scores, 1) == 0.0
    assert mu_inf2_norm(np.zeros((3, 3)), scores, 1) == 0.0


def test_mu_inf_norm_exhaustive_oracle():
    Z = np.array([[1.0, -2.0, 0.5],
                  [0.0, 3.0, -1.0],
                  [4.0, 0.0, 2.0]])
    mu = np.array([0.5, 1.0, 1.5])
    nu = np.array([2.0, 0.4, 0.6])
    r = 2
    scores = LeverageScores(mu, nu, r)
    best = max(abs(Z[i, j]) * np.sqrt(3 / (mu[i] * r)) * np.sqrt(3 / (nu[j] * r))
               for i in range(3) for j in range(3))
    assert abs(mu_inf_norm(Z, scores, r) - best) <= 1e-12


def test_mu_inf2_norm_exhaustive_oracle():
    gen = np.random.default_rng(11)
    Z = gen.standard_normal((4, 4))
    mu = np.array([1.0, 0.5, 2.0, 0.5])
    nu = np.array([0.25, 1.75, 1.0, 1.0])
    r = 2
    scores = LeverageScores(mu, nu, r)
    cands = [np.sqrt(4 / (mu[i] * r)) * np.linalg.norm(Z[i]) for i in range(4)]
    cands += [np.sqrt(4 / (nu[j] * r)) * np.linalg.norm(Z[:, j]) for j in range(4)]
    assert abs(mu_inf2_norm(Z, scores, r) - max(cands)) <= 1e-12


def test_mu_norms_uv_identities():
    gen = np.random.default_rng(12)
    for _ in range(20):
        n1, n2 = int(gen.integers(3, 12)), int(gen.integers(3, 12))
        r = int(gen.integers(1, min(n1, n2) + 1))
        F = random_factorization(gen, n1, n2, r)
        scores = leverage_scores(F)
        UV = F.U @ F.V.T
        assert abs(mu_inf2_norm(UV, scores, F.rank) - 1.0) <= 1e-10
        assert mu_inf_norm(UV, scores, F.rank) <= 1.0 + 1e-10


def test_mu_norm_zero_score_conventions():
    # zero score with zero entries contributes 0; nonzero entry errors
    scores = LeverageScores(np.array([1.0, 0.0]), np.ones(2), 1)
    Z = np.array([[1.0, 1.0], [0.0, 0.0]])
    assert np.isfinite(mu_inf_norm(Z, scores, 1))
    bad = np.array([[1.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ContractError):
        mu_inf_norm(bad, scores, 1)
    with pytest.raises(ContractError):
        mu_inf2_norm(bad, scores, 1)
