"""Adversarial block construction showing leveraged sampling is necessary:
a pair of rank-r matrices agreeing off one row-block strip, plus the
Monte-Carlo indistinguishability probability."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ContractError
from .sampling import RandomStream


class ConstructionError(ValueError):
    pass


class LocationInvarianceError(ValueError):
    pass


@dataclass(frozen=True)
class HardInstance:
    n: int
    r: int
    a: np.ndarray          # row leverage targets a_k
    b: np.ndarray          # column leverage targets b_k
    s: np.ndarray          # row block sizes s_k = 2n/(a_k r)
    t: np.ndarray          # column block sizes t_k = 2n/(b_k r)
    row_blocks: list       # index arrays I_k
    col_blocks: list       # index arrays J_k
    s_bar: int
    M0: np.ndarray
    M1: np.ndarray
    i0: int
    j0: int
    i_star: int
    k1: int
    k2: int


def _block_sizes(targets, n, r, label):
    sizes = 2 * n / (np.asarray(targets, float) * r)
    rounded = np.rint(sizes).astype(int)
    for k, (exact, got) in enumerate(zip(sizes, rounded)):
        if abs(exact - got) > 1e-9:
            raise ConstructionError(
                f"{label} block {k}: size 2n/({label}_k r) = {exact} is not an integer")
    if rounded.sum() != n:
        raise ConstructionError(
            f"{label} block sizes sum to {rounded.sum()}, expected n = {n} "
            "(targets must satisfy sum(1/x_k) = r/2)")
    if np.any(rounded < 1) or np.any(rounded > n):
        raise ConstructionError(f"{label} block sizes out of [1, n]")
    return rounded


def suggest_targets(n: int, r: int) -> np.ndarray:
    """Nearest feasible symmetric targets: equal blocks of size n//r with
    the remainder folded into the last block."""
    sizes = np.full(r, n // r)
    sizes[-1] += n - sizes.sum()
    return 2 * n / (sizes * r)


def construct_hard_pair(n: int, r: int, a, b, s_bar: int | None = None,
                        i0: int = 0, j0: int | None = None) -> HardInstance:
    """Block-diagonal M0 = A B^T with A_ik = 1/sqrt(s_k) on row block I_k,
    and M1 = Abar B^T flipping the (i*, k2) column with magnitude
    1/sqrt(s_bar), s_bar >= s_{k1}. M0 and M1 differ exactly on
    {i*} x J_{k2}."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    if a.shape[0] != r or b.shape[0] != r:
        raise ConstructionError("need r row targets and r column targets")
    if np.any(a < 2 / r - 1e-12) or np.any(a > 2 * n / r + 1e-12) or \
       np.any(b < 2 / r - 1e-12) or np.any(b > 2 * n / r + 1e-12):
        raise ConstructionError("targets must lie in [2/r, 2n/r]")
    s = _block_sizes(a, n, r, "a")
    t = _block_sizes(b, n, r, "b")
    row_blocks = np.split(np.arange(n), np.cumsum(s)[:-1])
    col_blocks = np.split(np.arange(n), np.cumsum(t)[:-1])

    if not 0 <= i0 < n:
        raise ConstructionError("i0 out of range")
    if j0 is None:
        # default: a column block distinct from i0's row block, with
        # t_{k2} <= s_{k1} as the proof assumes
        k1 = int(np.searchsorted(np.cumsum(s), i0, side="right"))
        candidates = [k for k in range(r) if k != k1 and t[k] <= s[k1]]
        if not candidates:
            raise ConstructionError("no column block with t_k <= s_k1 available")
        j0 = int(col_blocks[candidates[0]][0])
    k1 = int(np.searchsorted(np.cumsum(s), i0, side="right"))
    k2 = int(np.searchsorted(np.cumsum(t), j0, side="right"))
    if t[k2] > s[k1]:
        raise ConstructionError("construction requires s_k1 >= t_k2")
    if s_bar is None:
        s_bar = int(s[k1])
    if s_bar < s[k1]:
        raise ConstructionError("s_bar must be at least s_k1")

    A = np.zeros((n, r))
    B = np.zeros((n, r))
    for k in range(r):
        A[row_blocks[k], k] = 1.0 / np.sqrt(s[k])
        B[col_blocks[k], k] = 1.0 / np.sqrt(t[k])
    M0 = A @ B.T

    i_star = int(row_blocks[k1][0])
    A_bar = A.copy()
    A_bar[i_star, k2] = -1.0 / np.sqrt(s_bar)
    M1 = A_bar @ B.T
    return HardInstance(n, r, a, b, s, t, row_blocks, col_blocks, int(s_bar),
                        M0, M1, i0, j0, i_star, k1, k2)


def check_location_invariance(inst: HardInstance, P: np.ndarray) -> None:
    """Identical rows (columns) of M0 must carry identical probabilities."""
    P = np.asarray(P, float)
    n = inst.n
    if P.shape != (n, n):
        raise ContractError("probability matrix shape mismatch")
    for blocks, axis in ((inst.row_blocks, 0), (inst.col_blocks, 1)):
        for I in blocks:
            ref = np.take(P, I[0], axis=axis)
            for i in I[1:]:
                if not np.array_equal(np.take(P, i, axis=axis), ref):
                    raise LocationInvarianceError(
                        f"axis {axis}: indices {I[0]} and {i} have identical "
                        "matrix slices but different probabilities")


def boundary_block_probability(inst: HardInstance, eta: float | None = None) -> float:
    """Constant probability log(1/eta) / (2 t_{k2}) on the critical block;
    eta defaults to 1/s_{k1} (the probability-1/4 boundary)."""
    if eta is None:
        eta = 1.0 / inst.s[inst.k1]
    return float(np.log(1.0 / eta) / (2 * inst.t[inst.k2]))


@dataclass(frozen=True)
class IndistinguishabilityResult:
    empirical: float
    halfwidth: float      # 3 binomial standard errors
    analytic: float | None
    trials: int


def indistinguishability_test(inst: HardInstance, P: np.ndarray, trials: int,
                              rng: RandomStream) -> IndistinguishabilityResult:
    """Frequency of the event that some row of block I_{k1} has no observed
    entry in columns J_{k2}; on that event M0 and M1 agree on Omega."""
    P = np.asarray(P, float)
    check_location_invariance(inst, P)
    I, J = inst.row_blocks[inst.k1], inst.col_blocks[inst.k2]
    block_p = P[np.ix_(I, J)]
    gen = rng.generator()
    hits = 0
    for _ in range(trials):
        observed = gen.random(block_p.shape) < block_p
        if np.any(~observed.any(axis=1)):
            hits += 1
    freq = hits / trials
    halfwidth = 3 * np.sqrt(max(freq * (1 - freq), 1.0 / trials) / trials)
    analytic = None
    if np.ptp(block_p) == 0:
        p = float(block_p.flat[0])
        analytic = 1.0 - (1.0 - (1.0 - p) ** len(J)) ** len(I)
    return IndistinguishabilityResult(freq, float(halfwidth), analytic, trials)
