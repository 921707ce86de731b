"""Randomized observation-set generation: independent Bernoulli draws,
fixed-size weighted sampling without replacement, and full-row sampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Observations, check_dense, observe_entries


class InfeasibleBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class RandomStream:
    """Reproducible RNG handle; distinct stream ids give independent
    substreams of the same seed."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence((self.seed, self.stream)))

    def substream(self, k: int) -> "RandomStream":
        return RandomStream(self.seed, self.stream * 100_003 + k + 1)


def bernoulli_sample(M: np.ndarray, P: np.ndarray, rng: RandomStream) -> Observations:
    """Include each entry independently with probability P_ij; the draw
    probabilities are recorded in the result."""
    M = check_dense(M)
    P = np.asarray(P, float)
    if P.shape != M.shape:
        raise ValueError("probability matrix shape mismatch")
    mask = rng.generator().random(M.shape) < P
    return observe_entries(M, mask, probs=P)


def sample_without_replacement(M: np.ndarray, weights: np.ndarray, m: int,
                               rng: RandomStream,
                               exclude: Observations | None = None) -> Observations:
    """Draw exactly m distinct entries by sequential weighted sampling
    without replacement (exponential-race keys), skipping `exclude`."""
    M = check_dense(M)
    w = np.asarray(weights, float).reshape(-1)
    if w.shape[0] != M.size:
        raise ValueError("weight vector length must equal the entry count")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    w = w.copy()
    if exclude is not None:
        w[exclude.flat_indices()] = 0.0
    support = np.nonzero(w > 0)[0]
    if m > support.size:
        raise InfeasibleBudgetError(
            f"budget {m} exceeds {support.size} available positive-weight entries")
    gen = rng.generator()
    keys = gen.exponential(size=support.size) / w[support]
    chosen = support[np.argpartition(keys, m - 1)[:m]] if m else support[:0]
    mask = np.zeros(M.size, dtype=bool)
    mask[chosen] = True
    return observe_entries(M, mask.reshape(M.shape))


def sample_full_rows(M: np.ndarray, p: float,
                     rng: RandomStream) -> tuple[np.ndarray, Observations]:
    """Pick each row independently with probability p and observe all of
    its entries. Returns (picked row indices, observations)."""
    M = check_dense(M)
    if not 0 <= p <= 1:
        raise ValueError("row probability must lie in [0, 1]")
    picked = np.nonzero(rng.generator().random(M.shape[0]) < p)[0]
    mask = np.zeros(M.shape, dtype=bool)
    mask[picked, :] = True
    return picked, observe_entries(M, mask)
