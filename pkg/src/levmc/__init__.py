"""Leverage-score sampling and nuclear-norm completion for coherent
low-rank matrices."""

from .linalg import (Factorization, Observations, mu_inf2_norm, mu_inf_norm,
                     observe_entries, project_tangent, project_tangent_perp,
                     r_omega, svd_rank_r)
from .leverage import (LeverageScores, calibrated_c0, comparison_distribution,
                       estimated_distribution, joint_incoherence,
                       leverage_scores, leveraged_distribution)
from .sampling import (RandomStream, bernoulli_sample, sample_full_rows,
                       sample_without_replacement)
from .solver import (SolveReport, SolverConfig, WeightMatrices, choose_weights,
                     complete_nuclear, complete_weighted, svt)
from .pipelines import (TwoPhaseConfig, row_coherent_complete,
                        two_phase_complete, union_observations)
from .harness import ExperimentConfig, add_noise, power_law_matrix

__all__ = [
    "Factorization", "Observations", "LeverageScores", "RandomStream",
    "SolverConfig", "SolveReport", "WeightMatrices", "TwoPhaseConfig",
    "ExperimentConfig",
    "svd_rank_r", "project_tangent", "project_tangent_perp", "r_omega",
    "mu_inf_norm", "mu_inf2_norm", "observe_entries",
    "leverage_scores", "joint_incoherence", "leveraged_distribution",
    "estimated_distribution", "comparison_distribution", "calibrated_c0",
    "bernoulli_sample", "sample_without_replacement", "sample_full_rows",
    "svt", "complete_nuclear", "complete_weighted", "choose_weights",
    "two_phase_complete", "row_coherent_complete", "union_observations",
    "power_law_matrix", "add_noise",
]
