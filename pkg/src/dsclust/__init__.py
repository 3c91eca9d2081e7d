"""Clustering of belief-function evidence by conflict minimization.

Two optimizers over the same criterion: an analog relaxation network whose
couplings are pairwise conflict weights, and a transfer-based local search
that moves one piece of evidence at a time.  An exhaustive oracle, a
benchmark problem family, and a run harness round it out.
"""

from .evidence import (
    Frame,
    FrameMismatchError,
    FocalSet,
    MassFunction,
    SimpleSupport,
    clamp_conflict,
    cluster_conflict,
    combine_conjunctive,
    conflict_weight,
    intersect,
    pairwise_conflict,
)
from .hillclimb import ClimbResult, TransferEval, best_transfer, evaluate_transfer, is_favorable, optimize
from .hopfield import (
    HyperParams,
    NetworkState,
    NeuralRun,
    build_weights,
    cluster,
    converged,
    default_params,
    excitation_bias,
    extract_partition,
    init_state,
    initial_input_voltage,
    row_decrease_guard,
    row_finalize_check,
    update_iteration,
)
from .metrics import (
    Partition,
    cluster_conflicts,
    conflict_probability,
    conflicting_pair_count,
    expected_random_pair_conflict,
    log_objective,
    metaconflict,
    pairwise_surrogate,
    per_cluster_conflict,
    per_evidence_conflict,
    total_pair_count,
)
from .problems import (
    BenchmarkProblem,
    brute_force_min,
    canonical_zero_partition,
    generate_full_problem,
    random_partition,
)
from .rng import SplitMix64, derive_seed

__version__ = "0.1.0"

__all__ = [
    "BenchmarkProblem",
    "ClimbResult",
    "FocalSet",
    "Frame",
    "FrameMismatchError",
    "HyperParams",
    "MassFunction",
    "NetworkState",
    "NeuralRun",
    "Partition",
    "SimpleSupport",
    "SplitMix64",
    "TransferEval",
    "best_transfer",
    "brute_force_min",
    "build_weights",
    "canonical_zero_partition",
    "clamp_conflict",
    "cluster",
    "cluster_conflict",
    "cluster_conflicts",
    "combine_conjunctive",
    "conflict_probability",
    "conflict_weight",
    "conflicting_pair_count",
    "converged",
    "default_params",
    "derive_seed",
    "evaluate_transfer",
    "excitation_bias",
    "expected_random_pair_conflict",
    "extract_partition",
    "generate_full_problem",
    "init_state",
    "initial_input_voltage",
    "intersect",
    "is_favorable",
    "log_objective",
    "metaconflict",
    "optimize",
    "pairwise_conflict",
    "pairwise_surrogate",
    "per_cluster_conflict",
    "per_evidence_conflict",
    "random_partition",
    "row_decrease_guard",
    "row_finalize_check",
    "total_pair_count",
    "update_iteration",
]
