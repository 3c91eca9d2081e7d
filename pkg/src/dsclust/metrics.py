"""Partition-level conflict criteria and combinatorial analytics.

The central quantity is the metaconflict of a partition: one minus the
product of (1 - conflict) over its clusters, optionally discounted by a
prior domain conflict.  Minimizing it is equivalent to minimizing the sum
of the clusters' conflict weights, which is what both optimizers in this
package chase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .evidence import (
    MAX_FRAME_SIZE,
    SimpleSupport,
    clamp_conflict,
    cluster_conflict,
    conflict_weight,
)


@dataclass(frozen=True)
class Partition:
    """Assignment of evidence indices to clusters 0..r-1; clusters may be empty."""

    assignment: tuple[int, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if self.r < 1:
            raise ValueError(f"cluster count must be at least 1, got {self.r}")
        for q, c in enumerate(self.assignment):
            if not 0 <= c < self.r:
                raise ValueError(f"evidence {q} assigned to cluster {c}, outside [0, {self.r})")

    @property
    def n_evidence(self) -> int:
        return len(self.assignment)

    def clusters(self) -> list[list[int]]:
        """Evidence indices per cluster, ascending within each cluster."""
        out: list[list[int]] = [[] for _ in range(self.r)]
        for q, c in enumerate(self.assignment):
            out[c].append(q)
        return out

    def move(self, q: int, j: int) -> "Partition":
        """Copy of this partition with evidence q reassigned to cluster j."""
        if not 0 <= q < len(self.assignment):
            raise ValueError(f"evidence index {q} outside [0, {len(self.assignment)})")
        assignment = list(self.assignment)
        assignment[q] = j
        return Partition(tuple(assignment), self.r)


def _check_c0(c0: float) -> None:
    if not 0.0 <= c0 < 1.0:
        raise ValueError(f"domain conflict must lie in [0, 1), got {c0}")


def _check_partition(p: Partition, evidence: Sequence[SimpleSupport]) -> None:
    if len(evidence) != p.n_evidence:
        raise ValueError(
            f"partition covers {p.n_evidence} pieces of evidence, got {len(evidence)}")


def cluster_conflicts(p: Partition, evidence: Sequence[SimpleSupport]) -> list[float]:
    """Conflict of each cluster, folding members in ascending index order."""
    _check_partition(p, evidence)
    return [cluster_conflict([evidence[q] for q in members]) for members in p.clusters()]


def mcf_from_cluster_conflicts(conflicts: Iterable[float], c0: float = 0.0) -> float:
    """1 - (1 - c0) * prod(1 - c_i), multiplying in the given order."""
    _check_c0(c0)
    acc = 1.0 - c0
    for c in conflicts:
        acc *= 1.0 - c
    return 1.0 - acc


def metaconflict(p: Partition, evidence: Sequence[SimpleSupport], c0: float = 0.0) -> float:
    """Metaconflict of a partition; zero iff no cluster conflicts and c0 = 0."""
    return mcf_from_cluster_conflicts(cluster_conflicts(p, evidence), c0)


def log_objective(p: Partition, evidence: Sequence[SimpleSupport], c0: float = 0.0) -> float:
    """Sum of conflict weights over clusters plus the weight of c0.

    Equals -log(1 - metaconflict), so the two criteria rank partitions
    identically and this one is a sum of independent cluster terms.
    """
    _check_c0(c0)
    total = conflict_weight(clamp_conflict(c0))
    for c in cluster_conflicts(p, evidence):
        total += conflict_weight(clamp_conflict(c))
    return total


def pairwise_surrogate(p: Partition, weights) -> float:
    """Sum of pairwise conflict weights over co-clustered pairs.

    This is the quantity the relaxation network actually minimizes.  It is
    zero whenever the true metaconflict is zero, and overestimates the
    cluster-level log objective when disjointness shows up pairwise (it
    counts every conflicting pair separately).  It is blind to strictly
    higher-order conflict: focal sets that all overlap pairwise can still
    have an empty joint intersection, and that conflict never enters the
    pairwise sum.
    """
    w = np.asarray(weights, dtype=float)
    n = p.n_evidence
    if w.shape != (n, n):
        raise ValueError(f"weight matrix shape {w.shape} does not match {n} pieces of evidence")
    if not np.array_equal(w, w.T):
        raise ValueError("weight matrix must be symmetric")
    if np.any(np.diagonal(w) != 0.0):
        raise ValueError("weight matrix must have a zero diagonal")
    if np.any(w < 0.0):
        raise ValueError("weight matrix must be nonnegative")
    total = 0.0
    for members in p.clusters():
        for a_pos, k in enumerate(members):
            for l in members[a_pos + 1:]:
                total += w[k, l]
    return total


def per_cluster_conflict(mcf: float, n: int) -> float:
    """Conflict per cluster if n clusters shared a metaconflict evenly:
    1 - (1 - mcf)^(1/n)."""
    if not 0.0 <= mcf <= 1.0:
        raise ValueError(f"metaconflict must lie in [0, 1], got {mcf}")
    if n < 1:
        raise ValueError(f"cluster count must be at least 1, got {n}")
    return 1.0 - (1.0 - mcf) ** (1.0 / n)


def per_evidence_conflict(mcf: float, n: int, n_evidence: int) -> float:
    """Per-cluster conflict spread over the evidence: the per-cluster value
    times n / n_evidence."""
    if n_evidence < 1:
        raise ValueError(f"evidence count must be at least 1, got {n_evidence}")
    return per_cluster_conflict(mcf, n) * n / n_evidence


def _check_frame_size(n: int) -> None:
    if not 1 <= n <= MAX_FRAME_SIZE:
        raise ValueError(f"frame size must be in [1, {MAX_FRAME_SIZE}], got {n}")


def total_pair_count(n: int) -> int:
    """Unordered pairs of distinct nonempty subsets of an n-element frame:
    ((2^n - 1)^2 - (2^n - 1)) / 2."""
    _check_frame_size(n)
    m = (1 << n) - 1
    return (m * m - m) // 2


def conflicting_pair_count(n: int) -> int:
    """Unordered pairs of disjoint nonempty subsets of an n-element frame."""
    _check_frame_size(n)
    total = sum(
        math.comb(n, j) * sum(math.comb(n - j, k) for k in range(1, n - j + 1))
        for j in range(1, n))
    return total // 2


def conflict_probability(n: int) -> float:
    """Probability that two distinct random nonempty subsets are disjoint."""
    return conflicting_pair_count(n) / total_pair_count(n)


def expected_random_pair_conflict(n: int, mean_mass_product: float) -> float:
    """Expected conflict of a random evidence pair: disjointness probability
    times the mean product of their masses."""
    if not 0.0 <= mean_mass_product <= 1.0:
        raise ValueError(f"mean mass product must lie in [0, 1], got {mean_mass_product}")
    return conflict_probability(n) * mean_mass_product
