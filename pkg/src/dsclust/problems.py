"""Benchmark problems and the exhaustive reference optimizer.

The benchmark family over a frame of size n has one simple support function
per nonempty subset, 2^n - 1 in total, with seeded uniform masses, to be
sorted into n clusters.  Assigning every focal set to the cluster of its
smallest element makes each cluster's focal sets share that element, so a
zero-metaconflict partition exists by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .evidence import FocalSet, Frame, SimpleSupport, _combine_entries
from .metrics import Partition, _check_c0
from .rng import SplitMix64

# Full enumeration only; past this the assignment space is a job for the
# heuristics, not the oracle.
BRUTE_FORCE_LIMIT = 10_000_000

MAX_FULL_PROBLEM_FRAME = 12


@dataclass(frozen=True)
class BenchmarkProblem:
    frame: Frame
    evidence: tuple[SimpleSupport, ...]
    n_clusters: int
    seed: int

    def __post_init__(self):
        if self.n_clusters < 1:
            raise ValueError(f"cluster count must be at least 1, got {self.n_clusters}")
        for e in self.evidence:
            if e.frame != self.frame:
                raise ValueError("every piece of evidence must live on the problem frame")

    @property
    def n_evidence(self) -> int:
        return len(self.evidence)


def generate_full_problem(n: int, seed: int) -> BenchmarkProblem:
    """Full benchmark family on a frame of size n: one simple support per
    nonempty subset in ascending bitmask order, masses drawn from the seeded
    generator, n clusters."""
    if not 2 <= n <= MAX_FULL_PROBLEM_FRAME:
        raise ValueError(f"frame size must be in [2, {MAX_FULL_PROBLEM_FRAME}], got {n}")
    frame = Frame(n)
    rng = SplitMix64(seed)
    evidence = tuple(
        SimpleSupport(FocalSet(frame, bits), rng.unit())
        for bits in frame.nonempty_subsets())
    return BenchmarkProblem(frame=frame, evidence=evidence, n_clusters=n, seed=seed)


def canonical_zero_partition(problem: BenchmarkProblem) -> Partition:
    """Cluster each focal set by its smallest element.

    Within a cluster every focal set then contains that element, no
    combination can empty out, and the metaconflict is exactly zero.
    """
    if problem.n_clusters < problem.frame.size:
        raise ValueError(
            f"need at least {problem.frame.size} clusters, got {problem.n_clusters}")
    assignment = tuple(
        (e.focal.bits & -e.focal.bits).bit_length() - 1 for e in problem.evidence)
    return Partition(assignment, problem.n_clusters)


def random_partition(n_evidence: int, r: int, seed: int) -> Partition:
    """Independent uniform cluster choice per evidence, from the seeded
    generator in evidence order."""
    if n_evidence < 1:
        raise ValueError(f"evidence count must be at least 1, got {n_evidence}")
    if r < 1:
        raise ValueError(f"cluster count must be at least 1, got {r}")
    rng = SplitMix64(seed)
    return Partition(tuple(rng.below(r) for _ in range(n_evidence)), r)


def brute_force_min(evidence: Sequence[SimpleSupport], r: int,
                    c0: float = 0.0) -> tuple[float, Partition]:
    """Exact minimum metaconflict over all assignments of the evidence to r
    clusters, with the matching partition.

    The first evidence is pinned to cluster 0 (relabeling cannot change the
    value); remaining assignments are enumerated depth-first in
    lexicographic order, folding cluster mass functions incrementally, and
    ties keep the first minimizer found.
    """
    _check_c0(c0)
    n = len(evidence)
    if n < 1:
        raise ValueError("need at least one piece of evidence")
    if r < 1:
        raise ValueError(f"cluster count must be at least 1, got {r}")
    if r ** n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"assignment space {r}**{n} exceeds the enumeration limit {BRUTE_FORCE_LIMIT}")
    frame = evidence[0].frame
    for e in evidence[1:]:
        if e.frame != frame:
            raise ValueError("every piece of evidence must live on the same frame")
    full = frame.full_bits

    assignment = [0] * n
    folds: list[dict[int, float]] = [{full: 1.0} for _ in range(r)]
    best_value = 2.0  # above any metaconflict
    best_assignment: Optional[tuple[int, ...]] = None

    def descend(idx: int) -> None:
        nonlocal best_value, best_assignment
        if idx == n:
            acc = 1.0 - c0
            for fold in folds:
                acc *= 1.0 - fold.get(0, 0.0)
            value = 1.0 - acc
            if value < best_value:
                best_value = value
                best_assignment = tuple(assignment)
            return
        e = evidence[idx]
        choices = (0,) if idx == 0 else range(r)
        for c in choices:
            saved = folds[c]
            folds[c] = _combine_entries(saved, e.focal.bits, e.mass, full)
            assignment[idx] = c
            descend(idx + 1)
            folds[c] = saved
        assignment[idx] = 0

    descend(0)
    assert best_assignment is not None
    return best_value, Partition(best_assignment, r)
