"""Shared strategies and independent reference implementations.

The reference helpers here recompute quantities the package computes, but
by a different route (explicit enumeration instead of incremental folds),
so the tests cross-check two derivations rather than one implementation
against itself.
"""

from __future__ import annotations

import itertools
import math

from hypothesis import strategies as st

from dsclust.evidence import Frame, FocalSet, SimpleSupport
from dsclust.metrics import Partition


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance-criterion PASS/FAIL block after the run."""
    try:
        from test_acceptance import CRITERION_LINES
    except ImportError:
        return
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)


def enumerate_combination(evidence):
    """Full conjunctive combination by summing over all 2^k focal choices.

    Each piece of evidence contributes either its focal set (with its mass)
    or the whole frame (with the remainder).  Exponential in len(evidence),
    so keep k small.  Returns a dict mapping subset bitmask to mass.
    """
    frame = evidence[0].frame
    out: dict[int, float] = {}
    for picks in itertools.product((False, True), repeat=len(evidence)):
        bits = frame.full_bits
        weight = 1.0
        for e, pick in zip(evidence, picks):
            if pick:
                bits &= e.focal.bits
                weight *= e.mass
            else:
                weight *= 1.0 - e.mass
        out[bits] = out.get(bits, 0.0) + weight
    return out


def enumerated_conflict(evidence):
    """Empty-set mass of the enumerated combination; 0.0 for short inputs."""
    if len(evidence) < 2:
        return 0.0
    return enumerate_combination(evidence).get(0, 0.0)


def disjoint_pair_count_by_enumeration(n: int) -> int:
    """Count unordered disjoint pairs of distinct nonempty subsets directly."""
    subsets = [frozenset(s) for r in range(1, n + 1)
               for s in itertools.combinations(range(n), r)]
    return sum(1 for a, b in itertools.combinations(subsets, 2) if not a & b)


def exhaustive_min_metaconflict(evidence, r: int, c0: float = 0.0) -> float:
    """Minimum metaconflict over every assignment, no pruning at all."""
    from dsclust.metrics import metaconflict

    best = math.inf
    for assignment in itertools.product(range(r), repeat=len(evidence)):
        best = min(best, metaconflict(Partition(assignment, r), evidence, c0))
    return best


# ---------------------------------------------------------------------------
# Strategies.

def frames(min_size: int = 1, max_size: int = 6):
    return st.integers(min_size, max_size).map(Frame)


def masses():
    # Away from the endpoints so products stay comfortably inside (0, 1).
    return st.floats(1e-6, 1.0 - 1e-6, allow_nan=False, allow_infinity=False)


@st.composite
def focal_sets(draw, frame: Frame, singleton: bool = False):
    if singleton:
        return FocalSet(frame, 1 << draw(st.integers(0, frame.size - 1)))
    bits = draw(st.integers(1, frame.full_bits))
    return FocalSet(frame, bits)


@st.composite
def evidence_lists(draw, min_len: int = 0, max_len: int = 6,
                   min_frame: int = 1, max_frame: int = 6,
                   singleton_focals: bool = False):
    frame = draw(frames(min_frame, max_frame))
    k = draw(st.integers(min_len, max_len))
    return [SimpleSupport(draw(focal_sets(frame, singleton=singleton_focals)),
                          draw(masses()))
            for _ in range(k)]


@st.composite
def partitions(draw, n_evidence: int, max_r: int = 4):
    r = draw(st.integers(1, max_r))
    assignment = tuple(draw(st.integers(0, r - 1)) for _ in range(n_evidence))
    return Partition(assignment, r)


@st.composite
def evidence_with_partition(draw, min_len: int = 2, max_len: int = 6,
                            singleton_focals: bool = False):
    evidence = draw(evidence_lists(min_len=min_len, max_len=max_len,
                                   singleton_focals=singleton_focals))
    p = draw(partitions(len(evidence)))
    return evidence, p
