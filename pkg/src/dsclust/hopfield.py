"""Analog relaxation network that assigns evidence rows to cluster columns.

All couplings are fixed up front, there is no training.  Neuron (m, c) says
how strongly evidence m wants cluster c: it carries an input voltage u and
emits V = (1 + tanh(u / u0)) / 2.  Three signals drive it: an inhibition
from every row i proportional to the pairwise conflict weight w[i][m] for
rows leaning toward the same column, a flat crowding inhibition per occupant
of the column, and a row-wise winner-take-all inhibition from the row's
other columns.  A constant excitation bias balances the three exactly when
every row sits at the uniform 1/n output, so only noise and conflict
structure break the tie.

Rows finalize one-hot once their leader clears a threshold (or the rest of
the row has died out) and stay frozen; the run converges when every row has
finalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .evidence import SimpleSupport, clamp_conflict, cluster_conflict, conflict_weight, pairwise_conflict
from .metrics import Partition, _check_c0, mcf_from_cluster_conflicts
from .rng import SplitMix64

# Evidence count up to which the stock constants are used as-is; past it a
# calibrated schedule takes over (see default_params).
PARAM_SCALE_PIVOT = 15


@dataclass(frozen=True)
class HyperParams:
    """Network constants.  The three inhibitions are negative by convention;
    eta is the relaxation rate of the input voltages."""

    eta: float = 1e-5
    ri: float = -500.0
    gi: float = -200.0
    dti: float = -2000.0
    u0: float = 0.02
    noise_amplitude: float = 0.1
    finalize_threshold: float = 0.99
    max_iterations: int = 5000

    def __post_init__(self):
        if not self.eta > 0.0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        for name in ("ri", "gi", "dti"):
            value = getattr(self, name)
            if not value < 0.0:
                raise ValueError(f"{name} must be negative, got {value}")
        if not self.u0 > 0.0:
            raise ValueError(f"u0 must be positive, got {self.u0}")
        if self.noise_amplitude < 0.0:
            raise ValueError(f"noise amplitude must be nonnegative, got {self.noise_amplitude}")
        if not 0.0 < self.finalize_threshold < 1.0:
            raise ValueError(
                f"finalize threshold must lie in (0, 1), got {self.finalize_threshold}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be at least 1, got {self.max_iterations}")


def default_params(n_evidence: int) -> HyperParams:
    """Stock parameters up to 15 pieces of evidence; past that, a schedule
    calibrated on the full-family benchmarks.

    Crowding (gi) shrinks quadratically with N: the excitation bias eb only
    grows linearly, so anything slower leaves large clusters repelling
    their own members (the zero-conflict partitions here have cluster sizes
    up to (N+1)/2).  Conflict steering (dti) strengthens once and stays
    put, and a wider sigmoid (u0) lets weak conflict signals integrate
    before rows commit.  Calibrated, not derived; override freely.
    """
    if n_evidence < 1:
        raise ValueError(f"evidence count must be at least 1, got {n_evidence}")
    if n_evidence <= PARAM_SCALE_PIVOT:
        return HyperParams()
    return HyperParams(
        gi=-28000.0 / (n_evidence * n_evidence),
        dti=-3000.0,
        u0=min(0.1, n_evidence / 600.0),
    )


@dataclass
class NetworkState:
    """Analog state: input voltages u, outputs V, and the finalized rows.
    Treated as immutable; update_iteration returns a fresh state."""

    u: np.ndarray
    V: np.ndarray
    finalized: np.ndarray
    iteration: int


def build_weights(evidence: Sequence[SimpleSupport]) -> np.ndarray:
    """Symmetric matrix of pairwise conflict weights with a zero diagonal."""
    n = len(evidence)
    w = np.zeros((n, n), dtype=float)
    for j in range(n):
        for k in range(j + 1, n):
            value = conflict_weight(clamp_conflict(pairwise_conflict(evidence[j], evidence[k])))
            w[j, k] = value
            w[k, j] = value
    return w


def excitation_bias(n_clusters: int, n_evidence: int, gi: float, ri: float) -> float:
    """Bias that cancels the inhibitions at the uniform zero-conflict state:
    -[gi * N + (ri + gi) * (n - 1)] / n."""
    if n_clusters < 1:
        raise ValueError(f"cluster count must be at least 1, got {n_clusters}")
    if n_evidence < 1:
        raise ValueError(f"evidence count must be at least 1, got {n_evidence}")
    return -(gi * n_evidence + (ri + gi) * (n_clusters - 1)) / n_clusters


def initial_input_voltage(n_clusters: int, u0: float) -> float:
    """Voltage whose sigmoid output is exactly 1/n: u0 * atanh(2/n - 1)."""
    if n_clusters < 2:
        raise ValueError(f"cluster count must be at least 2, got {n_clusters}")
    if not u0 > 0.0:
        raise ValueError(f"u0 must be positive, got {u0}")
    return u0 * math.atanh(2.0 / n_clusters - 1.0)


def output_voltage(u, u0: float):
    """Sigmoid (1 + tanh(u / u0)) / 2, elementwise."""
    return 0.5 * (1.0 + np.tanh(np.asarray(u, dtype=float) / u0))


def init_state(n_evidence: int, n_clusters: int, params: HyperParams, seed: int) -> NetworkState:
    """Uniform start plus seeded noise.

    Every voltage is u00 + du with du drawn uniformly from
    [-noise_amplitude * u0, +noise_amplitude * u0], filled row-major so the
    state is a pure function of the seed.  No row starts finalized.
    """
    if n_evidence < 2:
        raise ValueError(f"evidence count must be at least 2, got {n_evidence}")
    u00 = initial_input_voltage(n_clusters, params.u0)
    amp = params.noise_amplitude * params.u0
    rng = SplitMix64(seed)
    u = np.empty((n_evidence, n_clusters), dtype=float)
    for m in range(n_evidence):
        for j in range(n_clusters):
            u[m, j] = u00 + rng.uniform(-amp, amp)
    return NetworkState(
        u=u,
        V=output_voltage(u, params.u0),
        finalized=np.zeros(n_evidence, dtype=bool),
        iteration=0,
    )


def row_decrease_guard(prev_row: np.ndarray, new_row: np.ndarray) -> np.ndarray:
    """Keep a row from sinking wholesale.

    If every output in the row strictly decreased, add back the smallest
    decrease so the least-affected output holds its level; relative order
    within the row is untouched.  Otherwise the row passes through.
    """
    decrease = prev_row - new_row
    if np.all(decrease > 0.0):
        return np.clip(new_row + decrease.min(), 0.0, 1.0)
    return new_row


def row_finalize_check(row: np.ndarray, threshold: float) -> Optional[np.ndarray]:
    """One-hot version of the row if it is ready to commit, else None.

    A row commits when its leader reaches the threshold, or when every
    other output has died to exactly zero.  Ties go to the lowest column.
    """
    if row.shape[0] < 2:
        raise ValueError("row must have at least 2 columns")
    top = row.max()
    second = np.partition(row, -2)[-2]
    if top >= threshold or second == 0.0:
        out = np.zeros_like(row)
        out[int(np.argmax(row))] = 1.0
        return out
    return None


def update_iteration(state: NetworkState, weights: np.ndarray, params: HyperParams,
                     eb: float) -> NetworkState:
    """One synchronous step of the relaxation dynamics.

    Non-finalized voltages move by eta times (column signal + row signal +
    eb - u); outputs follow through the sigmoid, then the decrease guard and
    the finalize check run per row.  Finalized rows are frozen but keep
    emitting their one-hot outputs to the rest of the network.
    """
    if bool(state.finalized.all()):
        return state
    coupling = params.dti * weights + params.gi  # diagonal is gi: w[m][m] = 0
    column_term = coupling @ state.V             # symmetric w, so rows index either way
    row_sums = state.V.sum(axis=1, keepdims=True)
    row_term = (params.ri + params.gi) * (row_sums - state.V)
    u_new = state.u + params.eta * (column_term + row_term + eb - state.u)
    v_new = output_voltage(u_new, params.u0)

    active = ~state.finalized
    u_next = np.where(active[:, None], u_new, state.u)
    v_next = np.where(active[:, None], v_new, state.V)
    finalized = state.finalized.copy()

    guard_rows = active & np.all(state.V - v_next > 0.0, axis=1)
    for m in np.flatnonzero(guard_rows):
        v_next[m] = row_decrease_guard(state.V[m], v_next[m])
        # Keep V = sigmoid(u) holding for live rows: pull the inputs back to
        # the guarded outputs, otherwise they sink without bound and the row
        # saturates out of the competition.
        u_next[m] = params.u0 * np.arctanh(2.0 * v_next[m] - 1.0)

    top = v_next.max(axis=1)
    second = np.partition(v_next, -2, axis=1)[:, -2]
    ready = active & ((top >= params.finalize_threshold) | (second == 0.0))
    for m in np.flatnonzero(ready):
        one_hot = row_finalize_check(v_next[m], params.finalize_threshold)
        v_next[m] = one_hot
        finalized[m] = True

    return NetworkState(u=u_next, V=v_next, finalized=finalized, iteration=state.iteration + 1)


def converged(state: NetworkState) -> bool:
    return bool(state.finalized.all())


def extract_partition(state: NetworkState) -> Partition:
    """Cluster assignment read off a fully finalized state."""
    if not converged(state):
        raise ValueError("network has not converged; not all rows are finalized")
    assignment = tuple(int(np.argmax(row)) for row in state.V)
    return Partition(assignment, state.V.shape[1])


@dataclass
class NeuralRun:
    """Result of one network run.  On non-convergence the partition is the
    greedy per-row argmax of the analog state, kept for diagnostics."""

    partition: Partition
    metaconflict: float
    per_cluster_conflicts: tuple[float, ...]
    iterations: int
    converged: bool
    snapshots: list[tuple[int, np.ndarray]] = field(default_factory=list)


def cluster(evidence: Sequence[SimpleSupport], n_clusters: int,
            params: Optional[HyperParams] = None, seed: int = 0, *,
            c0: float = 0.0, snapshot_every: int = 0) -> NeuralRun:
    """Run the network to convergence (or the iteration cap) and score the
    resulting partition.

    With snapshot_every = k > 0 the V matrix is recorded at iteration 1,
    every k-th iteration, and the final iteration.
    """
    _check_c0(c0)
    if n_clusters < 2:
        raise ValueError(f"cluster count must be at least 2, got {n_clusters}")
    n_evidence = len(evidence)
    if params is None:
        params = default_params(n_evidence)
    weights = build_weights(evidence)
    eb = excitation_bias(n_clusters, n_evidence, params.gi, params.ri)
    state = init_state(n_evidence, n_clusters, params, seed)
    snapshots: list[tuple[int, np.ndarray]] = []
    while not converged(state) and state.iteration < params.max_iterations:
        state = update_iteration(state, weights, params, eb)
        if snapshot_every > 0 and (state.iteration == 1 or state.iteration % snapshot_every == 0):
            snapshots.append((state.iteration, state.V.copy()))
    if snapshot_every > 0 and (not snapshots or snapshots[-1][0] != state.iteration):
        snapshots.append((state.iteration, state.V.copy()))
    done = converged(state)
    if done:
        partition = extract_partition(state)
    else:
        partition = Partition(tuple(int(np.argmax(row)) for row in state.V), n_clusters)
    members = partition.clusters()
    conflicts = tuple(cluster_conflict([evidence[q] for q in ms]) for ms in members)
    return NeuralRun(
        partition=partition,
        metaconflict=mcf_from_cluster_conflicts(conflicts, c0),
        per_cluster_conflicts=conflicts,
        iterations=state.iteration,
        converged=done,
        snapshots=snapshots,
    )
