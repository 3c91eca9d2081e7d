"""Experiment orchestration: seeded run batches, summary statistics,
problem and result serialization, and text rendering of network states.

Run seeds derive from a master seed by a documented counter scheme
(rng.derive_seed), so any single run in a results file can be replayed
exactly from the problem file plus its recorded seed.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .evidence import FocalSet, Frame, SimpleSupport
from .hillclimb import optimize
from .hopfield import HyperParams, cluster, default_params
from .metrics import (
    Partition,
    cluster_conflicts,
    mcf_from_cluster_conflicts,
    per_cluster_conflict,
    per_evidence_conflict,
)
from .problems import BenchmarkProblem, generate_full_problem, random_partition
from .rng import derive_seed

METHODS = ("neural", "iterative")

CSV_COLUMNS = ("method", "run_seed", "mcf", "iterations", "sweeps_or_transfers",
               "wall_ms", "assignment")

# Five-level output ramp for rendering analog states, darkest = highest.
GLYPHS = " ░▒▓█"


@dataclass
class RunRecord:
    """One clustering run.

    iterations is the network iteration count for the neural method and the
    accepted transfer count for the iterative one; sweeps_or_transfers then
    carries the iterative method's full-scan sweep count.  The metaconflict
    is always recomputable from the partition and the problem.
    """

    method: str
    seed: int
    metaconflict: float
    iterations: int
    sweeps_or_transfers: Optional[int]
    wall_ms: float
    partition: Partition
    per_cluster_conflicts: tuple[float, ...]
    converged: bool = True


@dataclass
class Summary:
    """Statistics over one batch of runs; everything here is recomputable
    from the raw records."""

    method: str
    count: int
    best: float
    median: float
    mean: float
    mean_iterations: float
    mean_wall_ms: float
    median_per_cluster: float
    median_per_evidence: float
    n_converged: int
    estimated: bool = False


def run_one(method: str, evidence: Sequence[SimpleSupport], n_clusters: int, seed: int, *,
            c0: float = 0.0, params: Optional[HyperParams] = None,
            snapshot_every: int = 0) -> tuple[RunRecord, list[tuple[int, np.ndarray]]]:
    """One seeded run of either method; returns the record and any network
    snapshots (always empty for the iterative method)."""
    if method == "neural":
        start = time.perf_counter()
        run = cluster(evidence, n_clusters, params, seed, c0=c0, snapshot_every=snapshot_every)
        wall_ms = (time.perf_counter() - start) * 1000.0
        record = RunRecord(
            method="neural",
            seed=seed,
            metaconflict=run.metaconflict,
            iterations=run.iterations,
            sweeps_or_transfers=None,
            wall_ms=wall_ms,
            partition=run.partition,
            per_cluster_conflicts=run.per_cluster_conflicts,
            converged=run.converged,
        )
        return record, run.snapshots
    if method == "iterative":
        start = time.perf_counter()
        initial = random_partition(len(evidence), n_clusters, seed)
        result = optimize(initial, evidence, c0)
        wall_ms = (time.perf_counter() - start) * 1000.0
        conflicts = tuple(cluster_conflicts(result.final_partition, evidence))
        record = RunRecord(
            method="iterative",
            seed=seed,
            metaconflict=result.final_mcf,
            iterations=result.accepted_transfers,
            sweeps_or_transfers=result.sweeps,
            wall_ms=wall_ms,
            partition=result.final_partition,
            per_cluster_conflicts=conflicts,
            converged=True,
        )
        return record, []
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def run_batch(method: str, evidence: Sequence[SimpleSupport], n_clusters: int, runs: int,
              master_seed: int, *, c0: float = 0.0, params: Optional[HyperParams] = None,
              budget_s: Optional[float] = None) -> tuple[list[RunRecord], bool]:
    """Sequence of runs with seeds derive_seed(master_seed, 0..runs-1).

    A time budget may cut the batch short (at least one run always
    happens); the returned flag says whether it did.
    """
    if runs < 1:
        raise ValueError(f"run count must be at least 1, got {runs}")
    records: list[RunRecord] = []
    start = time.perf_counter()
    for k in range(runs):
        if budget_s is not None and records and time.perf_counter() - start > budget_s:
            return records, True
        record, _ = run_one(method, evidence, n_clusters, derive_seed(master_seed, k),
                            c0=c0, params=params)
        records.append(record)
    return records, False


def summarize(records: Sequence[RunRecord], n_clusters: int, n_evidence: int,
              estimated: bool = False) -> Summary:
    if not records:
        raise ValueError("cannot summarize an empty batch")
    values = [r.metaconflict for r in records]
    median = statistics.median(values)
    return Summary(
        method=records[0].method,
        count=len(records),
        best=min(values),
        median=median,
        mean=statistics.fmean(values),
        mean_iterations=statistics.fmean(r.iterations for r in records),
        mean_wall_ms=statistics.fmean(r.wall_ms for r in records),
        median_per_cluster=per_cluster_conflict(median, n_clusters),
        median_per_evidence=per_evidence_conflict(median, n_clusters, n_evidence),
        n_converged=sum(1 for r in records if r.converged),
        estimated=estimated,
    )


@dataclass
class BenchRow:
    n: int
    n_evidence: int
    summary: Summary
    records: list[RunRecord] = field(default_factory=list)


def bench(n_list: Sequence[int], runs: int, master_seed: int, *, c0: float = 0.0,
          budget_s: Optional[float] = None,
          methods: Sequence[str] = METHODS) -> list[BenchRow]:
    """Benchmark batches over the full problem family.

    Problem and per-method master seeds derive from the master seed by
    fixed counters, so a bench is one reproducible artifact.
    """
    rows: list[BenchRow] = []
    for n in n_list:
        problem = generate_full_problem(n, derive_seed(master_seed, n))
        for m_index, method in enumerate(methods):
            batch_seed = derive_seed(master_seed, 10_000 * (m_index + 1) + n)
            records, truncated = run_batch(
                method, problem.evidence, problem.n_clusters, runs, batch_seed,
                c0=c0, budget_s=budget_s)
            summary = summarize(records, problem.n_clusters, problem.n_evidence,
                                estimated=truncated)
            rows.append(BenchRow(n=n, n_evidence=problem.n_evidence, summary=summary,
                                 records=records))
    return rows


def format_bench(rows: Sequence[BenchRow]) -> str:
    """Aligned text table of bench results; estimated rows are starred."""
    header = (f"{'n':>3} {'N':>5} {'method':<10} {'best':>10} {'median':>10} "
              f"{'mean':>10} {'/cluster':>10} {'/evidence':>10} {'iters':>8} "
              f"{'ms':>9} {'conv':>5}")
    lines = [header, "-" * len(header)]
    for row in rows:
        s = row.summary
        star = "*" if s.estimated else ""
        lines.append(
            f"{row.n:>3} {row.n_evidence:>5} {s.method + star:<10} {s.best:>10.4f} "
            f"{s.median:>10.4f} {s.mean:>10.4f} {s.median_per_cluster:>10.4f} "
            f"{s.median_per_evidence:>10.4f} {s.mean_iterations:>8.1f} "
            f"{s.mean_wall_ms:>9.2f} {s.n_converged:>3}/{s.count}")
    return "\n".join(lines)


def _format_float(x: float) -> str:
    return format(float(x), ".17g")


def problem_to_json(problem: BenchmarkProblem) -> str:
    """Serialize a problem with 17-significant-digit masses, so the file is
    byte-stable and round-trips doubles exactly."""
    items = []
    for e in problem.evidence:
        members = ", ".join(str(m) for m in e.focal.members)
        items.append(f'    {{"focal": [{members}], "mass": {_format_float(e.mass)}}}')
    body = ",\n".join(items)
    return (
        "{\n"
        f'  "frame_size": {problem.frame.size},\n'
        f'  "evidence": [\n{body}\n  ],\n'
        f'  "n_clusters": {problem.n_clusters},\n'
        f'  "seed": {problem.seed}\n'
        "}\n"
    )


def save_problem(problem: BenchmarkProblem, path) -> None:
    Path(path).write_text(problem_to_json(problem), encoding="utf-8")


def problem_from_json(text: str) -> BenchmarkProblem:
    data = json.loads(text)
    try:
        frame = Frame(int(data["frame_size"]))
        evidence = tuple(
            SimpleSupport(FocalSet.from_members(frame, entry["focal"]), float(entry["mass"]))
            for entry in data["evidence"])
        n_clusters = int(data["n_clusters"])
        seed = int(data["seed"])
    except KeyError as exc:
        raise ValueError(f"problem file is missing field {exc.args[0]!r}") from exc
    return BenchmarkProblem(frame=frame, evidence=evidence, n_clusters=n_clusters, seed=seed)


def load_problem(path) -> BenchmarkProblem:
    return problem_from_json(Path(path).read_text(encoding="utf-8"))


def records_to_csv(records: Sequence[RunRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([
            r.method,
            r.seed,
            _format_float(r.metaconflict),
            r.iterations,
            "" if r.sweeps_or_transfers is None else r.sweeps_or_transfers,
            f"{r.wall_ms:.3f}",
            ";".join(str(c) for c in r.partition.assignment),
        ])
    return out.getvalue()


def write_runs_csv(records: Sequence[RunRecord], path) -> None:
    Path(path).write_text(records_to_csv(records), encoding="utf-8")


@dataclass
class CsvRun:
    """One parsed results row; enough to re-evaluate the run."""

    method: str
    seed: int
    metaconflict: float
    iterations: int
    sweeps_or_transfers: Optional[int]
    wall_ms: float
    assignment: tuple[int, ...]


def read_runs_csv(path) -> list[CsvRun]:
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_COLUMNS:
            raise ValueError(f"unexpected results header {reader.fieldnames}")
        rows = []
        for row in reader:
            sweeps = row["sweeps_or_transfers"]
            rows.append(CsvRun(
                method=row["method"],
                seed=int(row["run_seed"]),
                metaconflict=float(row["mcf"]),
                iterations=int(row["iterations"]),
                sweeps_or_transfers=None if sweeps == "" else int(sweeps),
                wall_ms=float(row["wall_ms"]),
                assignment=tuple(int(c) for c in row["assignment"].split(";")),
            ))
        return rows


def record_to_dict(r: RunRecord) -> dict:
    return {
        "method": r.method,
        "run_seed": r.seed,
        "mcf": r.metaconflict,
        "iterations": r.iterations,
        "sweeps_or_transfers": r.sweeps_or_transfers,
        "wall_ms": r.wall_ms,
        "assignment": list(r.partition.assignment),
        "per_cluster_conflicts": list(r.per_cluster_conflicts),
        "converged": r.converged,
    }


def render_snapshot(v_matrix) -> str:
    """Text grid of an output-voltage matrix, one row per evidence and one
    glyph per cluster column, ramped over five levels."""
    arr = np.asarray(v_matrix, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    if np.any(arr < 0.0) or np.any(arr > 1.0) or not np.all(np.isfinite(arr)):
        raise ValueError("output voltages must lie in [0, 1]")
    return "\n".join(
        "".join(GLYPHS[min(int(v * 5.0), 4)] for v in row) for row in arr)


def matrix_to_csv(v_matrix) -> str:
    arr = np.asarray(v_matrix, dtype=float)
    return "\n".join(",".join(_format_float(v) for v in row) for row in arr) + "\n"


def matrix_from_csv(text: str) -> np.ndarray:
    rows = [line.split(",") for line in text.strip().splitlines() if line.strip()]
    if not rows:
        raise ValueError("empty matrix file")
    return np.array([[float(cell) for cell in row] for row in rows], dtype=float)
