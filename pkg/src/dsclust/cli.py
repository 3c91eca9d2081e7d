"""Command line harness.

Subcommands: generate a benchmark problem file, cluster a problem with
either method, bench both methods across problem sizes, print the pairwise
conflict analytics for a frame size, run the exhaustive oracle on a
problem, and render a saved output-voltage matrix as a text grid.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import harness
from .hopfield import default_params
from .metrics import (
    conflict_probability,
    conflicting_pair_count,
    expected_random_pair_conflict,
    total_pair_count,
)
from .problems import brute_force_min, generate_full_problem
from .rng import derive_seed

_PARAM_FLAGS = {
    "eta": "eta",
    "ri": "ri",
    "gi": "gi",
    "dti": "dti",
    "u0": "u0",
    "noise": "noise_amplitude",
    "threshold": "finalize_threshold",
    "max_iters": "max_iterations",
}


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("network parameters (defaults scale with the problem)")
    group.add_argument("--eta", type=float)
    group.add_argument("--ri", type=float)
    group.add_argument("--gi", type=float)
    group.add_argument("--dti", type=float)
    group.add_argument("--u0", type=float)
    group.add_argument("--noise", type=float)
    group.add_argument("--threshold", type=float)
    group.add_argument("--max-iters", type=int, dest="max_iters")


def _resolve_params(args: argparse.Namespace, n_evidence: int):
    overrides = {
        field: getattr(args, flag)
        for flag, field in _PARAM_FLAGS.items()
        if getattr(args, flag, None) is not None
    }
    params = default_params(n_evidence)
    return dataclasses.replace(params, **overrides) if overrides else params


def cmd_generate(args: argparse.Namespace) -> int:
    problem = generate_full_problem(args.n, args.seed)
    text = harness.problem_to_json(problem)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_cluster(args: argparse.Namespace) -> int:
    problem = harness.load_problem(args.problem)
    params = _resolve_params(args, problem.n_evidence)
    records = []
    snapshots = []
    for k in range(args.runs):
        record, snaps = harness.run_one(
            args.method, problem.evidence, problem.n_clusters, derive_seed(args.seed, k),
            c0=args.c0, params=params,
            snapshot_every=args.snapshots if args.method == "neural" else 0)
        records.append(record)
        snapshots.append(snaps)

    if args.snapshots and args.method == "neural":
        for k, snaps in enumerate(snapshots):
            for iteration, v in snaps:
                print(f"run {k} iteration {iteration}")
                print(harness.render_snapshot(v))
                print()
                if args.snapshot_out:
                    out_dir = Path(args.snapshot_out)
                    out_dir.mkdir(parents=True, exist_ok=True)
                    path = out_dir / f"run{k:03d}_iter{iteration:05d}.csv"
                    path.write_text(harness.matrix_to_csv(v), encoding="utf-8")

    summary = harness.summarize(records, problem.n_clusters, problem.n_evidence)
    if args.format == "json":
        payload = json.dumps({
            "runs": [harness.record_to_dict(r) for r in records],
            "summary": dataclasses.asdict(summary),
        }, indent=2)
        if args.out:
            Path(args.out).write_text(payload + "\n", encoding="utf-8")
        else:
            print(payload)
    else:
        text = harness.records_to_csv(records)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    stream = sys.stdout if args.out else sys.stderr
    print(f"{args.method}: best {summary.best:.6g}  median {summary.median:.6g}  "
          f"mean {summary.mean:.6g}  mean iterations {summary.mean_iterations:.1f}  "
          f"converged {summary.n_converged}/{summary.count}", file=stream)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    n_list = [int(part) for part in args.n_list.split(",") if part.strip()]
    if not n_list:
        raise ValueError("no frame sizes given")
    methods = [args.method] if args.method else list(harness.METHODS)
    rows = harness.bench(n_list, args.runs, args.seed, c0=args.c0,
                         budget_s=args.budget, methods=methods)
    if args.format == "csv":
        lines = ["n,n_evidence,method,best,median,mean,per_cluster_median,"
                 "per_evidence_median,mean_iterations,mean_wall_ms,converged,runs,estimated"]
        for row in rows:
            s = row.summary
            lines.append(
                f"{row.n},{row.n_evidence},{s.method},{s.best!r},{s.median!r},{s.mean!r},"
                f"{s.median_per_cluster!r},{s.median_per_evidence!r},"
                f"{s.mean_iterations!r},{s.mean_wall_ms:.3f},{s.n_converged},{s.count},"
                f"{int(s.estimated)}")
        text = "\n".join(lines) + "\n"
    else:
        text = harness.format_bench(rows) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    n = args.n
    print(f"frame size: {n}")
    print(f"total evidence pairs: {total_pair_count(n)}")
    print(f"conflicting pairs: {conflicting_pair_count(n)}")
    print(f"conflict probability: {conflict_probability(n):.6f}")
    expected = expected_random_pair_conflict(n, args.mean_mass_product)
    print(f"expected random-pair conflict (mean mass product "
          f"{args.mean_mass_product:g}): {expected:.6f}")
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    problem = harness.load_problem(args.problem)
    r = args.r if args.r is not None else problem.n_clusters
    value, partition = brute_force_min(problem.evidence, r, args.c0)
    print(f"minimum metaconflict: {format(value, '.17g')}")
    print("assignment: " + ";".join(str(c) for c in partition.assignment))
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    matrix = harness.matrix_from_csv(Path(args.infile).read_text(encoding="utf-8"))
    print(harness.render_snapshot(matrix))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsclust",
        description="Cluster belief-function evidence by conflict minimization.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a benchmark problem file")
    p.add_argument("--n", type=int, required=True, help="frame size (evidence count 2^n - 1)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cluster", help="run one method on a problem file")
    p.add_argument("--problem", required=True)
    p.add_argument("--method", choices=harness.METHODS, required=True)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="master seed; run k uses child seed k")
    p.add_argument("--c0", type=float, default=0.0, help="prior domain conflict")
    p.add_argument("--snapshots", type=int, default=0, metavar="K",
                   help="render the network state every K iterations (neural only)")
    p.add_argument("--snapshot-out", dest="snapshot_out",
                   help="directory for exact snapshot values as CSV matrices")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="results path (default stdout)")
    _add_param_flags(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("bench", help="benchmark both methods across problem sizes")
    p.add_argument("--n-list", dest="n_list", default="3,4,5,6",
                   help="comma-separated frame sizes")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c0", type=float, default=0.0)
    p.add_argument("--method", choices=harness.METHODS,
                   help="restrict to one method (default: both)")
    p.add_argument("--budget", type=float, default=120.0,
                   help="per-batch time budget in seconds; truncated batches are "
                        "reported as estimated")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("analyze", help="pairwise conflict analytics for a frame size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mean-mass-product", dest="mean_mass_product", type=float, default=0.25)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("oracle", help="exhaustive minimum metaconflict of a problem file")
    p.add_argument("--problem", required=True)
    p.add_argument("--r", type=int, help="cluster count override")
    p.add_argument("--c0", type=float, default=0.0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("render", help="render a CSV output-voltage matrix as a text grid")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
