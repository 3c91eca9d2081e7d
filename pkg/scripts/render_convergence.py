#!/usr/bin/env python3
"""Watch the network settle: run one neural clustering and print glyph frames.

Each frame is the output-voltage matrix (rows = evidence, columns = clusters)
rendered with a five-level glyph ramp, so convergence shows up as rows
snapping from mid-gray to a single solid block per row.
"""

import argparse

from dsclust.harness import render_snapshot
from dsclust.hopfield import cluster, default_params
from dsclust.problems import generate_full_problem


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=4, help="frame size (default 4)")
    ap.add_argument("--seed", type=int, default=0, help="noise seed")
    ap.add_argument("--problem-seed", type=int, default=7)
    ap.add_argument("--every", type=int, default=10,
                    help="snapshot stride in iterations (default 10)")
    args = ap.parse_args()

    problem = generate_full_problem(args.n, args.problem_seed)
    params = default_params(problem.n_evidence)
    run = cluster(problem.evidence, problem.n_clusters, params,
                  seed=args.seed, snapshot_every=args.every)

    for iteration, v in run.snapshots:
        print(f"--- iteration {iteration} ---")
        print(render_snapshot(v))
        print()

    status = "converged" if run.converged else "hit the iteration cap"
    print(f"{status} after {run.iterations} iterations, "
          f"metaconflict {run.metaconflict:.6g}")
    print(f"assignment: {';'.join(str(a) for a in run.partition.assignment)}")


if __name__ == "__main__":
    main()
