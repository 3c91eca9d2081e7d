import json

import numpy as np
import pytest

from dsclust import harness
from dsclust.cli import main
from dsclust.metrics import metaconflict
from dsclust.problems import generate_full_problem
from dsclust.rng import derive_seed


@pytest.fixture(scope="module")
def small_problem():
    return generate_full_problem(3, seed=21)


class TestRunOne:
    def test_neural_record_fields(self, small_problem):
        record, snaps = harness.run_one("neural", small_problem.evidence, 3, seed=5)
        assert record.method == "neural"
        assert record.seed == 5
        assert record.sweeps_or_transfers is None
        assert record.wall_ms > 0.0
        assert snaps == []
        assert record.metaconflict == metaconflict(record.partition, small_problem.evidence)

    def test_iterative_record_fields(self, small_problem):
        record, snaps = harness.run_one("iterative", small_problem.evidence, 3, seed=5)
        assert record.method == "iterative"
        assert record.converged
        assert record.sweeps_or_transfers >= record.iterations
        assert snaps == []

    def test_unknown_method(self, small_problem):
        with pytest.raises(ValueError):
            harness.run_one("annealing", small_problem.evidence, 3, seed=0)

    def test_records_are_seed_deterministic_excluding_wall_time(self, small_problem):
        a, _ = harness.run_one("neural", small_problem.evidence, 3, seed=9)
        b, _ = harness.run_one("neural", small_problem.evidence, 3, seed=9)
        assert a.metaconflict == b.metaconflict
        assert a.partition == b.partition
        assert a.iterations == b.iterations
        assert a.per_cluster_conflicts == b.per_cluster_conflicts


class TestRunBatch:
    def test_seeds_derive_from_master(self, small_problem):
        records, truncated = harness.run_batch(
            "iterative", small_problem.evidence, 3, runs=4, master_seed=77)
        assert not truncated
        assert [r.seed for r in records] == [derive_seed(77, k) for k in range(4)]

    def test_budget_truncates_but_keeps_one(self, small_problem):
        records, truncated = harness.run_batch(
            "iterative", small_problem.evidence, 3, runs=500, master_seed=1,
            budget_s=0.0)
        assert truncated
        assert len(records) >= 1

    def test_rejects_zero_runs(self, small_problem):
        with pytest.raises(ValueError):
            harness.run_batch("iterative", small_problem.evidence, 3, runs=0, master_seed=1)


class TestSummarize:
    def test_statistics(self, small_problem):
        records, _ = harness.run_batch(
            "iterative", small_problem.evidence, 3, runs=5, master_seed=3)
        s = harness.summarize(records, 3, small_problem.n_evidence)
        values = sorted(r.metaconflict for r in records)
        assert s.count == 5
        assert s.best == values[0]
        assert s.median == values[2]
        assert s.n_converged == 5
        assert not s.estimated

    def test_empty_batch_rejected(self):
        with pytest.raises(ValueError):
            harness.summarize([], 3, 7)


class TestBench:
    def test_rows_cover_sizes_and_methods(self):
        rows = harness.bench([2, 3], runs=2, master_seed=11)
        assert [(r.n, r.summary.method) for r in rows] == [
            (2, "neural"), (2, "iterative"), (3, "neural"), (3, "iterative")]
        assert rows[0].n_evidence == 3
        assert rows[2].n_evidence == 7

    def test_format_bench_stars_estimated(self):
        rows = harness.bench([2], runs=2, master_seed=11)
        rows[0].summary.estimated = True
        text = harness.format_bench(rows)
        assert "neural*" in text
        assert "iterative " in text


class TestProblemSerialization:
    def test_round_trip_exact(self, tmp_path, small_problem):
        path = tmp_path / "problem.json"
        harness.save_problem(small_problem, path)
        loaded = harness.load_problem(path)
        assert loaded == small_problem
        # Byte stability: a second save is identical.
        assert harness.problem_to_json(loaded) == path.read_text(encoding="utf-8")

    def test_json_shape(self, small_problem):
        data = json.loads(harness.problem_to_json(small_problem))
        assert data["frame_size"] == 3
        assert data["n_clusters"] == 3
        assert len(data["evidence"]) == 7
        assert data["evidence"][0]["focal"] == [1]

    def test_missing_field_is_value_error(self):
        with pytest.raises(ValueError):
            harness.problem_from_json('{"frame_size": 2}')


class TestRunsCsv:
    def test_round_trip(self, tmp_path, small_problem):
        records, _ = harness.run_batch(
            "neural", small_problem.evidence, 3, runs=3, master_seed=5)
        path = tmp_path / "runs.csv"
        harness.write_runs_csv(records, path)
        loaded = harness.read_runs_csv(path)
        assert len(loaded) == 3
        for rec, row in zip(records, loaded):
            assert row.method == rec.method
            assert row.seed == rec.seed
            assert row.metaconflict == rec.metaconflict  # 17 digits round-trip
            assert row.assignment == rec.partition.assignment

    def test_header_mismatch_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("method,notes\nneural,x\n", encoding="utf-8")
        with pytest.raises(ValueError):
            harness.read_runs_csv(path)


class TestRendering:
    def test_glyph_ramp(self):
        v = np.array([[0.1, 0.3, 0.5, 0.7, 0.9]])
        assert harness.render_snapshot(v) == " ░▒▓█"
        assert harness.render_snapshot(np.array([[1.0]])) == "█"

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            harness.render_snapshot(np.array([[1.5]]))
        with pytest.raises(ValueError):
            harness.render_snapshot(np.array([0.5]))

    def test_matrix_csv_round_trip(self):
        v = np.array([[0.125, 1.0], [0.0, 1e-17]])
        again = harness.matrix_from_csv(harness.matrix_to_csv(v))
        assert np.array_equal(v, again)
        with pytest.raises(ValueError):
            harness.matrix_from_csv("  \n ")


class TestCli:
    def test_generate_and_oracle(self, tmp_path, capsys):
        problem_path = tmp_path / "p.json"
        assert main(["generate", "--n", "3", "--seed", "4", "--out", str(problem_path)]) == 0
        assert main(["oracle", "--problem", str(problem_path)]) == 0
        out = capsys.readouterr().out
        assert "minimum metaconflict: 0" in out
        assert "assignment:" in out

    def test_cluster_csv_to_file(self, tmp_path, capsys):
        problem_path = tmp_path / "p.json"
        main(["generate", "--n", "3", "--seed", "4", "--out", str(problem_path)])
        out_path = tmp_path / "runs.csv"
        code = main(["cluster", "--problem", str(problem_path), "--method", "iterative",
                     "--runs", "3", "--seed", "9", "--out", str(out_path)])
        assert code == 0
        rows = harness.read_runs_csv(out_path)
        assert len(rows) == 3
        assert "best" in capsys.readouterr().out

    def test_cluster_json_and_param_overrides(self, tmp_path, capsys):
        problem_path = tmp_path / "p.json"
        main(["generate", "--n", "3", "--seed", "4", "--out", str(problem_path)])
        code = main(["cluster", "--problem", str(problem_path), "--method", "neural",
                     "--runs", "2", "--seed", "3", "--format", "json",
                     "--max-iters", "50", "--noise", "0.2"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["runs"]) == 2
        assert payload["summary"]["count"] == 2
        assert all(r["iterations"] <= 50 for r in payload["runs"])

    def test_bench_table(self, capsys):
        code = main(["bench", "--n-list", "2,3", "--runs", "2", "--seed", "5"])
        assert code == 0
        out = capsys.readouterr().out
        assert "method" in out
        assert "iterative" in out

    def test_analyze_prints_exact_ratio(self, capsys):
        assert main(["analyze", "--n", "6"]) == 0
        out = capsys.readouterr().out
        assert "conflicting pairs: 301" in out
        assert "0.154122" in out

    def test_render_round_trip(self, tmp_path, capsys):
        matrix_path = tmp_path / "m.csv"
        matrix_path.write_text(harness.matrix_to_csv(np.array([[0.0, 1.0]])), encoding="utf-8")
        assert main(["render", "--in", str(matrix_path)]) == 0
        assert " █" in capsys.readouterr().out

    def test_snapshot_files_written(self, tmp_path, capsys):
        problem_path = tmp_path / "p.json"
        main(["generate", "--n", "3", "--seed", "4", "--out", str(problem_path)])
        snap_dir = tmp_path / "snaps"
        code = main(["cluster", "--problem", str(problem_path), "--method", "neural",
                     "--runs", "1", "--seed", "3", "--snapshots", "25",
                     "--snapshot-out", str(snap_dir)])
        assert code == 0
        files = sorted(snap_dir.glob("run000_iter*.csv"))
        assert files
        first = harness.matrix_from_csv(files[0].read_text(encoding="utf-8"))
        assert first.shape == (7, 3)

    def test_errors_exit_nonzero(self, tmp_path, capsys):
        assert main(["generate", "--n", "99"]) == 1
        assert "error:" in capsys.readouterr().err
        assert main(["oracle", "--problem", str(tmp_path / "missing.json")]) == 1
