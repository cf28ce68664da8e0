"""Tests for the phase-plot renderer.

Synthetic CSVs cover parsing, aggregation, and rendering; one test drives
the real `fbaskit sweep` CLI end to end to exercise the overlay path.
"""

import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

import phase_plot

HEADER = "n,k,lambda,trial,seed,qip,elapsed_ms,timed_out"


def write_csv(path, rows):
    lines = [HEADER] + [",".join(str(x) for x in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def synthetic_rows(n, ks, lams, trials, qip_fn, timed_out_fn=lambda *a: 0):
    rows = []
    for k in ks:
        for lam in lams:
            for t in range(trials):
                rows.append(
                    (n, k, lam, t, 12345, qip_fn(k, lam, t), 7, timed_out_fn(k, lam, t))
                )
    return rows


class TestReadCsv:
    def test_parses_and_returns_single_n(self, tmp_path):
        p = tmp_path / "sweep.csv"
        write_csv(p, synthetic_rows(16, [2, 3], [1.0, 10.0], 2, lambda *a: 1))
        n, rows = phase_plot.read_sweep_csv(str(p))
        assert n == 16
        assert len(rows) == 8

    def test_rejects_wrong_header(self, tmp_path):
        p = tmp_path / "sweep.csv"
        p.write_text("n,k,lam,trial,seed,qip,elapsed_ms,timed_out\n16,2,1,0,1,1,0,0\n")
        with pytest.raises(phase_plot.InputError):
            phase_plot.read_sweep_csv(str(p))

    def test_rejects_empty_and_header_only(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        with pytest.raises(phase_plot.InputError):
            phase_plot.read_sweep_csv(str(empty))
        bare = tmp_path / "bare.csv"
        bare.write_text(HEADER + "\n")
        with pytest.raises(phase_plot.InputError):
            phase_plot.read_sweep_csv(str(bare))

    def test_rejects_mixed_n(self, tmp_path):
        p = tmp_path / "sweep.csv"
        write_csv(p, [(16, 2, 1.0, 0, 1, 1, 0, 0), (8, 2, 1.0, 0, 1, 1, 0, 0)])
        with pytest.raises(phase_plot.InputError):
            phase_plot.read_sweep_csv(str(p))


class TestAggregate:
    def test_fraction_matches_independent_count(self, tmp_path):
        p = tmp_path / "sweep.csv"
        write_csv(p, synthetic_rows(16, [2, 3, 4], [1.0, 100.0], 10,
                                    lambda k, lam, t: int(t < k)))
        _, rows = phase_plot.read_sweep_csv(str(p))
        table = phase_plot.aggregate(rows)
        for k in (2, 3, 4):
            for lam in (1.0, 100.0):
                assert table[(k, lam)] == k / 10

    def test_all_timed_out_cell_is_none(self, tmp_path):
        p = tmp_path / "sweep.csv"
        write_csv(p, synthetic_rows(16, [2, 3], [1.0], 4, lambda *a: 0,
                                    timed_out_fn=lambda k, lam, t: int(k == 3)))
        _, rows = phase_plot.read_sweep_csv(str(p))
        table = phase_plot.aggregate(rows)
        assert table[(2, 1.0)] == 0.0
        assert table[(3, 1.0)] is None


class TestRender:
    def test_uniform_csv_renders(self, tmp_path):
        out = tmp_path / "fig.png"
        table = {(k, lam): 1.0 for k in (2, 3, 4) for lam in (1.0, 10.0, 100.0)}
        phase_plot.render(16, table, str(out))
        assert out.stat().st_size > 0

    def test_step_csv_renders_two_bands(self, tmp_path):
        out = tmp_path / "fig.png"
        table = {(k, lam): (1.0 if lam < 100.0 else 0.0)
                 for k in range(2, 9) for lam in (1.0, 10.0, 100.0, 1000.0)}
        phase_plot.render(16, table, str(out), title="step test")
        assert out.stat().st_size > 0

    def test_missing_cells_hatched_without_error(self, tmp_path):
        out = tmp_path / "fig.png"
        table = {(2, 1.0): 1.0, (2, 10.0): None, (3, 1.0): 0.5, (3, 10.0): 0.0}
        phase_plot.render(16, table, str(out))
        assert out.stat().st_size > 0

    def test_nonpositive_lambda_rejected(self, tmp_path):
        with pytest.raises(phase_plot.InputError):
            phase_plot.render(16, {(2, 0.0): 1.0}, str(tmp_path / "fig.png"))

    def test_deterministic_output(self, tmp_path):
        table = {(k, lam): (k + lam) % 2 / 2 for k in (2, 3) for lam in (1.0, 10.0)}
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        phase_plot.render(16, table, str(a))
        phase_plot.render(16, table, str(b))
        assert a.read_bytes() == b.read_bytes()


class TestCli:
    def run_cli(self, *args):
        script = Path(__file__).resolve().parents[1] / "phase_plot.py"
        return subprocess.run([sys.executable, str(script), *args],
                              capture_output=True, text=True)

    def test_success_exit_0(self, tmp_path):
        p = tmp_path / "sweep.csv"
        write_csv(p, synthetic_rows(16, [2, 3], [1.0, 10.0], 3, lambda *a: 1))
        out = tmp_path / "fig.png"
        result = self.run_cli("--in", str(p), "--out", str(out), "--title", "hello")
        assert result.returncode == 0, result.stderr
        assert out.exists()

    def test_schema_error_exit_2(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("nope\n")
        result = self.run_cli("--in", str(p), "--out", str(tmp_path / "f.png"))
        assert result.returncode == 2
        assert "header" in result.stderr

    def test_missing_file_exit_2(self, tmp_path):
        result = self.run_cli("--in", str(tmp_path / "no.csv"),
                              "--out", str(tmp_path / "f.png"))
        assert result.returncode == 2

    def test_usage_error_exit_2(self):
        result = self.run_cli("--in", "only.csv")
        assert result.returncode == 2


class TestOverlayEndToEnd:
    def test_real_sweep_with_overlay(self, tmp_path):
        csv_path = tmp_path / "sweep.csv"
        sweep = subprocess.run(
            ["fbaskit", "sweep", "--n", "8", "--k-list", "2,3,5",
             "--lambda-list", "1,100,10000", "--trials", "3", "--seed", "7",
             "--jobs", "1", "--timeout", "0", "--out", str(csv_path)],
            capture_output=True, text=True,
        )
        assert sweep.returncode == 0, sweep.stderr
        out = tmp_path / "fig.png"
        script = Path(__file__).resolve().parents[1] / "phase_plot.py"
        result = subprocess.run(
            [sys.executable, str(script), "--in", str(csv_path),
             "--out", str(out), "--overlay"],
            capture_output=True, text=True,
        )
        assert result.returncode == 0, result.stderr
        assert out.stat().st_size > 0
