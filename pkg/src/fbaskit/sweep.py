"""Parameter-sweep harness: sample instances over a (k, lambda) grid and
test quorum intersection on each.

Every cell (k, lambda, trial) gets its own derived seed
derive_seed(master_seed, k, float_bits(lambda), trial), so any cell can be
re-run in isolation. Cells execute in worker processes (up to `jobs` at a
time) with a per-instance wall-clock timeout; records are sorted by
(k, lambda, trial) before writing, so the CSV bytes do not depend on the
worker count. elapsed_ms is the worker's CPU time in whole milliseconds.
"""

from __future__ import annotations

import csv
import io
import multiprocessing
import time
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Optional, Sequence

from .backend import kernels
from .errors import EmptyInput, InvalidParams
from .genmodel import GenerativeParams, sample_fbas
from .qip import brute_force_disjoint_quorums, find_disjoint_quorums
from .rng import derive_seed, float_key

SWEEP_CSV_HEADER = ["n", "k", "lambda", "trial", "seed", "qip", "elapsed_ms", "timed_out"]


@dataclass(frozen=True)
class SweepConfig:
    n: int
    k_values: tuple[int, ...]
    lambda_values: tuple[float, ...]
    trials: int
    master_seed: int
    oracle: bool = False
    jobs: int = 1
    per_instance_timeout: Optional[float] = 60.0

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidParams(f"need trials >= 1, got {self.trials}")
        if not self.k_values or not self.lambda_values:
            raise InvalidParams("k_values and lambda_values must be nonempty")
        if any(k > self.n for k in self.k_values):
            raise InvalidParams(f"every k must be <= n={self.n}")
        if any(lam < 0 for lam in self.lambda_values):
            raise InvalidParams("lambda values must be >= 0")
        if self.jobs < 1:
            raise InvalidParams(f"need jobs >= 1, got {self.jobs}")


@dataclass(frozen=True)
class SweepRecord:
    n: int
    k: int
    lam: float
    trial: int
    seed: int
    qip: int  # 1 = quorum intersection holds; meaningful only when timed_out == 0
    elapsed_ms: int
    timed_out: int


def cell_seed(master_seed: int, k: int, lam: float, trial: int) -> int:
    """Stable per-cell seed (documented: splitmix64 chain over k, lambda bits, trial)."""
    return derive_seed(master_seed, k, float_key(lam), trial)


def run_cell(n: int, k: int, lam: float, seed: int, oracle: bool) -> tuple[int, int]:
    """Sample one instance and test it; returns (qip, cpu elapsed_ms)."""
    t0 = time.process_time()
    fbas = sample_fbas(GenerativeParams(n, k, lam, seed))
    if oracle:
        verdict = brute_force_disjoint_quorums(fbas, cap=n)
    else:
        verdict = find_disjoint_quorums(fbas)
    elapsed_ms = int((time.process_time() - t0) * 1000)
    return (1 if verdict.satisfied else 0), elapsed_ms


def _cell_worker(conn, n, k, lam, seed, oracle):
    try:
        conn.send(run_cell(n, k, lam, seed, oracle))
    finally:
        conn.close()


def _run_with_processes(config: SweepConfig, cells):
    ctx = multiprocessing.get_context("fork")
    kernels.warmup()  # compile before forking so children inherit jitted code
    results = {}
    pending = list(reversed(cells))
    running = []  # (process, pipe, cell, wall start)
    try:
        while pending or running:
            while pending and len(running) < config.jobs:
                cell = pending.pop()
                k, lam, trial, seed = cell
                recv_conn, send_conn = ctx.Pipe(duplex=False)
                proc = ctx.Process(
                    target=_cell_worker,
                    args=(send_conn, config.n, k, lam, seed, config.oracle),
                )
                proc.start()
                send_conn.close()
                running.append((proc, recv_conn, cell, time.monotonic()))
            progressed = False
            still = []
            for proc, conn, cell, started in running:
                if conn.poll(0):
                    qip, elapsed_ms = conn.recv()
                    results[cell] = (qip, elapsed_ms, 0)
                    proc.join()
                    conn.close()
                    progressed = True
                elif (
                    config.per_instance_timeout is not None
                    and time.monotonic() - started > config.per_instance_timeout
                ):
                    proc.terminate()
                    proc.join()
                    conn.close()
                    results[cell] = (0, int(config.per_instance_timeout * 1000), 1)
                    progressed = True
                elif not proc.is_alive():
                    conn.close()
                    raise RuntimeError(f"sweep worker for cell {cell} died unexpectedly")
                else:
                    still.append((proc, conn, cell, started))
            running = still
            if not progressed and running:
                time.sleep(0.002)
    finally:
        for proc, conn, _, _ in running:
            proc.terminate()
            proc.join()
            conn.close()
    return results


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Run the full grid; returns records sorted by (k, lambda, trial)."""
    cells = [
        (k, lam, trial, cell_seed(config.master_seed, k, lam, trial))
        for k in config.k_values
        for lam in config.lambda_values
        for trial in range(config.trials)
    ]
    if config.jobs == 1 and config.per_instance_timeout is None:
        results = {
            cell: (*run_cell(config.n, cell[0], cell[1], cell[3], config.oracle), 0)
            for cell in cells
        }
    else:
        results = _run_with_processes(config, cells)
    records = [
        SweepRecord(config.n, k, lam, trial, seed, *results[(k, lam, trial, seed)])
        for (k, lam, trial, seed) in cells
    ]
    records.sort(key=lambda r: (r.k, r.lam, r.trial))
    return records


def format_lambda(lam: float) -> str:
    """Decimal serialization, never exponent notation."""
    if lam == int(lam):
        return str(int(lam))
    s = repr(float(lam))
    if "e" in s or "E" in s:
        s = format(Decimal(s), "f")
    return s


def sweep_records_to_csv(records: Iterable[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    for r in records:
        writer.writerow(
            [r.n, r.k, format_lambda(r.lam), r.trial, r.seed, r.qip, r.elapsed_ms, r.timed_out]
        )
    return buf.getvalue()


def write_sweep_csv(records: Iterable[SweepRecord], path: str) -> None:
    with open(path, "w", newline="") as f:
        f.write(sweep_records_to_csv(records))


def summarize_sweep(records: Sequence[SweepRecord]) -> dict[tuple[int, float], Optional[float]]:
    """Per-(k, lambda) fraction of trials where intersection held.

    Timed-out trials are excluded; a cell with every trial timed out maps to
    None (missing).
    """
    records = list(records)
    if not records:
        raise EmptyInput("no sweep records")
    if len({r.n for r in records}) != 1:
        raise InvalidParams("records span multiple universe sizes")
    cells: dict[tuple[int, float], list[int]] = {}
    for r in records:
        cells.setdefault((r.k, r.lam), []).append(r.qip if not r.timed_out else -1)
    out: dict[tuple[int, float], Optional[float]] = {}
    for key, vals in cells.items():
        good = [v for v in vals if v >= 0]
        out[key] = sum(good) / len(good) if good else None
    return out
