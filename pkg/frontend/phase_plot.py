"""Render a phase-diagram heatmap from an fbaskit sweep CSV.

Reads the `fbaskit sweep` output (header `n,k,lambda,trial,seed,qip,
elapsed_ms,timed_out`), aggregates the QIP-satisfaction fraction per
(k, lambda) cell from the raw rows, and draws a heatmap with k on the x
axis and lambda on a log-scale y axis. Cells where every trial timed out
are hatched. With --overlay, the proven-bound regions are shaded: each
cell is classified by calling `fbaskit prob` and reading its "regime"
field, and the k > n/2 always-intersect zone is marked.

Usage:
    phase_plot.py --in sweep.csv --out fig.png [--overlay] [--title ...]

Exits 0 on success, 2 on schema or configuration errors. The primary
package is consumed only through its published interfaces (the CSV
format and the `fbaskit` command line), never imported.
"""

from __future__ import annotations

import argparse
import csv
import json
import subprocess
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.patches as mpatches
import matplotlib.pyplot as plt
import numpy as np

EXPECTED_HEADER = ["n", "k", "lambda", "trial", "seed", "qip", "elapsed_ms", "timed_out"]

REGIME_STYLE = {
    "above_upper_bound": {"hatch": "xx", "edgecolor": "#c62828", "label": "above upper bound"},
    "below_lower_bound": {"hatch": "..", "edgecolor": "#1565c0", "label": "below lower bound"},
}


class InputError(Exception):
    """Schema or configuration problem in the input; maps to exit code 2."""


def read_sweep_csv(path: str) -> tuple[int, list[dict]]:
    """Parse a sweep CSV, returning (n, rows). Raises InputError."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise InputError(f"{path}: empty file") from None
            if header != EXPECTED_HEADER:
                raise InputError(
                    f"{path}: header {header!r} does not match {EXPECTED_HEADER!r}"
                )
            rows = []
            for lineno, raw in enumerate(reader, start=2):
                if len(raw) != len(EXPECTED_HEADER):
                    raise InputError(f"{path}:{lineno}: expected {len(EXPECTED_HEADER)} fields")
                try:
                    rows.append(
                        {
                            "n": int(raw[0]),
                            "k": int(raw[1]),
                            "lambda": float(raw[2]),
                            "qip": int(raw[5]),
                            "timed_out": int(raw[7]),
                        }
                    )
                except ValueError as exc:
                    raise InputError(f"{path}:{lineno}: {exc}") from None
    except OSError as exc:
        raise InputError(str(exc)) from None
    if not rows:
        raise InputError(f"{path}: no data rows")
    ns = {r["n"] for r in rows}
    if len(ns) != 1:
        raise InputError(f"{path}: expected one n per file, found {sorted(ns)}")
    return ns.pop(), rows


def aggregate(rows: list[dict]) -> dict[tuple[int, float], float | None]:
    """QIP fraction per (k, lambda) over non-timed-out rows; None if all timed out."""
    hits: dict[tuple[int, float], int] = {}
    counts: dict[tuple[int, float], int] = {}
    for r in rows:
        key = (r["k"], r["lambda"])
        counts.setdefault(key, 0)
        hits.setdefault(key, 0)
        if not r["timed_out"]:
            counts[key] += 1
            hits[key] += r["qip"]
    return {key: (hits[key] / counts[key] if counts[key] else None) for key in counts}


def classify_cell(n: int, k: int, lam: float) -> str:
    """Regime label for one grid cell, via the fbaskit CLI."""
    cmd = [
        "fbaskit", "prob",
        "--n", str(n), "--k", str(k), "--lambda", repr(lam), "--m", str(n),
    ]
    try:
        out = subprocess.run(cmd, capture_output=True, text=True, timeout=60)
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise InputError(f"overlay needs the fbaskit CLI: {exc}") from None
    if out.returncode != 0:
        return "indeterminate"
    return json.loads(out.stdout).get("regime", "indeterminate")


def _log_edges(values: list[float]) -> np.ndarray:
    """Geometric cell edges around sorted positive values."""
    v = np.asarray(values, dtype=float)
    if len(v) == 1:
        ratio = np.sqrt(10.0)
        return np.array([v[0] / ratio, v[0] * ratio])
    mids = np.sqrt(v[:-1] * v[1:])
    first = v[0] * v[0] / mids[0]
    last = v[-1] * v[-1] / mids[-1]
    return np.concatenate([[first], mids, [last]])


def render(
    n: int,
    table: dict[tuple[int, float], float | None],
    out_path: str,
    overlay: bool = False,
    title: str | None = None,
    cmap: str = "viridis",
) -> None:
    ks = sorted({k for k, _ in table})
    lams = sorted({lam for _, lam in table})
    if any(lam <= 0 for lam in lams):
        raise InputError("log-scale lambda axis requires positive lambda values")

    grid = np.ma.masked_invalid(
        [[np.nan if table.get((k, lam)) is None else table[(k, lam)] for k in ks] for lam in lams]
    )
    x_edges = np.array([ks[0] - 0.5] + [k + 0.5 for k in ks], dtype=float)
    y_edges = _log_edges(lams)

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    mesh = ax.pcolormesh(x_edges, y_edges, grid, cmap=cmap, vmin=0.0, vmax=1.0)
    ax.set_yscale("log")
    ax.set_xlabel("slice size k")
    ax.set_ylabel("slice count rate lambda")
    ax.set_xticks(ks)
    ax.set_title(title or f"Quorum intersection fraction, n={n}")
    fig.colorbar(mesh, ax=ax, label="fraction of trials satisfying QIP")

    for yi, lam in enumerate(lams):
        for xi, k in enumerate(ks):
            if table.get((k, lam)) is None:
                ax.add_patch(
                    mpatches.Rectangle(
                        (x_edges[xi], y_edges[yi]),
                        x_edges[xi + 1] - x_edges[xi],
                        y_edges[yi + 1] - y_edges[yi],
                        fill=False, hatch="////", edgecolor="gray", linewidth=0,
                    )
                )

    if overlay:
        seen: set[str] = set()
        for yi, lam in enumerate(lams):
            for xi, k in enumerate(ks):
                style = REGIME_STYLE.get(classify_cell(n, k, lam))
                if style is None:
                    continue
                ax.add_patch(
                    mpatches.Rectangle(
                        (x_edges[xi], y_edges[yi]),
                        x_edges[xi + 1] - x_edges[xi],
                        y_edges[yi + 1] - y_edges[yi],
                        fill=False, hatch=style["hatch"],
                        edgecolor=style["edgecolor"], linewidth=0,
                    )
                )
                seen.add(style["label"])
        boundary = n / 2
        if any(k > boundary for k in ks):
            ax.axvspan(boundary, x_edges[-1], color="black", alpha=0.12)
            ax.axvline(boundary, color="black", linewidth=1.0, linestyle="--")
            seen.add("k > n/2: always intersects")
        handles = []
        for label in sorted(seen):
            for style in REGIME_STYLE.values():
                if style["label"] == label:
                    handles.append(
                        mpatches.Patch(
                            fill=False, hatch=style["hatch"],
                            edgecolor=style["edgecolor"], label=label,
                        )
                    )
                    break
            else:
                handles.append(mpatches.Patch(color="black", alpha=0.12, label=label))
        if handles:
            ax.legend(handles=handles, loc="upper left", fontsize=8, framealpha=0.9)

    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="phase_plot.py",
        description="Render a QIP phase-diagram heatmap from an fbaskit sweep CSV.",
    )
    parser.add_argument("--in", dest="in_path", required=True, metavar="sweep.csv")
    parser.add_argument("--out", dest="out_path", required=True, metavar="fig.png")
    parser.add_argument("--overlay", action="store_true",
                        help="shade proven-bound regions and the k > n/2 zone")
    parser.add_argument("--title", default=None)
    parser.add_argument("--cmap", default="viridis")
    args = parser.parse_args(argv)

    try:
        n, rows = read_sweep_csv(args.in_path)
        render(n, aggregate(rows), args.out_path,
               overlay=args.overlay, title=args.title, cmap=args.cmap)
    except InputError as exc:
        print(f"phase_plot: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
