"""Command-line entry point.

Subcommands:
  sample  draw one generative instance to fbas.json (+ .meta.json sidecar)
  check   quorum-intersection verdict for an fbas.json, optionally after
          deleting a byzantine set (witness reported in original labels)
  prob    closed-form quorum probability / expected count / regime
  sweep   (k, lambda) grid experiment to CSV
  slush   run the sampling-based majority detector

Exit codes: 0 on a completed run, 2 on usage or config errors.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import analytics
from .bitset import NodeSet
from .errors import FbaskitError
from .fbas import delete_nodes, fbas_from_json, fbas_to_json
from .genmodel import GenerativeParams, sample_fbas_with_meta
from .qip import QipStatus, brute_force_disjoint_quorums, find_disjoint_quorums
from .slush import SlushConfig, run_slush
from .sweep import SweepConfig, run_sweep, write_sweep_csv


class _Cli(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except FbaskitError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(2)


@click.group(cls=_Cli)
def main():
    """FBAS quorum-intersection toolkit."""


@main.command()
@click.option("--n", type=int, required=True, help="node count")
@click.option("--k", type=int, required=True, help="slice size (owner plus k-1 others)")
@click.option("--lambda", "lam", type=float, required=True, help="Poisson mean slice count")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", type=click.Path(), required=True, help="output fbas.json")
def sample(n, k, lam, seed, out_path):
    """Draw one instance from the generative model."""
    fbas, meta = sample_fbas_with_meta(GenerativeParams(n, k, lam, seed))
    with open(out_path, "w") as f:
        f.write(fbas_to_json(fbas))
    meta_path = os.path.splitext(out_path)[0] + ".meta.json"
    with open(meta_path, "w") as f:
        f.write(meta.to_json())
    click.echo(f"wrote {out_path} and {meta_path}", err=True)


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=True), required=True)
@click.option("--oracle", is_flag=True, help="use the exhaustive oracle instead of the engine")
@click.option("--byzantine", default="", help="comma-separated node indices to delete first")
def check(in_path, oracle, byzantine):
    """Print the quorum-intersection verdict as JSON."""
    with open(in_path) as f:
        fbas = fbas_from_json(f.read())
    inverse = None
    if byzantine:
        indices = [int(x) for x in byzantine.split(",") if x.strip() != ""]
        fbas, index_map = delete_nodes(fbas, NodeSet.of(indices, fbas.n))
        inverse = {new: old for old, new in index_map.items()}
    if oracle:
        verdict = brute_force_disjoint_quorums(fbas, cap=fbas.n)
    else:
        verdict = find_disjoint_quorums(fbas)
    if verdict.status is QipStatus.SATISFIED:
        click.echo(json.dumps({"status": "satisfied"}, sort_keys=True, separators=(",", ":")))
    else:
        u1, u2 = verdict.witness
        lists = [u1.to_list(), u2.to_list()]
        if inverse is not None:
            lists = [[inverse[v] for v in w] for w in lists]
        click.echo(
            json.dumps(
                {"status": "violated", "witness": lists},
                sort_keys=True,
                separators=(",", ":"),
            )
        )


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--lambda", "lam", type=float, required=True)
@click.option("--m", type=int, required=True, help="candidate quorum size")
@click.option("--c", type=float, default=1.0, show_default=True,
              help="polynomial exponent for the holds-w.h.p. regime cap")
def prob(n, k, lam, m, c):
    """Closed-form quorum probability, expected count, and regime."""
    p = analytics.quorum_probability(n, k, lam, m)
    expected = analytics.expected_quorum_count(n, k, lam, m)
    regime = analytics.classify_regime(n, k, lam, c)
    click.echo(
        json.dumps(
            {"p": p, "expected_count": expected, "regime": regime.value},
            sort_keys=True,
            separators=(",", ":"),
        )
    )


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--k-list", required=True, help="comma-separated k values, e.g. 2,3,4")
@click.option("--lambda-list", required=True, help="comma-separated lambda values")
@click.option("--trials", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=None, help="worker processes (default: cpu count)")
@click.option("--timeout", type=float, default=60.0, show_default=True,
              help="per-instance wall-clock timeout in seconds (0 disables)")
@click.option("--oracle", is_flag=True, help="use the exhaustive oracle instead of the engine")
@click.option("--out", "out_path", type=click.Path(), required=True, help="output sweep.csv")
def sweep(n, k_list, lambda_list, trials, seed, jobs, timeout, oracle, out_path):
    """Run the (k, lambda) grid experiment and write sweep.csv."""
    config = SweepConfig(
        n=n,
        k_values=tuple(int(x) for x in k_list.split(",")),
        lambda_values=tuple(float(x) for x in lambda_list.split(",")),
        trials=trials,
        master_seed=seed,
        oracle=oracle,
        jobs=jobs if jobs is not None else (os.cpu_count() or 1),
        per_instance_timeout=timeout if timeout and timeout > 0 else None,
    )
    for k in config.k_values:
        if k > n / 2:
            click.echo(f"note: k={k} > n/2: any two size-{k} slices intersect", err=True)
    records = run_sweep(config)
    write_sweep_csv(records, out_path)
    click.echo(f"wrote {len(records)} records to {out_path}", err=True)


@main.command()
@click.option("--size", type=int, required=True, help="population size N")
@click.option("--ones", type=int, required=True, help="number of true votes in the population")
@click.option("--k", type=int, required=True, help="samples per round")
@click.option("--phi", type=float, default=0.5, show_default=True)
@click.option("--confidence", type=float, default=0.99, show_default=True)
@click.option("--max-rounds", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def slush(size, ones, k, phi, confidence, max_rounds, seed):
    """Run the repeated-sampling majority detector; print the outcome JSON."""
    if not 0 <= ones <= size:
        raise click.UsageError(f"--ones must be in [0, {size}]")
    population = tuple(i < ones for i in range(size))
    outcome = run_slush(
        SlushConfig(
            population=population,
            k=k,
            phi=phi,
            confidence_target=confidence,
            max_rounds=max_rounds,
            seed=seed,
        )
    )
    click.echo(json.dumps(outcome.to_json_dict(), sort_keys=True, separators=(",", ":")))


if __name__ == "__main__":
    main()
