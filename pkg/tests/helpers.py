"""Shared test utilities: definitional oracles kept independent of the
bitset engine (plain Python sets, straight from the definitions)."""

from __future__ import annotations

import random

from fbaskit import Fbas, GenerativeParams, NodeSet, sample_fbas


def definitional_is_quorum(raw_slices: list[list[list[int]]], u: set[int]) -> bool:
    """Direct evaluation: u nonempty and every member has a slice inside u."""
    if not u:
        return False
    return all(any(set(s) <= u for s in raw_slices[v]) for v in u)


def raw_slices_of(fbas: Fbas) -> list[list[list[int]]]:
    return [[NodeSet(m, fbas.n).to_list() for m in masks] for masks in fbas.slice_masks]


def seeded_fbas(n: int, k: int, lam: float, seed: int) -> Fbas:
    return sample_fbas(GenerativeParams(n, k, lam, seed))


def random_raw_slices(rng: random.Random, n: int, max_slices: int = 4) -> list[list[list[int]]]:
    """Arbitrary valid raw slice lists (each slice contains its owner)."""
    out = []
    for v in range(n):
        node = []
        for _ in range(rng.randrange(max_slices + 1)):
            extra = rng.sample(range(n), rng.randrange(n))
            node.append(sorted(set(extra) | {v}))
        out.append(node)
    return out
