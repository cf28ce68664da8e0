"""Avalanche-style generative model for random quorum slices.

For each node v, draw Y_v ~ Poisson(lambda) and give v that many slices,
each the union of {v} with a uniform (k-1)-subset of the other nodes. Nodes
that draw zero slices stay in the universe; they simply join no quorum.

Sampling is deterministic for a fixed (n, k, lambda, seed): node v's draws
come from the substream derive_seed(seed, v), so per-node outputs do not
depend on processing order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .backend import kernels
from .bitset import MAX_UNIVERSE, NodeSet
from .errors import InvalidParams
from .fbas import Fbas, _canonicalize_node
from .rng import Xoshiro256


@dataclass(frozen=True)
class GenerativeParams:
    n: int
    k: int
    lam: float
    seed: int

    def __post_init__(self):
        if not 2 <= self.n <= MAX_UNIVERSE:
            raise InvalidParams(f"need 2 <= n <= {MAX_UNIVERSE}, got n={self.n}")
        if not 2 <= self.k <= self.n:
            raise InvalidParams(f"need 2 <= k <= n, got k={self.k}, n={self.n}")
        if not self.lam >= 0:
            raise InvalidParams(f"need lambda >= 0, got {self.lam}")
        if not 0 <= self.seed < 2**64:
            raise InvalidParams(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class SampleMeta:
    """Sidecar metadata: raw (pre-canonicalization) slice counts per node."""

    params: GenerativeParams
    raw_slice_counts: tuple[int, ...]

    def to_json(self) -> str:
        doc = {
            "params": {
                "n": self.params.n,
                "k": self.params.k,
                "lambda": self.params.lam,
                "seed": self.params.seed,
            },
            "raw_slice_counts": list(self.raw_slice_counts),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def sample_fbas_with_meta(params: GenerativeParams) -> tuple[Fbas, SampleMeta]:
    """Draw one instance plus its raw-draw metadata.

    All slices have exactly k members, so canonicalization reduces to
    deduplication (equal-size sets cannot be strict supersets).
    """
    counts, raw_masks = kernels.sample_raw(params.n, params.k, params.lam, params.seed)
    per_node: list[tuple[int, ...]] = []
    pos = 0
    for v in range(params.n):
        y = int(counts[v])
        node_masks = [int(m) for m in raw_masks[pos : pos + y]]
        pos += y
        per_node.append(_canonicalize_node(v, node_masks))
    fbas = Fbas(params.n, tuple(per_node))
    meta = SampleMeta(params, tuple(int(c) for c in counts))
    return fbas, meta


def sample_fbas(params: GenerativeParams) -> Fbas:
    """Draw one FBAS instance from the generative model."""
    return sample_fbas_with_meta(params)[0]


def sample_poisson(lam: float, stream: Xoshiro256) -> int:
    """Exact Poisson(lam) variate from `stream` (inversion / PTRS)."""
    if lam < 0:
        raise InvalidParams(f"need lambda >= 0, got {lam}")
    return stream.poisson(lam)


def sample_subset(n: int, size: int, exclude: int, stream: Xoshiro256) -> NodeSet:
    """Uniform size-subset of [0, n) \\ {exclude}."""
    if not 0 <= exclude < n:
        raise InvalidParams(f"exclude={exclude} outside universe of {n}")
    if not 0 <= size <= n - 1:
        raise InvalidParams(f"need 0 <= size <= n-1, got size={size}, n={n}")
    from ._pykernels import subset_mask

    return NodeSet(subset_mask(stream, n, size, exclude), n)
