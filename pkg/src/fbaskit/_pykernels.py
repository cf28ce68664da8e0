"""Pure-Python fallback kernels.

Bit-compatible with the numba kernels in `_nbkernels`: both consume the same
xoshiro256** substreams in the same order, so sampled instances and QIP
verdicts are identical across backends. Selected via FBASKIT_BACKEND=python.
"""

from __future__ import annotations

import numpy as np

from .rng import Xoshiro256, derive_seed

NAME = "python"


def poisson_variates(seed: int, lam: float, count: int) -> np.ndarray:
    """`count` Poisson(lam) draws from one stream (testing/benchmark aid)."""
    stream = Xoshiro256(seed)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        out[i] = stream.poisson(lam)
    return out


def subset_mask(stream: Xoshiro256, n: int, size: int, exclude: int) -> int:
    """Uniform size-subset of [0, n) \\ {exclude} via partial Fisher-Yates."""
    pool = [i for i in range(n) if i != exclude]
    mask = 0
    for i in range(size):
        j = i + stream.randbelow(len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
        mask |= 1 << pool[i]
    return mask


def sample_raw(n: int, k: int, lam: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Raw generative draw: per-node Poisson counts and flat slice masks.

    Node v uses substream derive_seed(seed, v); each slice is the owner plus
    a uniform (k-1)-subset of the other nodes. No canonicalization here.
    """
    counts = np.zeros(n, dtype=np.int64)
    all_masks: list[int] = []
    for v in range(n):
        stream = Xoshiro256(derive_seed(seed, v))
        y = stream.poisson(lam)
        counts[v] = y
        owner_bit = 1 << v
        for _ in range(y):
            all_masks.append(subset_mask(stream, n, k - 1, v) | owner_bit)
    return counts, np.array(all_masks, dtype=np.uint64)


def _closure(offsets: list[int], masks: list[int], cur: int) -> int:
    """Greatest quorum within `cur`: drop unsupported nodes to a fixed point."""
    while True:
        new = 0
        m = cur
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            for i in range(offsets[v], offsets[v + 1]):
                sm = masks[i]
                if sm & cur == sm:
                    new |= low
                    break
        if new == cur:
            return cur
        cur = new


def find_disjoint(offsets: np.ndarray, masks: np.ndarray, n: int) -> tuple[bool, int, int]:
    """Exact disjoint-quorum search; returns (found, witness1, witness2).

    Branch and bound over a two-coloring of the top quorum's nodes: any
    disjoint pair (U1, U2) induces a coloring with U1 on side A and U2 on
    side B, so exploring all colorings is exhaustive. A side is pruned when
    the closure of its remaining candidate set is empty; a node outside one
    side's candidate closure is assigned to the other side (dominance).
    Deterministic: ascending node order, side A explored first.
    """
    off = [int(x) for x in offsets]
    msk = [int(x) for x in masks]
    full = (1 << n) - 1
    top = _closure(off, msk, full)
    if top == 0:
        return False, 0, 0
    nodes = [v for v in range(n) if top >> v & 1]
    nn = len(nodes)
    first = 1 << nodes[0]
    # frame: (idx of next node to color, sideA, sideB, candA, candB) where
    # candX = closure(X  union  undecided nodes)
    stack = [(1, first, 0, top, _closure(off, msk, top & ~first))]
    while stack:
        idx, a, b, cand_a, cand_b = stack.pop()
        if cand_a == 0 or cand_b == 0:
            continue
        qa = _closure(off, msk, a)
        qb = _closure(off, msk, b)
        if qa and qb:
            return True, qa, qb
        if idx == nn:
            continue
        bit = 1 << nodes[idx]
        in_a = bool(cand_a & bit)
        in_b = bool(cand_b & bit)
        if in_a and in_b:
            # LIFO: push B-assignment first so A is explored first
            stack.append((idx + 1, a, b | bit, _closure(off, msk, cand_a & ~bit), cand_b))
            stack.append((idx + 1, a | bit, b, cand_a, _closure(off, msk, cand_b & ~bit)))
        elif in_b:
            # bit can join no A-side quorum: sending it to B dominates
            stack.append((idx + 1, a, b | bit, cand_a, cand_b))
        else:
            # bit can join no B-side quorum (or neither side's)
            stack.append((idx + 1, a | bit, b, cand_a, cand_b))
    return False, 0, 0


def warmup() -> None:
    """No-op; mirrors the numba backend's JIT warmup hook."""
