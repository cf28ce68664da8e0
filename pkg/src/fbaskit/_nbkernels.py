"""Numba-jitted hot kernels: generative sampling and the QIP search.

Mirrors `_pykernels` operation for operation (same xoshiro256** streams,
same branch order), so both backends produce identical instances and
verdicts. Selected by default when numba imports; force with
FBASKIT_BACKEND=numba or fall back with FBASKIT_BACKEND=python.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, uint64

NAME = "numba"

U64_MAX = uint64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True)
def _splitmix64(x):
    x = uint64(x) + uint64(0x9E3779B97F4A7C15)
    z = x
    z = (z ^ (z >> uint64(30))) * uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> uint64(27))) * uint64(0x94D049BB133111EB)
    return z ^ (z >> uint64(31))


@njit(cache=True)
def _stream_init(seed):
    s = uint64(seed)
    state = np.empty(4, dtype=np.uint64)
    state[0] = _splitmix64(s)
    state[1] = _splitmix64(state[0] ^ s)
    state[2] = _splitmix64(state[1] ^ s)
    state[3] = _splitmix64(state[2] ^ s)
    return state


@njit(cache=True)
def _next_u64(state):
    s0, s1, s2, s3 = state[0], state[1], state[2], state[3]
    x = s1 * uint64(5)
    result = ((x << uint64(7)) | (x >> uint64(57))) * uint64(9)
    t = s1 << uint64(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = (s3 << uint64(45)) | (s3 >> uint64(19))
    state[0], state[1], state[2], state[3] = s0, s1, s2, s3
    return result


@njit(cache=True)
def _uniform(state):
    return (_next_u64(state) >> uint64(11)) * 1.1102230246251565e-16  # 2^-53


@njit(cache=True)
def _randbelow(state, n):
    un = uint64(n)
    r = (U64_MAX % un + uint64(1)) % un  # 2^64 mod n
    limit_minus1 = U64_MAX - r
    while True:
        x = _next_u64(state)
        if x <= limit_minus1:
            return x % un


@njit(cache=True)
def _poisson(state, lam):
    if lam == 0.0:
        return 0
    if lam <= 10.0:
        p = math.exp(-lam)
        s = p
        x = 0
        u = _uniform(state)
        while u > s:
            x += 1
            p *= lam / x
            s += p
        return x
    # PTRS transformed rejection (Hormann 1993); exact for large lambda
    slam = math.sqrt(lam)
    loglam = math.log(lam)
    b = 0.931 + 2.53 * slam
    a = -0.059 + 0.02483 * b
    invalpha = 1.1239 + 1.1328 / (b - 3.4)
    vr = 0.9277 - 3.6224 / (b - 2.0)
    while True:
        u = _uniform(state) - 0.5
        v = _uniform(state)
        us = 0.5 - abs(u)
        k = math.floor((2.0 * a / us + b) * u + lam + 0.43)
        if us >= 0.07 and v <= vr:
            return int(k)
        if k < 0 or (us < 0.013 and v > us):
            continue
        if math.log(v) + math.log(invalpha) - math.log(a / (us * us) + b) <= (
            -lam + k * loglam - math.lgamma(k + 1.0)
        ):
            return int(k)


@njit(cache=True)
def _poisson_variates(seed, lam, count):
    state = _stream_init(seed)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        out[i] = _poisson(state, lam)
    return out


def poisson_variates(seed: int, lam: float, count: int) -> np.ndarray:
    return _poisson_variates(uint64(seed), float(lam), int(count))


@njit(cache=True)
def _subset_mask(state, n, size, exclude):
    pool = np.empty(n - 1, dtype=np.int64)
    p = 0
    for i in range(n):
        if i != exclude:
            pool[p] = i
            p += 1
    mask = uint64(0)
    for i in range(size):
        j = i + int(_randbelow(state, n - 1 - i))
        tmp = pool[i]
        pool[i] = pool[j]
        pool[j] = tmp
        mask |= uint64(1) << uint64(pool[i])
    return mask


@njit(cache=True)
def _sample_raw(n, k, lam, seed):
    counts = np.zeros(n, dtype=np.int64)
    cap = 64
    masks = np.empty(cap, dtype=np.uint64)
    total = 0
    for v in range(n):
        state = _stream_init(_splitmix64(_splitmix64(uint64(seed)) ^ uint64(v)))
        y = _poisson(state, lam)
        counts[v] = y
        if total + y > cap:
            while total + y > cap:
                cap *= 2
            grown = np.empty(cap, dtype=np.uint64)
            grown[:total] = masks[:total]
            masks = grown
        owner_bit = uint64(1) << uint64(v)
        for _ in range(y):
            masks[total] = _subset_mask(state, n, k - 1, v) | owner_bit
            total += 1
    return counts, masks[:total].copy()


def sample_raw(n: int, k: int, lam: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Raw generative draw; see `_pykernels.sample_raw`."""
    return _sample_raw(int(n), int(k), float(lam), uint64(seed))


@njit(cache=True)
def _closure(offsets, masks, cur, n):
    while True:
        new = uint64(0)
        for v in range(n):
            bit = uint64(1) << uint64(v)
            if cur & bit:
                for i in range(offsets[v], offsets[v + 1]):
                    sm = masks[i]
                    if sm & cur == sm:
                        new |= bit
                        break
        if new == cur:
            return cur
        cur = new


@njit(cache=True)
def _find_disjoint(offsets, masks, n):
    full = U64_MAX >> uint64(64 - n)
    top = _closure(offsets, masks, full, n)
    if top == uint64(0):
        return False, uint64(0), uint64(0)
    nodes = np.empty(n, dtype=np.int64)
    nn = 0
    for v in range(n):
        if top & (uint64(1) << uint64(v)):
            nodes[nn] = v
            nn += 1
    cap = 2 * nn + 4
    st_idx = np.empty(cap, dtype=np.int64)
    st_a = np.empty(cap, dtype=np.uint64)
    st_b = np.empty(cap, dtype=np.uint64)
    st_ca = np.empty(cap, dtype=np.uint64)
    st_cb = np.empty(cap, dtype=np.uint64)
    first = uint64(1) << uint64(nodes[0])
    st_idx[0] = 1
    st_a[0] = first
    st_b[0] = uint64(0)
    st_ca[0] = top
    st_cb[0] = _closure(offsets, masks, top & ~first, n)
    sp = 1
    while sp > 0:
        sp -= 1
        idx = st_idx[sp]
        a = st_a[sp]
        b = st_b[sp]
        cand_a = st_ca[sp]
        cand_b = st_cb[sp]
        if cand_a == uint64(0) or cand_b == uint64(0):
            continue
        qa = _closure(offsets, masks, a, n)
        qb = _closure(offsets, masks, b, n)
        if qa != uint64(0) and qb != uint64(0):
            return True, qa, qb
        if idx == nn:
            continue
        bit = uint64(1) << uint64(nodes[idx])
        in_a = cand_a & bit != uint64(0)
        in_b = cand_b & bit != uint64(0)
        if in_a and in_b:
            st_idx[sp] = idx + 1
            st_a[sp] = a
            st_b[sp] = b | bit
            st_ca[sp] = _closure(offsets, masks, cand_a & ~bit, n)
            st_cb[sp] = cand_b
            sp += 1
            st_idx[sp] = idx + 1
            st_a[sp] = a | bit
            st_b[sp] = b
            st_ca[sp] = cand_a
            st_cb[sp] = _closure(offsets, masks, cand_b & ~bit, n)
            sp += 1
        elif in_b:
            st_idx[sp] = idx + 1
            st_a[sp] = a
            st_b[sp] = b | bit
            st_ca[sp] = cand_a
            st_cb[sp] = cand_b
            sp += 1
        else:
            st_idx[sp] = idx + 1
            st_a[sp] = a | bit
            st_b[sp] = b
            st_ca[sp] = cand_a
            st_cb[sp] = cand_b
            sp += 1
    return False, uint64(0), uint64(0)


def find_disjoint(offsets: np.ndarray, masks: np.ndarray, n: int) -> tuple[bool, int, int]:
    """Exact disjoint-quorum search; see `_pykernels.find_disjoint`."""
    found, w1, w2 = _find_disjoint(
        np.ascontiguousarray(offsets, dtype=np.int64),
        np.ascontiguousarray(masks, dtype=np.uint64),
        int(n),
    )
    return bool(found), int(w1), int(w2)


def warmup() -> None:
    """Force JIT compilation of every kernel (call before forking workers)."""
    counts, masks = sample_raw(4, 2, 1.5, 12345)
    poisson_variates(1, 20.0, 2)
    offsets = np.array([0, 1, 2, 3, 4], dtype=np.int64)
    slice_masks = np.array([0b0011, 0b0010, 0b1100, 0b1000], dtype=np.uint64)
    find_disjoint(offsets, slice_masks, 4)
