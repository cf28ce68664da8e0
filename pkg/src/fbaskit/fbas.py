"""FBAS core: the (V, Q) data model, quorum semantics, closure, and deletion.

An FBAS is a set of n nodes plus, for every node v, a list of quorum slices
(sets that contain v). A nonempty set U is a quorum when every member has at
least one slice contained in U. Slice lists are canonicalized to antichains:
duplicates and strict supersets of another slice of the same owner are
dropped, since a superset can never witness a quorum that the subset does
not already witness.

Everything here is immutable and pure; masks are plain ints so the hot
kernels can consume them as uint64 arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bitset import NodeSet, check_universe_size
from .errors import (
    DeletedEverything,
    IndexOutOfRange,
    OwnerMissing,
    SchemaMismatch,
    UniverseMismatch,
)

FBAS_JSON_VERSION = 1


@dataclass(frozen=True)
class Fbas:
    """Canonicalized FBAS over n nodes.

    slice_masks[v] is an ascending tuple of bitmasks, each containing bit v;
    it is an antichain (no mask is a subset of another mask of the same v).
    """

    n: int
    slice_masks: tuple[tuple[int, ...], ...]

    @property
    def slices(self) -> tuple[tuple[NodeSet, ...], ...]:
        return tuple(
            tuple(NodeSet(m, self.n) for m in masks) for masks in self.slice_masks
        )

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def _check(self, s: NodeSet) -> None:
        if s.universe_size != self.n:
            raise UniverseMismatch(f"set over universe {s.universe_size}, fbas has n={self.n}")

    def flat_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(offsets int64[n+1], masks uint64[total]) view for the kernels."""
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        for v in range(self.n):
            offsets[v + 1] = offsets[v] + len(self.slice_masks[v])
        masks = np.empty(int(offsets[-1]), dtype=np.uint64)
        pos = 0
        for v in range(self.n):
            for m in self.slice_masks[v]:
                masks[pos] = m
                pos += 1
        return offsets, masks


def _canonicalize_node(owner: int, masks: Iterable[int]) -> tuple[int, ...]:
    """Dedupe and drop strict supersets of another slice of the same owner."""
    distinct = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in distinct:
        if not any(km & m == km for km in kept):
            kept.append(m)
    return tuple(sorted(kept))


def make_fbas(n: int, raw_slices: Sequence[Sequence[Sequence[int]]]) -> Fbas:
    """Validate and canonicalize per-node slice lists into an Fbas.

    Every slice must contain its owner (OwnerMissing otherwise) and only
    reference indices in [0, n). Duplicate slices and strict supersets of
    another slice of the same node are removed.
    """
    check_universe_size(n)
    if len(raw_slices) != n:
        raise SchemaMismatch(f"expected {n} slice lists, got {len(raw_slices)}")
    per_node: list[tuple[int, ...]] = []
    for v, node_slices in enumerate(raw_slices):
        masks = []
        for sl in node_slices:
            mask = 0
            for i in sl:
                if not 0 <= int(i) < n:
                    raise IndexOutOfRange(v, int(i))
                mask |= 1 << int(i)
            if not mask >> v & 1:
                raise OwnerMissing(v, sl)
            masks.append(mask)
        per_node.append(_canonicalize_node(v, masks))
    return Fbas(n, tuple(per_node))


def _is_quorum_mask(fbas: Fbas, mask: int) -> bool:
    if mask == 0:
        return False
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        for sm in fbas.slice_masks[v]:
            if sm & mask == sm:
                break
        else:
            return False
    return True


def is_quorum(fbas: Fbas, u: NodeSet) -> bool:
    """True iff u is nonempty and every member has a slice inside u.

    The empty set is not a quorum (otherwise quorum intersection would be
    vacuously violated).
    """
    fbas._check(u)
    return _is_quorum_mask(fbas, u.mask)


def _closure_mask(fbas: Fbas, mask: int) -> int:
    """Greatest quorum contained in `mask`, as a bitmask (0 if none)."""
    cur = mask
    while True:
        new = 0
        m = cur
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            for sm in fbas.slice_masks[v]:
                if sm & cur == sm:
                    new |= low
                    break
        if new == cur:
            return cur
        cur = new


def greatest_quorum_within(fbas: Fbas, s: NodeSet) -> NodeSet:
    """The unique maximal quorum contained in s (empty set if none).

    Computed by repeatedly removing members of s with no slice inside the
    current set until a fixed point.
    """
    fbas._check(s)
    return NodeSet(_closure_mask(fbas, s.mask), fbas.n)


def delete_nodes(fbas: Fbas, b: NodeSet) -> tuple[Fbas, dict[int, int]]:
    """Delete node set b: drop its nodes and strip them from every slice.

    Survivors are densely remapped to [0, n - |b|); returns the new Fbas and
    the old-index -> new-index map. The result is re-canonicalized since
    stripping can create duplicates and supersets.
    """
    fbas._check(b)
    if b.mask == fbas.full_mask():
        raise DeletedEverything("cannot delete every node")
    survivors = [v for v in range(fbas.n) if not b.mask >> v & 1]
    index_map = {old: new for new, old in enumerate(survivors)}
    new_n = len(survivors)
    per_node = []
    for old in survivors:
        masks = []
        for sm in fbas.slice_masks[old]:
            stripped = sm & ~b.mask
            remapped = 0
            m = stripped
            while m:
                low = m & -m
                remapped |= 1 << index_map[low.bit_length() - 1]
                m ^= low
            masks.append(remapped)
        per_node.append(_canonicalize_node(index_map[old], masks))
    return Fbas(new_n, tuple(per_node)), index_map


def fbas_to_json(fbas: Fbas) -> str:
    """Serialize to the versioned FBAS JSON format (stable byte output)."""
    doc = {
        "version": FBAS_JSON_VERSION,
        "n": fbas.n,
        "slices": [
            [NodeSet(m, fbas.n).to_list() for m in masks] for masks in fbas.slice_masks
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def fbas_from_json(text: str) -> Fbas:
    """Parse the FBAS JSON format, applying full make_fbas validation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaMismatch(f"not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise SchemaMismatch("top-level value must be an object")
    if doc.get("version") != FBAS_JSON_VERSION:
        raise SchemaMismatch(f"unsupported or missing version: {doc.get('version')!r}")
    if "n" not in doc or "slices" not in doc:
        raise SchemaMismatch("missing required fields 'n' and 'slices'")
    return make_fbas(int(doc["n"]), doc["slices"])
