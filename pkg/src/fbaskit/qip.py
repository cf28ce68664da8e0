"""Quorum intersection: exact checking, witnesses, and safety after deletion.

An FBAS satisfies quorum intersection when no two disjoint quorums exist.
`find_disjoint_quorums` is the optimized engine (branch and bound with
closure pruning, in the selected kernel backend); `brute_force_disjoint_quorums`
is an independent definitional oracle used to cross-check it. Both are exact
and deterministic for a fixed input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional

from .backend import kernels
from .bitset import NodeSet
from .errors import SchemaMismatch, UniverseTooLarge
from .fbas import Fbas, delete_nodes, greatest_quorum_within, is_quorum

ORACLE_CAP = 12


class QipStatus(Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"


@dataclass(frozen=True)
class QipVerdict:
    status: QipStatus
    witness: Optional[tuple[NodeSet, NodeSet]] = None

    def __post_init__(self):
        if (self.status is QipStatus.VIOLATED) != (self.witness is not None):
            raise ValueError("witness present iff status is VIOLATED")

    @property
    def satisfied(self) -> bool:
        return self.status is QipStatus.SATISFIED

    def to_json(self) -> str:
        if self.satisfied:
            doc = {"status": "satisfied"}
        else:
            u1, u2 = self.witness
            doc = {"status": "violated", "witness": [u1.to_list(), u2.to_list()]}
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str, n: int) -> "QipVerdict":
        doc = json.loads(text)
        if doc.get("status") == "satisfied":
            return cls(QipStatus.SATISFIED)
        if doc.get("status") == "violated":
            w1, w2 = doc["witness"]
            return cls(QipStatus.VIOLATED, (NodeSet.of(w1, n), NodeSet.of(w2, n)))
        raise SchemaMismatch(f"unknown verdict status {doc.get('status')!r}")


def find_disjoint_quorums(fbas: Fbas) -> QipVerdict:
    """Exact quorum-intersection verdict via the kernel branch and bound."""
    offsets, masks = fbas.flat_arrays()
    found, w1, w2 = kernels.find_disjoint(offsets, masks, fbas.n)
    if not found:
        return QipVerdict(QipStatus.SATISFIED)
    return QipVerdict(QipStatus.VIOLATED, (NodeSet(w1, fbas.n), NodeSet(w2, fbas.n)))


def brute_force_disjoint_quorums(fbas: Fbas, cap: int = ORACLE_CAP) -> QipVerdict:
    """Definitional oracle: enumerate every subset, checking Definition-style
    quorum membership slice by slice (independent of the bitset closure path).

    Capped at `cap` nodes (2^n subsets); pass a larger cap explicitly to
    override. For each quorum U found, any nonempty greatest quorum inside
    the complement yields a witness.
    """
    n = fbas.n
    if n > cap:
        raise UniverseTooLarge(f"oracle capped at n <= {cap} (2^n subsets); got n={n}")
    members_by_node = [
        [set(NodeSet(m, n)) for m in fbas.slice_masks[v]] for v in range(n)
    ]

    def is_quorum_by_definition(u: set[int]) -> bool:
        if not u:
            return False
        return all(any(s <= u for s in members_by_node[v]) for v in u)

    def shrink_to_quorum(s: set[int]) -> set[int]:
        cur = set(s)
        while True:
            kept = {v for v in cur if any(sl <= cur for sl in members_by_node[v])}
            if kept == cur:
                return cur
            cur = kept

    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            u = set(combo)
            if not is_quorum_by_definition(u):
                continue
            other = shrink_to_quorum(set(range(n)) - u)
            if other:
                return QipVerdict(
                    QipStatus.VIOLATED,
                    (NodeSet.of(u, n), NodeSet.of(other, n)),
                )
    return QipVerdict(QipStatus.SATISFIED)


def verify_witness(fbas: Fbas, u1: NodeSet, u2: NodeSet) -> bool:
    """Cheap independent check of a Violated verdict."""
    return is_quorum(fbas, u1) and is_quorum(fbas, u2) and u1.isdisjoint(u2)


def check_safety_after_deletion(fbas: Fbas, byzantine: NodeSet) -> QipVerdict:
    """Quorum-intersection verdict of the system surviving `byzantine`.

    Satisfied means the survivors still have intersecting quorums, i.e. the
    system tolerates this adversarial set. The verdict (and any witness) is
    expressed in the deleted system's remapped universe; use the index map
    from `delete_nodes` to translate back to original labels.
    """
    deleted, _ = delete_nodes(fbas, byzantine)
    return find_disjoint_quorums(deleted)


__all__ = [
    "ORACLE_CAP",
    "QipStatus",
    "QipVerdict",
    "brute_force_disjoint_quorums",
    "check_safety_after_deletion",
    "find_disjoint_quorums",
    "greatest_quorum_within",
    "verify_witness",
]
