"""Core FBAS model: construction, quorum semantics, closure, deletion."""

import random

import pytest

import fbaskit as fk
from fbaskit import NodeSet

from helpers import definitional_is_quorum, random_raw_slices, raw_slices_of, seeded_fbas


def bft_fbas_n4():
    """Traditional 4-node BFT system: Q(v) = {{v} union S : |S| >= ceil(8/3)}."""
    import itertools

    slices = []
    for v in range(4):
        node = []
        for size in (3, 4):
            for s in itertools.combinations(range(4), size):
                node.append(sorted(set(s) | {v}))
        slices.append(node)
    return fk.make_fbas(4, slices)


class TestNodeSet:
    def test_ascending_iteration_and_no_duplicates(self):
        s = NodeSet.of([3, 1, 1, 5], 8)
        assert s.to_list() == [1, 3, 5]
        assert len(s) == 3

    def test_index_bounds(self):
        with pytest.raises(fk.IndexOutOfRange):
            NodeSet.of([8], 8)

    def test_universe_limits(self):
        with pytest.raises(fk.EmptyUniverse):
            NodeSet.of([], 0)
        with pytest.raises(fk.UniverseTooLarge):
            NodeSet.of([0], 65)

    def test_set_algebra(self):
        a = NodeSet.of([0, 1], 4)
        b = NodeSet.of([1, 2], 4)
        assert a.union(b).to_list() == [0, 1, 2]
        assert a.intersection(b).to_list() == [1]
        assert a.difference(b).to_list() == [0]
        with pytest.raises(fk.UniverseMismatch):
            a.union(NodeSet.of([0], 5))


class TestMakeFbas:
    def test_superset_removed(self):
        f = fk.make_fbas(3, [[[0, 1], [0, 1, 2]], [[1]], [[2]]])
        assert f.slice_masks[0] == (0b011,)

    def test_owner_missing(self):
        with pytest.raises(fk.OwnerMissing):
            fk.make_fbas(2, [[[1]], [[1]]])

    def test_empty_universe(self):
        with pytest.raises(fk.EmptyUniverse):
            fk.make_fbas(0, [])

    def test_index_out_of_range(self):
        with pytest.raises(fk.IndexOutOfRange):
            fk.make_fbas(2, [[[0, 2]], [[1]]])

    def test_duplicates_collapse(self):
        f = fk.make_fbas(2, [[[0, 1], [1, 0], [0, 1]], [[1]]])
        assert f.slice_masks[0] == (0b11,)

    def test_empty_slice_list_allowed(self):
        f = fk.make_fbas(2, [[], [[1]]])
        assert f.slice_masks[0] == ()

    def test_traditional_bft_canonicalizes_to_minimal_3sets(self):
        f = bft_fbas_n4()
        for v in range(4):
            masks = f.slice_masks[v]
            assert len(masks) == 3
            assert all(bin(m).count("1") == 3 and m >> v & 1 for m in masks)


class TestIsQuorum:
    def test_self_slices(self):
        f = fk.make_fbas(3, [[[0]], [[1]], [[2]]])
        assert fk.is_quorum(f, NodeSet.of([0], 3))

    def test_empty_set_is_not_a_quorum(self):
        f = fk.make_fbas(2, [[[0]], [[1]]])
        assert not fk.is_quorum(f, NodeSet.empty(2))

    def test_bft_three_of_four(self):
        f = bft_fbas_n4()
        assert fk.is_quorum(f, NodeSet.of([0, 1, 2], 4))
        assert not fk.is_quorum(f, NodeSet.of([0, 1], 4))

    def test_matches_definitional_evaluation_on_generative_instances(self):
        rng = random.Random(2024)
        for trial in range(30):
            f = seeded_fbas(6, 3, 2.0, fk.derive_seed(5, trial))
            raw = raw_slices_of(f)
            u = {v for v in range(6) if rng.random() < 0.5}
            assert fk.is_quorum(f, NodeSet.of(u, 6)) == definitional_is_quorum(raw, u)

    def test_universe_mismatch(self):
        f = fk.make_fbas(3, [[[0]], [[1]], [[2]]])
        with pytest.raises(fk.UniverseMismatch):
            fk.is_quorum(f, NodeSet.of([0], 4))


class TestGreatestQuorumWithin:
    def test_quorum_is_its_own_closure(self):
        f = bft_fbas_n4()
        u = NodeSet.of([0, 1, 2], 4)
        assert fk.greatest_quorum_within(f, u) == u

    def test_cascading_removal_to_empty(self):
        f = fk.make_fbas(3, [[[0, 1]], [[1, 2]], [[2, 0]]])
        assert fk.greatest_quorum_within(f, NodeSet.of([0, 1], 3)) == NodeSet.empty(3)

    def test_equals_largest_quorum_by_enumeration(self):
        for trial in range(10):
            f = seeded_fbas(8, 2, 3.0, fk.derive_seed(6, trial))
            s = NodeSet.full(8)
            got = fk.greatest_quorum_within(f, s)
            best = set()
            for mask in range(1, 1 << 8):
                u = {v for v in range(8) if mask >> v & 1}
                if definitional_is_quorum(raw_slices_of(f), u) and len(u) > len(best):
                    best = u
            assert set(got) == best

    def test_properties_on_random_instances(self):
        rng = random.Random(77)
        for trial in range(40):
            f = seeded_fbas(7, 2, 1.5, fk.derive_seed(7, trial))
            s = NodeSet.of({v for v in range(7) if rng.random() < 0.6}, 7)
            g = fk.greatest_quorum_within(f, s)
            assert g.issubset(s)
            assert fk.greatest_quorum_within(f, g) == g
            assert not g or fk.is_quorum(f, g)
            # nonempty u is a quorum iff it is its own closure
            if s:
                assert fk.is_quorum(f, s) == (g == s)

    def test_union_of_quorums_is_quorum(self):
        for trial in range(40):
            f = seeded_fbas(8, 2, 4.0, fk.derive_seed(8, trial))
            full = fk.greatest_quorum_within(f, NodeSet.full(8))
            if not full:
                continue
            sub = fk.greatest_quorum_within(f, NodeSet.of(list(full)[: max(1, len(full) // 2)], 8))
            if sub and full:
                assert fk.is_quorum(f, sub.union(full))


class TestDeleteNodes:
    def test_delete_nothing_is_identity(self):
        f = bft_fbas_n4()
        g, index_map = fk.delete_nodes(f, NodeSet.empty(4))
        assert g == f
        assert index_map == {v: v for v in range(4)}

    def test_slices_are_stripped(self):
        f = fk.make_fbas(3, [[[0, 1, 2]], [[1]], [[2]]])
        g, index_map = fk.delete_nodes(f, NodeSet.of([2], 3))
        assert g.n == 2
        assert index_map == {0: 0, 1: 1}
        assert g.slice_masks[0] == (0b11,)

    def test_delete_everything_rejected(self):
        f = fk.make_fbas(2, [[[0]], [[1]]])
        with pytest.raises(fk.DeletedEverything):
            fk.delete_nodes(f, NodeSet.full(2))

    def test_sequential_deletion_composes(self):
        rng = random.Random(99)
        for trial in range(30):
            f = seeded_fbas(9, 3, 2.0, fk.derive_seed(9, trial))
            a = {v for v in range(9) if rng.random() < 0.25}
            b = {v for v in range(9) if rng.random() < 0.25} - a
            if len(a | b) >= 8:
                continue
            fa, map_a = fk.delete_nodes(f, NodeSet.of(a, 9))
            fab, _ = fk.delete_nodes(fa, NodeSet.of({map_a[v] for v in b}, fa.n))
            direct, _ = fk.delete_nodes(f, NodeSet.of(a | b, 9))
            assert fab == direct


class TestCanonicalizationInvariance:
    def test_quorum_verdicts_unchanged_by_canonicalization(self):
        rng = random.Random(31337)
        for _ in range(50):
            n = rng.randrange(2, 7)
            raw = random_raw_slices(rng, n)
            f = fk.make_fbas(n, raw)
            for _ in range(10):
                u = {v for v in range(n) if rng.random() < 0.5}
                assert fk.is_quorum(f, NodeSet.of(u, n)) == definitional_is_quorum(raw, u)


class TestJsonRoundtrip:
    def test_roundtrip_and_version(self):
        f = seeded_fbas(8, 3, 2.0, 4242)
        text = fk.fbas_to_json(f)
        assert fk.fbas_from_json(text) == f
        assert '"version":1' in text

    def test_schema_errors(self):
        with pytest.raises(fk.SchemaMismatch):
            fk.fbas_from_json("{}")
        with pytest.raises(fk.SchemaMismatch):
            fk.fbas_from_json('{"version":2,"n":1,"slices":[[[0]]]}')
        with pytest.raises(fk.SchemaMismatch):
            fk.fbas_from_json("not json")
