import itertools
import random

import pytest

from hyperph.complexes import FilteredComplex, betti_oracle, sort_key
from hyperph.filtration import (
    FiltrationKind,
    build_filtration,
    build_relbs_filtration,
    build_resbs_filtration,
    build_scc_filtration,
)
from hyperph.hypergraph import Hyperedge, Hypergraph
from hyperph.synthetic import random_hypergraph


def prefix(h: Hypergraph, t: int) -> Hypergraph:
    return Hypergraph(
        h.num_vertices, tuple(e for e in h.edges if e.arrival <= t), h.id
    )


def naive_relbs(h: Hypergraph) -> FilteredComplex:
    """Slow reference for the collapsed relative subdivision.

    Enumerates every subset of every hyperedge set (the builder must never
    do that), takes chains in the subdivision of the closure, and glues
    the non-hyperedge members to a single vertex, keeping vertices and
    edges of the glued part and only the all-hyperedge triangles.
    """
    sets = h.edge_sets()
    order = sorted(sets, key=sort_key)
    ids = {frozenset(s): i for i, s in enumerate(order)}
    quotient = len(order)
    closure: dict[frozenset, int] = {}
    for verts, arr in sets.items():
        for size in range(1, len(verts) + 1):
            for sub in itertools.combinations(verts, size):
                fs = frozenset(sub)
                closure[fs] = min(closure.get(fs, arr), arr)

    entries: dict[tuple, int] = {}

    def note(simplex: tuple, value: int) -> None:
        entries[simplex] = min(entries.get(simplex, value), value)

    for fs, val in closure.items():
        note((ids.get(fs, quotient),), val)
    for a, b in itertools.combinations(closure, 2):
        small, big = (a, b) if len(a) < len(b) else (b, a)
        if not small < big:
            continue
        va = ids.get(small, quotient)
        vb = ids.get(big, quotient)
        if va == vb == quotient:
            continue
        note(tuple(sorted((va, vb))), max(closure[small], closure[big]))
    for trip in itertools.combinations(closure, 3):
        lo, mid, hi = sorted(trip, key=len)
        if lo < mid < hi and all(t in ids for t in (lo, mid, hi)):
            tri = tuple(sorted((ids[lo], ids[mid], ids[hi])))
            note(tri, max(closure[t] for t in (lo, mid, hi)))
    return FilteredComplex(entries)


def labeled(fc: FilteredComplex, h: Hypergraph) -> dict:
    """Simplices keyed by hyperedge-set names, independent of id layout."""
    order = sorted(h.edge_sets(), key=sort_key)
    names = {i: s for i, s in enumerate(order)}
    names[len(order)] = ("*",)
    return {
        frozenset(names[v] for v in s): val
        for s, val in zip(fc.simplices, fc.values)
    }


def test_scc_loop_fixture(loop_hypergraph):
    fc = build_scc_filtration(loop_hypergraph)
    assert fc.counts() == (3, 3, 0)
    assert fc.value_of((1,)) == 0
    assert fc.value_of((0,)) == 1
    assert fc.value_of((2,)) == 2
    assert fc.value_of((0, 2)) == 3
    assert betti_oracle(fc) == (1, 1)


def test_scc_empty():
    assert build_scc_filtration(Hypergraph(4, ())).counts() == (0, 0, 0)


def test_scc_single_4edge():
    fc = build_scc_filtration(Hypergraph(4, (Hyperedge((0, 1, 2, 3), 0),)))
    assert fc.counts() == (4, 6, 4)
    assert set(fc.values) == {0}


def test_resbs_loop_fixture(loop_hypergraph):
    fc = build_resbs_filtration(loop_hypergraph)
    assert fc.counts() == (4, 2, 0)
    want = {
        frozenset([(1,)]): 0,
        frozenset([(0, 1)]): 1,
        frozenset([(1, 2)]): 2,
        frozenset([(0, 2)]): 3,
        frozenset([(1,), (0, 1)]): 1,
        frozenset([(1,), (1, 2)]): 2,
    }
    assert labeled(fc, loop_hypergraph) == want
    assert betti_oracle(fc) == (2, 0)


def test_resbs_unnested_is_discrete():
    h = Hypergraph(3, (Hyperedge((0, 1), 0), Hyperedge((1, 2), 1)))
    fc = build_resbs_filtration(h)
    assert fc.counts() == (2, 0, 0)


def test_resbs_three_chain_has_triangle():
    h = Hypergraph(
        3,
        (Hyperedge((0,), 0), Hyperedge((0, 1), 0), Hyperedge((0, 1, 2), 0)),
    )
    fc = build_resbs_filtration(h)
    assert fc.counts() == (3, 3, 1)
    assert set(fc.values) == {0}


def test_relbs_loop_fixture_exact(loop_hypergraph):
    fc = build_relbs_filtration(loop_hypergraph)
    want = {
        frozenset([(1,)]): 0,
        frozenset([(0, 1)]): 1,
        frozenset([(0, 2)]): 3,
        frozenset([(1, 2)]): 2,
        frozenset([("*",)]): 1,
        frozenset([(1,), (0, 1)]): 1,
        frozenset([(1,), (1, 2)]): 2,
        frozenset([(0, 1), ("*",)]): 1,
        frozenset([(1, 2), ("*",)]): 2,
        frozenset([(0, 2), ("*",)]): 3,
    }
    assert labeled(fc, loop_hypergraph) == want
    assert betti_oracle(fc) == (1, 1)


def test_relbs_single_pair_edge_deduplicated():
    h = Hypergraph(2, (Hyperedge((0, 1), 0),))
    fc = build_relbs_filtration(h)
    assert labeled(fc, h) == {
        frozenset([(0, 1)]): 0,
        frozenset([("*",)]): 0,
        frozenset([(0, 1), ("*",)]): 0,
    }
    assert betti_oracle(fc) == (1, 0)


def test_relbs_downward_closed_monotone_equals_resbs():
    h = Hypergraph(
        3,
        (
            Hyperedge((0,), 0),
            Hyperedge((1,), 0),
            Hyperedge((2,), 0),
            Hyperedge((0, 1), 1),
            Hyperedge((1, 2), 1),
            Hyperedge((0, 2), 1),
            Hyperedge((0, 1, 2), 2),
        ),
    )
    assert build_relbs_filtration(h) == build_resbs_filtration(h)


def test_relbs_downward_closed_nonmonotone_same_shape():
    # every subset is a hyperedge, but the pair arrives before one of its
    # members: no quotient vertex either way, values differ (a vertex of
    # the relative subdivision exists as soon as the closure contains it)
    h = Hypergraph(
        2,
        (Hyperedge((1,), 0), Hyperedge((0, 1), 1), Hyperedge((0,), 2)),
    )
    rel = build_relbs_filtration(h)
    res = build_resbs_filtration(h)
    assert set(rel.simplices) == set(res.simplices)
    assert labeled(rel, h)[frozenset([(0,)])] == 1
    assert labeled(res, h)[frozenset([(0,)])] == 2


def test_relbs_matches_naive_on_random_hypergraphs():
    rng = random.Random(20)
    for _ in range(80):
        h = random_hypergraph(rng, max_vertices=6, max_edges=6, max_edge_size=4)
        assert build_relbs_filtration(h) == naive_relbs(h)


def test_relbs_prefix_slices_match_naive_prefix_construction():
    rng = random.Random(21)
    for _ in range(25):
        h = random_hypergraph(rng, max_vertices=6, max_edges=6, max_edge_size=4)
        fc = build_relbs_filtration(h)
        reference = naive_relbs(h)
        for t in range(h.max_arrival() + 1):
            assert set(fc.up_to(t).simplices) == set(reference.up_to(t).simplices)


def test_scc_resbs_prefix_consistency():
    rng = random.Random(22)
    for _ in range(25):
        h = random_hypergraph(rng, max_vertices=7, max_edges=7)
        scc = build_scc_filtration(h)
        res = build_resbs_filtration(h)
        for t in range(h.max_arrival() + 1):
            assert build_scc_filtration(prefix(h, t)) == scc.up_to(t)
            assert labeled(build_resbs_filtration(prefix(h, t)), prefix(h, t)) == labeled(
                res.up_to(t), h
            )


def test_outputs_are_valid_and_nested():
    rng = random.Random(23)
    for _ in range(40):
        h = random_hypergraph(rng)
        for kind in FiltrationKind:
            fc = build_filtration(h, kind)
            fc.validate()
            for s in fc.simplices:
                assert len(set(s)) == len(s)
            for t in range(fc.max_value()):
                assert set(fc.up_to(t).simplices) <= set(fc.up_to(t + 1).simplices)


def test_vertex_count_properties():
    rng = random.Random(24)
    for _ in range(40):
        h = random_hypergraph(rng, max_vertices=6, max_edges=6)
        distinct = len(h.edge_sets())
        assert build_resbs_filtration(h).counts()[0] == distinct
        hyper = {frozenset(s) for s in h.edge_sets()}
        missing = any(
            frozenset(sub) not in hyper
            for verts in h.edge_sets()
            for size in range(1, len(verts))
            for sub in itertools.combinations(verts, size)
        )
        assert build_relbs_filtration(h).counts()[0] == distinct + bool(missing)


def test_kind_tokens():
    assert [str(k) for k in FiltrationKind] == ["scc", "resbs", "relbs"]
