"""Seeded generators for test corpora and benchmark inputs.

The classification corpus pits hypergraphs whose collapsed-subdivision
complex carries several independent loops against loop-free nested-chain
hypergraphs; every generated item is checked against the slow rank-based
Betti oracle, so a generator bug fails loudly instead of corrupting the
experiment.
"""

from __future__ import annotations

import random

from .complexes import FilteredComplex, betti_oracle, downward_closure
from .filtration import build_relbs_filtration
from .hypergraph import Corpus, Hyperedge, Hypergraph


def random_hypergraph(
    rng: random.Random,
    max_vertices: int = 8,
    max_edges: int = 8,
    max_edge_size: int = 4,
    graph_id: str = "",
) -> Hypergraph:
    """Uniformly messy hypergraph: duplicate edges, shared arrivals, gaps."""
    n = rng.randint(1, max_vertices)
    m = rng.randint(1, max_edges)
    edges = []
    arrival = 0
    for _ in range(m):
        size = rng.randint(1, min(max_edge_size, n))
        verts = tuple(sorted(rng.sample(range(n), size)))
        edges.append(Hyperedge(verts, arrival))
        # ties are as interesting as gaps, so advance irregularly
        arrival += rng.choice((0, 0, 1, 1, 1, 2))
    return Hypergraph(n, tuple(edges), graph_id)


def random_filtered_complex(
    rng: random.Random,
    max_vertices: int = 12,
    max_edges: int = 10,
) -> FilteredComplex:
    """Random valid complex of dimension <= 2 (a closure of a random
    hypergraph with triangles and below)."""
    h = random_hypergraph(rng, max_vertices, max_edges, max_edge_size=3)
    return downward_closure(h, max_dim=2)


def _shuffled_arrivals(rng: random.Random, edges) -> list[Hyperedge]:
    """Reassign arrivals uniformly at random, then restore sorted order."""
    arrivals = [rng.randint(0, len(edges) + 2) for _ in edges]
    out = [Hyperedge(e.vertices, a) for e, a in zip(edges, arrivals)]
    out.sort(key=lambda e: e.arrival)
    return out


def _multi_loop_item(rng: random.Random, graph_id: str) -> Hypergraph:
    """k disjoint wedge gadgets; each contributes one loop through the
    shared quotient vertex, so the final complex has k >= 3 loops."""
    k = rng.randint(3, 5)
    edges = []
    base = 0
    for _ in range(k):
        a, b, c = base, base + 1, base + 2
        edges.append(Hyperedge((b,), 0))
        edges.append(Hyperedge((a, b), 0))
        edges.append(Hyperedge((b, c), 0))
        edges.append(Hyperedge((a, c), 0))
        base += 3
    for _ in range(rng.randint(0, 3)):
        edges.append(Hyperedge((base,), 0))
        base += 1
    edges = _shuffled_arrivals(rng, edges)
    return Hypergraph(base, tuple(edges), graph_id)


def _nested_chain_item(rng: random.Random, graph_id: str) -> Hypergraph:
    """Disjoint singleton-inside-pair chains plus isolated singletons;
    the collapsed subdivision is a forest, no loops at any step."""
    k = rng.randint(3, 6)
    edges = []
    base = 0
    for _ in range(k):
        v, w = base, base + 1
        edges.append(Hyperedge((v,), 0))
        edges.append(Hyperedge((v, w), 0))
        base += 2
    for _ in range(rng.randint(0, 4)):
        edges.append(Hyperedge((base,), 0))
        base += 1
    edges = _shuffled_arrivals(rng, edges)
    return Hypergraph(base, tuple(edges), graph_id)


def classification_corpus(seed: int = 42, size: int = 200) -> Corpus:
    """Two-class corpus separable by loop structure, labels interleaved."""
    rng = random.Random(seed)
    items = []
    for i in range(size):
        gid = f"syn{i:03d}"
        if i % 2 == 0:
            h = _multi_loop_item(rng, gid)
            _, b1 = betti_oracle(build_relbs_filtration(h))
            if b1 < 3:
                raise RuntimeError(f"{gid}: expected >= 3 loops, oracle found {b1}")
            items.append((h, "multiloop"))
        else:
            h = _nested_chain_item(rng, gid)
            _, b1 = betti_oracle(build_relbs_filtration(h))
            if b1 != 0:
                raise RuntimeError(f"{gid}: expected a loop-free complex, oracle found {b1}")
            items.append((h, "chain"))
    return Corpus(tuple(items))
