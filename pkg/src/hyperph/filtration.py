"""The three hypergraph filtration builders: SCC, ResBS and RelBS.

Every builder maps a hypergraph (a nested sequence of sub-hypergraphs,
indexed by arrival step) to one FilteredComplex whose sub-complex at value
t is the static construction applied at step t.

* SCC: the downward closure, every subset of every hyperedge.
* ResBS: barycentric subdivision restricted to chains of actual
  hyperedge sets, so hyperedge intersections are not preserved unless
  they are hyperedges themselves.
* RelBS: barycentric subdivision of the closure with the subcomplex of
  missing (non-hyperedge) simplices collapsed to a single quotient
  vertex, keeping only vertices and edges of the glued part.  The
  closure is never enumerated; missing simplices are detected by
  counting (a hyperedge set with k vertices has 2^k - 2 proper non-empty
  subsets, so missing ones exist whenever fewer hyperedge sets nest
  strictly below it, and likewise between two nested hyperedge sets).
"""

from __future__ import annotations

import enum

from .complexes import FilteredComplex, Simplex, downward_closure, sort_key
from .hypergraph import Hypergraph


class FiltrationKind(enum.Enum):
    SCC = "scc"
    RESBS = "resbs"
    RELBS = "relbs"

    def __str__(self) -> str:
        return self.value


# In the subdivision builders, output vertex i is the i-th distinct
# hyperedge set in (size, lexicographic) order; the RelBS quotient vertex,
# when present, takes the next id (= number of distinct sets).


def build_scc_filtration(h: Hypergraph) -> FilteredComplex:
    """Downward closure truncated at dimension 2."""
    return downward_closure(h, max_dim=2)


def _edge_set_order(h: Hypergraph):
    """Distinct hyperedge sets in (size, lexicographic) order with arrivals.

    This fixes the vertex-id convention of the subdivision builders:
    vertex i of the output is the i-th hyperedge set in this order (the
    quotient vertex of RelBS, when present, takes the next id).
    """
    sets = h.edge_sets()
    order = sorted(sets, key=sort_key)
    arrivals = [sets[s] for s in order]
    return order, arrivals


def build_resbs_filtration(h: Hypergraph) -> FilteredComplex:
    """Restricted barycentric subdivision filtration.

    Vertices are the distinct hyperedge sets at their earliest arrival;
    m-simplices are strict inclusion chains of hyperedge sets, valued at
    the latest member.
    """
    order, arr = _edge_set_order(h)
    m = len(order)
    fsets = [frozenset(s) for s in order]

    entries: dict[Simplex, int] = {}
    sups: list[list[int]] = [[] for _ in range(m)]
    for i in range(m):
        entries[(i,)] = arr[i]
        for j in range(m):
            if len(fsets[i]) < len(fsets[j]) and fsets[i] < fsets[j]:
                sups[i].append(j)
    for i in range(m):
        for j in sups[i]:
            entries[(i, j)] = max(arr[i], arr[j])
    for i in range(m):
        sup_i = set(sups[i])
        for j in sups[i]:
            for g in sups[j]:
                if g in sup_i:
                    entries[(i, j, g)] = max(arr[i], arr[j], arr[g])
    return FilteredComplex(entries)


def build_relbs_filtration(h: Hypergraph) -> FilteredComplex:
    """Relative barycentric subdivision filtration.

    The missing set is taken relative to the final hypergraph (the unique
    reading under which the family is nested) and collapsed to one
    quotient vertex.  Gluing keeps vertices and edges only; parallel
    edges onto the quotient vertex collapse to the earliest one.
    """
    order, arr = _edge_set_order(h)
    m = len(order)
    fsets = [frozenset(s) for s in order]
    sizes = [len(s) for s in order]

    # strict inclusion as bitmasks over hyperedge-set ids
    sub_mask = [0] * m
    sup_mask = [0] * m
    for i in range(m):
        for j in range(m):
            if sizes[j] < sizes[i] and fsets[j] < fsets[i]:
                sub_mask[i] |= 1 << j
                sup_mask[j] |= 1 << i

    def bits(mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    # earliest appearance in the closure: min arrival over supersets incl. self
    filt_v = list(arr)
    for i in range(m):
        for j in bits(sup_mask[i]):
            if arr[j] < filt_v[i]:
                filt_v[i] = arr[j]

    # a set with k vertices has 2^k - 2 proper non-empty subsets
    has_missing_sub = [
        (1 << sizes[i]) - 2 > sub_mask[i].bit_count() for i in range(m)
    ]

    entries: dict[Simplex, int] = {}
    for i in range(m):
        entries[(i,)] = filt_v[i]
    quotient = m
    if any(has_missing_sub):
        entries[(quotient,)] = min(
            arr[i] for i in range(m) if has_missing_sub[i]
        )

    # edges between nested hyperedge sets
    for i in range(m):
        for j in bits(sup_mask[i]):
            entries[(i, j)] = max(filt_v[i], filt_v[j])

    # one edge per hyperedge set onto the quotient vertex, at the earliest
    # time any glued neighbour exists: a missing subset below, or a missing
    # simplex strictly between the set and one of its hyperedge supersets
    for i in range(m):
        t = filt_v[i] if has_missing_sub[i] else None
        for g in bits(sup_mask[i]):
            between = (sup_mask[i] & sub_mask[g]).bit_count()
            if (1 << (sizes[g] - sizes[i])) - 2 > between:
                cand = max(filt_v[i], arr[g])
                if t is None or cand < t:
                    t = cand
        if t is not None:
            entries[(i, quotient)] = t

    # chains of three nested hyperedge sets survive the quotient
    for i in range(m):
        sup_i = sup_mask[i]
        for j in bits(sup_i):
            for g in bits(sup_mask[j] & sup_i):
                entries[(i, j, g)] = filt_v[g]
    return FilteredComplex(entries)


_BUILDERS = {
    FiltrationKind.SCC: build_scc_filtration,
    FiltrationKind.RESBS: build_resbs_filtration,
    FiltrationKind.RELBS: build_relbs_filtration,
}


def build_filtration(h: Hypergraph, kind: FiltrationKind) -> FilteredComplex:
    return _BUILDERS[kind](h)
