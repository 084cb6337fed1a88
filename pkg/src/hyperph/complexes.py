"""Filtered simplicial complexes of dimension <= 2.

Simplices are sorted vertex tuples; a :class:`FilteredComplex` stores them
in the canonical order (filtration value, dimension, vertex tuple), which
guarantees that every face precedes its cofaces.  Only dimensions 0..2 are
kept anywhere: homology is consumed in dimensions 0 and 1, and triangles
suffice to kill 1-cycles.

Besides the container this module holds the two complex-level primitives
(downward closure of a hypergraph, barycentric subdivision) and a slow
Betti-number oracle used as an independent reference in tests.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .errors import ValidationError
from .hypergraph import Hypergraph

Simplex = tuple[int, ...]

MAX_DIM = 2


def sort_key(simplex: Simplex):
    return (len(simplex), simplex)


class FilteredComplex:
    """Simplices of dimension <= 2 with integer filtration values.

    The canonical storage order (value, dimension, vertices) is the order
    persistence processes simplices in; ``index`` maps a simplex to its
    position in that order.
    """

    __slots__ = ("simplices", "values", "index")

    def __init__(self, entries: Mapping[Simplex, int] | Iterable[tuple[Simplex, int]]):
        if isinstance(entries, Mapping):
            entries = entries.items()
        ordered = sorted(entries, key=lambda sv: (sv[1], len(sv[0]), sv[0]))
        self.simplices: tuple[Simplex, ...] = tuple(s for s, _ in ordered)
        self.values: tuple[int, ...] = tuple(v for _, v in ordered)
        self.index: dict[Simplex, int] = {s: i for i, s in enumerate(self.simplices)}
        if len(self.index) != len(self.simplices):
            raise ValidationError("duplicate simplices in filtered complex")

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FilteredComplex)
            and self.simplices == other.simplices
            and self.values == other.values
        )

    def __repr__(self) -> str:
        counts = self.counts()
        return f"FilteredComplex(v={counts[0]}, e={counts[1]}, t={counts[2]})"

    def value_of(self, simplex: Simplex) -> int:
        return self.values[self.index[simplex]]

    def max_value(self) -> int:
        """Largest filtration value; 0 for the empty complex."""
        return max(self.values, default=0)

    def counts(self) -> tuple[int, int, int]:
        """Number of simplices per dimension (vertices, edges, triangles)."""
        out = [0, 0, 0]
        for s in self.simplices:
            out[len(s) - 1] += 1
        return tuple(out)

    def dim_simplices(self, dim: int) -> list[Simplex]:
        return [s for s in self.simplices if len(s) == dim + 1]

    def up_to(self, value: int) -> "FilteredComplex":
        """Sub-complex of simplices with filtration value <= ``value``."""
        return FilteredComplex(
            [(s, v) for s, v in zip(self.simplices, self.values) if v <= value]
        )

    def validate(self) -> None:
        """Check face closure and monotonicity; raise ValidationError if broken."""
        for s, v in zip(self.simplices, self.values):
            if not s or len(s) > MAX_DIM + 1:
                raise ValidationError(f"simplex {s} has unsupported dimension")
            if any(b <= a for a, b in zip(s, s[1:])):
                raise ValidationError(f"simplex {s} is not strictly sorted")
            if len(s) == 1:
                continue
            for face in combinations(s, len(s) - 1):
                fi = self.index.get(face)
                if fi is None:
                    raise ValidationError(f"face {face} of {s} is missing")
                if self.values[fi] > v:
                    raise ValidationError(
                        f"face {face} (value {self.values[fi]}) appears after {s} (value {v})"
                    )

    def dump(self) -> str:
        """Debug text format: ``v0,v1,...<TAB>value`` per line, canonical order."""
        return "".join(
            ",".join(map(str, s)) + f"\t{v}\n"
            for s, v in zip(self.simplices, self.values)
        )


def downward_closure(h: Hypergraph, max_dim: int = MAX_DIM) -> FilteredComplex:
    """All subsets of the hyperedges up to ``max_dim``+1 vertices.

    A subset's filtration value is the earliest arrival among the
    hyperedges containing it.  Hyperedges are scanned in arrival order, so
    the first writer of a subset wins.
    """
    if max_dim not in (1, 2):
        raise ValueError("max_dim must be 1 or 2")
    entries: dict[Simplex, int] = {}
    for e in h.edges:
        for size in range(1, min(len(e.vertices), max_dim + 1) + 1):
            for sub in combinations(e.vertices, size):
                entries.setdefault(sub, e.arrival)
    return FilteredComplex(entries)


def barycentric_subdivision(k: FilteredComplex) -> FilteredComplex:
    """Subdivide: one new vertex per simplex, simplices = inclusion chains.

    The new vertex for a simplex inherits its filtration value; a chain
    takes the maximum over its members (= value of its largest member,
    by monotonicity).  New vertex ids follow the (dimension, vertices)
    order of the input simplices.
    """
    order = sorted(k.simplices, key=sort_key)
    ident = {s: i for i, s in enumerate(order)}

    def is_face(a: Simplex, b: Simplex) -> bool:
        return set(a) < set(b)

    entries: dict[Simplex, int] = {}
    for s in order:
        entries[(ident[s],)] = k.value_of(s)
    faces_of: dict[Simplex, list[Simplex]] = {s: [] for s in order}
    for s in order:
        for t in order:
            if len(t) > len(s) and is_face(s, t):
                faces_of[t].append(s)
                a, b = ident[s], ident[t]
                entries[tuple(sorted((a, b)))] = k.value_of(t)
    for t in order:
        for s in faces_of[t]:
            for r in faces_of[s]:
                tri = tuple(sorted((ident[r], ident[s], ident[t])))
                entries[tri] = k.value_of(t)
    return FilteredComplex(entries)


def _gf2_rank(matrix: np.ndarray) -> int:
    """Rank over Z/2 by naive Gaussian elimination."""
    m = matrix.copy()
    rank = 0
    rows, cols = m.shape
    for col in range(cols):
        pivots = np.nonzero(m[rank:, col])[0]
        if pivots.size == 0:
            continue
        pivot = rank + pivots[0]
        m[[rank, pivot]] = m[[pivot, rank]]
        others = np.nonzero(m[:, col])[0]
        others = others[others != rank]
        m[others] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def betti_oracle(k: FilteredComplex, up_to_value: int | None = None) -> tuple[int, int]:
    """Betti numbers (b0, b1) over Z/2 of the sub-complex at a value.

    Slow dense reference implementation, independent of the persistence
    pipeline: b0 = #vertices - rank(d1), b1 = #edges - rank(d1) - rank(d2).
    ``up_to_value`` defaults to the full complex.
    """
    if up_to_value is not None:
        k = k.up_to(up_to_value)
    vertices = k.dim_simplices(0)
    edges = k.dim_simplices(1)
    triangles = k.dim_simplices(2)
    v_index = {s: i for i, s in enumerate(vertices)}
    e_index = {s: i for i, s in enumerate(edges)}

    d1 = np.zeros((len(vertices), len(edges)), dtype=np.uint8)
    for j, (a, b) in enumerate(edges):
        d1[v_index[(a,)], j] = 1
        d1[v_index[(b,)], j] = 1
    d2 = np.zeros((len(edges), len(triangles)), dtype=np.uint8)
    for j, tri in enumerate(triangles):
        for face in combinations(tri, 2):
            d2[e_index[face], j] = 1

    rank1 = _gf2_rank(d1)
    rank2 = _gf2_rank(d2)
    return len(vertices) - rank1, len(edges) - rank1 - rank2
