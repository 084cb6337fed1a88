"""Persistent homology of filtered complexes in dimensions 0 and 1.

Coefficients are Z/2.  Dimension 0 is paired by union-find with the elder
rule; dimension 1 by left-to-right reduction of the triangle boundary
matrix.  Both steps live in the pairing kernel (see kernels); this module
builds the kernel input from a FilteredComplex and interprets the output
as a barcode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .complexes import FilteredComplex
from .errors import ParseError, ValidationError

INF = math.inf


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth: float
    death: float

    def __post_init__(self) -> None:
        if self.death < self.birth:
            raise ValidationError(
                f"pair dies at {self.death} before its birth {self.birth}"
            )

    @property
    def finite(self) -> bool:
        return self.death != INF

    @property
    def length(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class Barcode:
    pairs: tuple[PersistencePair, ...]
    max_filtration_value: int = 0

    def bars(self, dim: int) -> list[tuple[float, float]]:
        return [(p.birth, p.death) for p in self.pairs if p.dim == dim]

    def count(self, dim: int) -> int:
        return sum(1 for p in self.pairs if p.dim == dim)

    def betti(self, dim: int, t: float) -> int:
        return alive_count(self, dim, t)


def alive_count(b: Barcode, dim: int, t: float) -> int:
    """Number of dim-d classes alive at value t (birth <= t < death)."""
    return sum(1 for p in b.pairs if p.dim == dim and p.birth <= t < p.death)


def _kernel_input(fc: FilteredComplex) -> tuple[np.ndarray, np.ndarray, int]:
    n = len(fc.simplices)
    dims = np.empty(n, dtype=np.int8)
    faces = np.full(3 * n, -1, dtype=np.int64)
    index = fc.index
    for i, s in enumerate(fc.simplices):
        d = len(s) - 1
        dims[i] = d
        if d == 0:
            continue
        if d == 1:
            sub = ((s[0],), (s[1],))
        else:
            sub = ((s[0], s[1]), (s[0], s[2]), (s[1], s[2]))
        for k, f in enumerate(sub):
            j = index.get(f)
            if j is None:
                raise ValidationError(f"simplex {s} is missing face {f}")
            if j >= i:
                raise ValidationError(
                    f"face {f} does not precede {s} in filtration order"
                )
            faces[3 * i + k] = j
    return dims, faces, n


def boundary_pairing(fc: FilteredComplex, backend: str | None = None) -> np.ndarray:
    """Raw creator/destroyer matching: pair_of[i] is the partner index or -1.

    Exposed for conservation checks; compute_persistence is the friendly
    interface.
    """
    dims, faces, n = _kernel_input(fc)
    return np.asarray(kernels.pair_simplices(dims, faces, n, backend=backend))


def compute_persistence(
    fc: FilteredComplex,
    include_zero_bars: bool = False,
    backend: str | None = None,
) -> Barcode:
    dims, faces, n = _kernel_input(fc)
    pair_of = kernels.pair_simplices(dims, faces, n, backend=backend)
    values = fc.values
    out: list[PersistencePair] = []
    for i in range(n):
        j = pair_of[i]
        if j < 0:
            # Unpaired simplex: essential class in its own dimension.  An
            # unpaired triangle creates a dim-2 class, outside our range.
            if dims[i] < 2:
                out.append(PersistencePair(int(dims[i]), float(values[i]), INF))
        elif j > i:
            birth, death = float(values[i]), float(values[j])
            if birth == death and not include_zero_bars:
                continue
            out.append(PersistencePair(int(dims[i]), birth, death))
    out.sort(key=lambda p: (p.dim, p.birth, p.death))
    return Barcode(tuple(out), fc.max_value())


def _fmt_value(v: float) -> str:
    if v == INF:
        return "inf"
    if v == int(v):
        return str(int(v))
    return repr(v)


def barcode_rows(graph_id: str, b: Barcode) -> list[tuple[str, str, str, str]]:
    return [
        (graph_id, str(p.dim), _fmt_value(p.birth), _fmt_value(p.death))
        for p in b.pairs
    ]


BARCODE_HEADER = "graph_id,dim,birth,death"


def write_barcode_csv(stream, items) -> None:
    """items: iterable of (graph_id, Barcode); rows per graph sorted by
    (dim, birth, death), graphs kept in input order."""
    stream.write(BARCODE_HEADER + "\n")
    for graph_id, b in items:
        for row in barcode_rows(graph_id, b):
            stream.write(",".join(row) + "\n")


def read_barcode_csv(stream) -> dict[str, list[tuple[int, float, float]]]:
    """Inverse of write_barcode_csv, keyed by graph id."""
    header = stream.readline().strip()
    if header != BARCODE_HEADER:
        raise ParseError(f"unexpected barcode header {header!r}")
    out: dict[str, list[tuple[int, float, float]]] = {}
    for lineno, line in enumerate(stream, start=2):
        line = line.strip()
        if not line:
            continue
        try:
            gid, dim, birth, death = line.rsplit(",", 3)
            out.setdefault(gid, []).append((int(dim), float(birth), float(death)))
        except ValueError as e:
            raise ParseError(str(e), line=lineno) from None
    return out
