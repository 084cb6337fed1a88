"""Barcode vectorization: five summary statistics per homology dimension.

For a barcode with bars (x_i, y_i) the features are the bar count and

    f1 = sum x_i (y_i - x_i)
    f2 = sum (y_max - y_i)(y_i - x_i)
    f3 = sum x_i^2 (y_i - x_i)^4
    f4 = sum (y_max - y_i)^2 (y_i - x_i)^4

with infinite deaths replaced by y_max first.  y_max is the largest finite
endpoint of that dimension's barcode by default; mode "global" uses the
complex's maximum filtration value instead.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .complexes import FilteredComplex
from .errors import HypergraphError, ParseError, ValidationError
from .filtration import FiltrationKind, build_filtration
from .hypergraph import DEFAULT_MAX_EDGE_SIZE, Corpus, Hypergraph, filter_by_size
from .persistence import Barcode, compute_persistence

FEATURE_NAMES = ("count", "f1", "f2", "f3", "f4")
YMAX_MODES = ("barcode", "global")


@dataclass(frozen=True)
class FeatureVector:
    """Flat feature block: five entries per requested dimension, dim 0 first."""

    dims: tuple[int, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 5 * len(self.dims):
            raise ValidationError(
                f"expected {5 * len(self.dims)} values, got {len(self.values)}"
            )

    def block(self, dim: int) -> tuple[float, ...]:
        i = self.dims.index(dim)
        return self.values[5 * i : 5 * i + 5]


def feature_columns(dims: tuple[int, ...]) -> list[str]:
    return [f"d{d}_{name}" for d in dims for name in FEATURE_NAMES]


def _dim_block(b: Barcode, dim: int, ymax_mode: str) -> tuple[float, ...]:
    bars = b.bars(dim)
    if not bars:
        return (0.0, 0.0, 0.0, 0.0, 0.0)
    if ymax_mode == "global":
        y_max = float(b.max_filtration_value)
    else:
        y_max = max(
            v for x, y in bars for v in (x, y) if v != math.inf
        )
    f1 = f2 = f3 = f4 = 0.0
    for x, y in bars:
        if y == math.inf:
            y = y_max
        life = y - x
        slack = y_max - y
        f1 += x * life
        f2 += slack * life
        f3 += x * x * life**4
        f4 += slack * slack * life**4
    return (float(len(bars)), f1, f2, f3, f4)


def extract_features(
    b: Barcode,
    dims: tuple[int, ...] = (0, 1),
    ymax_mode: str = "barcode",
) -> FeatureVector:
    if ymax_mode not in YMAX_MODES:
        raise ValidationError(f"unknown ymax mode {ymax_mode!r}")
    dims = tuple(sorted(set(dims)))
    if not dims or any(d not in (0, 1) for d in dims):
        raise ValidationError(f"dims must be a non-empty subset of {{0, 1}}: {dims}")
    values: list[float] = []
    for d in dims:
        values.extend(_dim_block(b, d, ymax_mode))
    return FeatureVector(dims, tuple(values))


def barcode_for(
    h: Hypergraph,
    kind: FiltrationKind,
    max_size: int = DEFAULT_MAX_EDGE_SIZE,
    include_zero_bars: bool = False,
) -> Barcode:
    """Full pipeline for one hypergraph: size cap, filtration, persistence."""
    try:
        capped = filter_by_size(h, max_size)
        fc: FilteredComplex = build_filtration(capped, kind)
        return compute_persistence(fc, include_zero_bars=include_zero_bars)
    except HypergraphError as e:
        raise type(e)(f"{h.id}: {e}") from e


def featurize_one(
    h: Hypergraph,
    kind: FiltrationKind,
    dims: tuple[int, ...] = (0, 1),
    max_size: int = DEFAULT_MAX_EDGE_SIZE,
    include_zero_bars: bool = False,
    ymax_mode: str = "barcode",
) -> FeatureVector:
    barcode = barcode_for(h, kind, max_size, include_zero_bars)
    return extract_features(barcode, dims, ymax_mode)


def featurize_corpus(
    corpus: Corpus,
    kind: FiltrationKind,
    dims: tuple[int, ...] = (0, 1),
    max_size: int = DEFAULT_MAX_EDGE_SIZE,
    include_zero_bars: bool = False,
    ymax_mode: str = "barcode",
    jobs: int = 1,
) -> list[tuple[str, str, FeatureVector]]:
    """One row (id, label, features) per corpus item, in corpus order."""
    work = partial(
        featurize_one,
        kind=kind,
        dims=dims,
        max_size=max_size,
        include_zero_bars=include_zero_bars,
        ymax_mode=ymax_mode,
    )
    graphs = [h for h, _ in corpus.items]
    if jobs <= 1 or len(graphs) < 2:
        vecs = [work(h) for h in graphs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            vecs = list(pool.map(work, graphs, chunksize=8))
    return [
        (h.id, label, vec) for (h, label), vec in zip(corpus.items, vecs)
    ]


def _fmt_real(v: float) -> str:
    return format(v, ".17g")


def write_feature_csv(stream, rows, dims: tuple[int, ...]) -> None:
    dims = tuple(sorted(set(dims)))
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["id", "label"] + feature_columns(dims))
    for gid, label, vec in rows:
        cells = [gid, label]
        for d in dims:
            count, *fs = vec.block(d)
            cells.append(str(int(count)))
            cells.extend(_fmt_real(f) for f in fs)
        writer.writerow(cells)


def read_feature_csv(stream):
    """Returns (ids, labels, X, columns) with X a float64 matrix."""
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty feature file") from None
    if header[:2] != ["id", "label"]:
        raise ParseError(f"unexpected feature header {header!r}")
    columns = header[2:]
    if not columns:
        raise ParseError("feature file has no feature columns")
    ids: list[str] = []
    labels: list[str] = []
    data: list[list[float]] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ParseError(
                f"expected {len(header)} cells, got {len(row)}", line=lineno
            )
        ids.append(row[0])
        labels.append(row[1])
        try:
            data.append([float(c) for c in row[2:]])
        except ValueError as e:
            raise ParseError(str(e), line=lineno) from None
    X = np.array(data, dtype=np.float64) if data else np.empty((0, len(columns)))
    return ids, labels, X, columns
