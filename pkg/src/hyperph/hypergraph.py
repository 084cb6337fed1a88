"""Hypergraph representation and corpus ingestion.

A hypergraph is a vertex set together with an ordered sequence of
hyperedges.  Each hyperedge carries an ``arrival`` step: the index of the
sub-hypergraph in the nested sequence that the filtration builders
consume.  Two corpus formats are supported:

* jsonl, one object per line with fields ``id``, ``label``, ``edges``
  (arrays of vertex ids, filtration order = array order), optional
  ``arrivals`` and optional ``num_vertices``;
* "contact", four aligned text files ``<stem>-nverts.txt``,
  ``<stem>-simplices.txt``, ``<stem>-times.txt`` and ``<stem>-labels.txt``
  describing one timestamped contact network; the corpus items are the
  ego hypergraphs of the labeled vertices.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

from .errors import ParseError, ValidationError

log = logging.getLogger(__name__)

DEFAULT_MAX_EDGE_SIZE = 24


@dataclass(frozen=True)
class Hyperedge:
    """One higher-order interaction: a sorted vertex set plus its arrival step."""

    vertices: tuple[int, ...]
    arrival: int

    def __post_init__(self):
        if not self.vertices:
            raise ValidationError("hyperedge must contain at least one vertex")
        if any(b <= a for a, b in zip(self.vertices, self.vertices[1:])):
            raise ValidationError(
                f"hyperedge vertices must be strictly sorted, got {self.vertices}"
            )
        if self.vertices[0] < 0:
            raise ValidationError("vertex ids must be non-negative")
        if self.arrival < 0:
            raise ValidationError("arrival must be non-negative")

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count plus hyperedges sorted by arrival (stable)."""

    num_vertices: int
    edges: tuple[Hyperedge, ...]
    id: str = ""

    def __post_init__(self):
        for e in self.edges:
            if e.vertices[-1] >= self.num_vertices:
                raise ValidationError(
                    f"hypergraph {self.id!r}: vertex {e.vertices[-1]} out of range "
                    f"(num_vertices={self.num_vertices})"
                )
        arrivals = [e.arrival for e in self.edges]
        if any(b < a for a, b in zip(arrivals, arrivals[1:])):
            raise ValidationError(
                f"hypergraph {self.id!r}: arrivals must be non-decreasing"
            )

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def max_arrival(self) -> int:
        """Largest arrival step, or -1 for an edgeless hypergraph."""
        return self.edges[-1].arrival if self.edges else -1

    def edge_sets(self) -> dict[tuple[int, ...], int]:
        """Distinct hyperedge vertex sets mapped to their earliest arrival.

        Later duplicates of a vertex set change no complex, so only the
        first arrival is kept.
        """
        sets: dict[tuple[int, ...], int] = {}
        for e in self.edges:
            sets.setdefault(e.vertices, e.arrival)
        return sets


@dataclass(frozen=True)
class Corpus:
    """Labeled hypergraphs; the unit fed to featurization and classification."""

    items: tuple[tuple[Hypergraph, str], ...]

    def __post_init__(self):
        seen = set()
        for h, _ in self.items:
            if h.id in seen:
                raise ValidationError(f"duplicate hypergraph id {h.id!r}")
            seen.add(h.id)

    def __len__(self) -> int:
        return len(self.items)

    def labels(self) -> list[str]:
        return sorted({label for _, label in self.items})


def _rerank(values: Iterable[int]) -> list[int]:
    """Map values to dense consecutive ranks starting at 0; ties share a rank."""
    values = list(values)
    rank = {v: i for i, v in enumerate(sorted(set(values)))}
    return [rank[v] for v in values]


def _make_hypergraph(
    graph_id: str,
    edges: list[list[int]],
    arrivals: list[int] | None,
    num_vertices: int | None,
    line: int | None = None,
) -> Hypergraph:
    hyperedges = []
    for i, verts in enumerate(edges):
        if not verts:
            raise ValidationError(
                f"hypergraph {graph_id!r}: edge {i} is empty"
                + (f" (line {line})" if line else "")
            )
        arrival = arrivals[i] if arrivals is not None else i
        hyperedges.append(Hyperedge(tuple(sorted(set(verts))), arrival))
    hyperedges.sort(key=lambda e: e.arrival)
    max_vertex = max((e.vertices[-1] for e in hyperedges), default=-1)
    if num_vertices is None:
        num_vertices = max_vertex + 1
    return Hypergraph(num_vertices, tuple(hyperedges), graph_id)


def _parse_jsonl(lines: Iterable[str]) -> Corpus:
    items = []
    for lineno, raw in enumerate(lines, start=1):
        raw = raw.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=lineno) from exc
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object", line=lineno)
        try:
            graph_id = obj["id"]
            label = obj["label"]
            edges = obj["edges"]
        except KeyError as exc:
            raise ParseError(f"missing field {exc.args[0]!r}", line=lineno) from exc
        if not isinstance(graph_id, str) or not isinstance(label, str):
            raise ParseError("'id' and 'label' must be strings", line=lineno)
        if not isinstance(edges, list) or not all(
            isinstance(e, list) and all(isinstance(v, int) for v in e) for e in edges
        ):
            raise ParseError("'edges' must be an array of integer arrays", line=lineno)
        arrivals = obj.get("arrivals")
        if arrivals is not None:
            if (
                not isinstance(arrivals, list)
                or len(arrivals) != len(edges)
                or not all(isinstance(a, int) for a in arrivals)
            ):
                raise ParseError(
                    "'arrivals' must be an integer array matching 'edges'", line=lineno
                )
        num_vertices = obj.get("num_vertices")
        if num_vertices is not None and not isinstance(num_vertices, int):
            raise ParseError("'num_vertices' must be an integer", line=lineno)
        items.append(
            (_make_hypergraph(graph_id, edges, arrivals, num_vertices, lineno), label)
        )
    return Corpus(tuple(items))


def _read_int_lines(path: Path) -> list[int]:
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                values.append(int(raw))
            except ValueError as exc:
                raise ParseError(f"{path.name}: expected an integer", line=lineno) from exc
    return values


def _parse_contact(stem: str | Path) -> Corpus:
    """Parse the four-file contact format into a corpus of ego hypergraphs.

    Vertex ids are 1-based in the files and converted to 0-based here.
    Arrival = rank of the distinct timestamps, so simultaneous hyperedges
    share a filtration step.
    """
    stem = Path(stem)
    paths = {
        kind: stem.parent / f"{stem.name}-{kind}.txt"
        for kind in ("nverts", "simplices", "times", "labels")
    }
    for p in paths.values():
        if not p.exists():
            raise ParseError(f"missing contact file {p}")
    nverts = _read_int_lines(paths["nverts"])
    flat = _read_int_lines(paths["simplices"])
    times = _read_int_lines(paths["times"])
    if sum(nverts) != len(flat):
        raise ParseError(
            f"{paths['simplices'].name}: expected {sum(nverts)} vertex ids, got {len(flat)}"
        )
    if len(times) != len(nverts):
        raise ParseError(
            f"{paths['times'].name}: expected {len(nverts)} timestamps, got {len(times)}"
        )
    if any(v < 1 for v in flat):
        raise ValidationError("contact vertex ids must be 1-based positive integers")

    edges = []
    pos = 0
    for size in nverts:
        edges.append([v - 1 for v in flat[pos : pos + size]])
        pos += size
    base = _make_hypergraph(stem.name, edges, _rerank(times), None)

    labels: dict[int, str] = {}
    with open(paths["labels"], encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            raw = raw.rstrip("\n")
            if not raw.strip():
                continue
            parts = raw.split("\t")
            if len(parts) != 2:
                raise ParseError(
                    f"{paths['labels'].name}: expected 'vertex_id<TAB>label'",
                    line=lineno,
                )
            try:
                vertex = int(parts[0])
            except ValueError as exc:
                raise ParseError(
                    f"{paths['labels'].name}: vertex id must be an integer", line=lineno
                ) from exc
            labels[vertex - 1] = parts[1]

    items = []
    for vertex in sorted(labels):
        if vertex < 0 or vertex >= base.num_vertices:
            raise ValidationError(
                f"labeled vertex {vertex + 1} out of range for {stem.name}"
            )
        ego = ego_hypergraph(base, vertex)
        items.append((ego, labels[vertex]))
    return Corpus(tuple(items))


def parse_corpus(source, format: str = "jsonl") -> Corpus:
    """Parse a labeled hypergraph corpus.

    ``source`` is a text or byte stream (or an iterable of lines) for the
    jsonl format, and the path stem of the four aligned files for the
    contact format.
    """
    if format == "jsonl":
        if isinstance(source, (str, Path)):
            with open(source, encoding="utf-8") as fh:
                return _parse_jsonl(fh)
        lines = (
            line.decode("utf-8") if isinstance(line, bytes) else line
            for line in source
        )
        return _parse_jsonl(lines)
    if format == "contact":
        return _parse_contact(source)
    raise ValueError(f"unknown corpus format {format!r}")


def write_corpus_jsonl(corpus: Corpus, stream: IO[str]) -> None:
    """Serialize a corpus so that re-parsing yields an identical corpus.

    Arrivals are always written; ``num_vertices`` only when it cannot be
    recovered from the edges.
    """
    for h, label in corpus.items:
        obj: dict = {"id": h.id, "label": label}
        max_vertex = max((e.vertices[-1] for e in h.edges), default=-1)
        if h.num_vertices != max_vertex + 1:
            obj["num_vertices"] = h.num_vertices
        obj["edges"] = [list(e.vertices) for e in h.edges]
        obj["arrivals"] = [e.arrival for e in h.edges]
        stream.write(json.dumps(obj, separators=(",", ":")) + "\n")


def ego_hypergraph(h: Hypergraph, ego: int, with_mapping: bool = False):
    """Sub-hypergraph of the hyperedges containing ``ego``.

    Hyperedges are kept whole (they are atomic interactions), arrivals are
    re-ranked to consecutive steps starting at 0, and vertices are
    re-indexed densely.  With ``with_mapping`` the old->new vertex map is
    returned alongside the hypergraph.
    """
    if ego < 0 or ego >= h.num_vertices:
        raise ValidationError(f"ego vertex {ego} out of range")
    kept = [e for e in h.edges if ego in e.vertices]
    old_ids = sorted({v for e in kept for v in e.vertices} | {ego})
    mapping = {old: new for new, old in enumerate(old_ids)}
    ranks = _rerank(e.arrival for e in kept)
    edges = tuple(
        Hyperedge(tuple(mapping[v] for v in e.vertices), r)
        for e, r in zip(kept, ranks)
    )
    out = Hypergraph(len(old_ids), edges, f"{h.id}/ego{ego}")
    if with_mapping:
        return out, mapping
    return out


def filter_by_size(h: Hypergraph, max_size: int = DEFAULT_MAX_EDGE_SIZE) -> Hypergraph:
    """Drop hyperedges with more than ``max_size`` vertices.

    Arrivals of the surviving edges are re-ranked to consecutive steps;
    the vertex set is unchanged, so isolated vertices may remain.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    kept = [e for e in h.edges if e.size <= max_size]
    ranks = _rerank(e.arrival for e in kept)
    if len(kept) == len(h.edges) and all(e.arrival == r for e, r in zip(kept, ranks)):
        return h
    edges = tuple(Hyperedge(e.vertices, r) for e, r in zip(kept, ranks))
    return Hypergraph(h.num_vertices, edges, h.id)
