"""Command-line front end: one subcommand per pipeline stage.

    persist      corpus -> barcode CSV per filtration
    featurize    corpus -> feature CSV
    classify     features or corpus -> cross-validation report (JSON + text)
    diagram      barcode CSV -> persistence diagram SVGs
    ego-extract  contact-format files -> ego hypergraph corpus as jsonl

Exit codes: 0 success, 1 validation or classification error, 2 I/O or
parse error.  Outputs are written to a temp file and renamed so a failed
run never leaves a truncated artifact.  HYPERPH_LOG={error|info|debug}
selects stderr verbosity.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import re
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

from .classify import ForestParams, cross_validate
from .diagram import render_diagram
from .errors import ClassificationError, HypergraphError, ParseError, ValidationError
from .features import (
    barcode_for,
    featurize_corpus,
    read_feature_csv,
    write_feature_csv,
)
from .filtration import FiltrationKind
from .hypergraph import DEFAULT_MAX_EDGE_SIZE, Corpus, parse_corpus, write_corpus_jsonl
from .persistence import read_barcode_csv, write_barcode_csv

logger = logging.getLogger("hyperph")

KINDS = {k.value: k for k in FiltrationKind}
DIM_SETS = {"0": (0,), "1": (1,), "both": (0, 1)}


def _setup_logging() -> None:
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    level = levels.get(os.environ.get("HYPERPH_LOG", "error").lower(), logging.ERROR)
    logging.basicConfig(
        stream=sys.stderr, level=level, format="hyperph: %(levelname)s: %(message)s"
    )
    logger.setLevel(level)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    logger.debug("wrote %s", path)


def _load_corpus(args) -> Corpus:
    if args.format == "jsonl" and args.input == "-":
        return parse_corpus(sys.stdin, "jsonl")
    return parse_corpus(args.input, args.format)


def _log_size_cap(corpus: Corpus, max_size: int) -> None:
    removed = sum(
        1 for h, _ in corpus.items for e in h.edges if e.size > max_size
    )
    if removed:
        logger.info(
            "size cap %d removed %d hyperedge(s) before filtration", max_size, removed
        )


def _selected_kinds(name: str) -> list[FiltrationKind]:
    if name == "all":
        return [FiltrationKind.SCC, FiltrationKind.RESBS, FiltrationKind.RELBS]
    return [KINDS[name]]


def _out_path(out: str, kind: FiltrationKind, multiple: bool) -> Path:
    if multiple:
        return Path(f"{out}.{kind.value}.csv")
    return Path(out)


def _corpus_barcodes(corpus: Corpus, kind: FiltrationKind, args) -> list:
    work = partial(
        barcode_for,
        kind=kind,
        max_size=args.max_edge_size,
        include_zero_bars=args.include_zero_bars,
    )
    graphs = [h for h, _ in corpus.items]
    if args.jobs <= 1 or len(graphs) < 2:
        codes = [work(h) for h in graphs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            codes = list(pool.map(work, graphs, chunksize=8))
    return [(h.id, b) for h, b in zip(graphs, codes)]


def cmd_persist(args, parser) -> int:
    kinds = _selected_kinds(args.filtration)
    if len(kinds) > 1 and not args.out:
        parser.error("--filtration all requires --out (used as a filename stem)")
    corpus = _load_corpus(args)
    _log_size_cap(corpus, args.max_edge_size)
    for kind in kinds:
        items = _corpus_barcodes(corpus, kind, args)
        buf = io.StringIO()
        write_barcode_csv(buf, items)
        if args.out:
            _atomic_write(_out_path(args.out, kind, len(kinds) > 1), buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
    return 0


def cmd_featurize(args, parser) -> int:
    kinds = _selected_kinds(args.filtration)
    if len(kinds) > 1 and not args.out:
        parser.error("--filtration all requires --out (used as a filename stem)")
    corpus = _load_corpus(args)
    _log_size_cap(corpus, args.max_edge_size)
    dims = DIM_SETS[args.dims]
    for kind in kinds:
        rows = featurize_corpus(
            corpus,
            kind,
            dims=dims,
            max_size=args.max_edge_size,
            include_zero_bars=args.include_zero_bars,
            ymax_mode=args.ymax,
            jobs=args.jobs,
        )
        buf = io.StringIO()
        write_feature_csv(buf, rows, dims)
        if args.out:
            _atomic_write(_out_path(args.out, kind, len(kinds) > 1), buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
    return 0


def _grid_reports(args, parser) -> dict:
    """Cross-validate each requested (filtration, dim set) cell."""
    params = ForestParams(n_trees=args.trees, seed=args.seed)
    reports: dict[str, object] = {}
    if args.features:
        if args.input:
            parser.error("--features and --input are mutually exclusive")
        with open(args.features) as f:
            _, labels, X, _ = read_feature_csv(f)
        reports["features"] = cross_validate(X, labels, params, folds=args.folds)
        return reports
    if not args.input:
        parser.error("classify needs --features or --input")
    corpus = _load_corpus(args)
    _log_size_cap(corpus, args.max_edge_size)
    kinds = _selected_kinds(args.filtration)
    dim_names = ["0", "1", "both"] if args.dims == "all" else [args.dims]
    labels = [label for _, label in corpus.items]
    for kind in kinds:
        rows = featurize_corpus(
            corpus,
            kind,
            dims=(0, 1),
            max_size=args.max_edge_size,
            include_zero_bars=args.include_zero_bars,
            ymax_mode=args.ymax,
            jobs=args.jobs,
        )
        full = [vec.values for _, _, vec in rows]
        for dn in dim_names:
            if dn == "0":
                X = [v[:5] for v in full]
            elif dn == "1":
                X = [v[5:] for v in full]
            else:
                X = full
            key = f"{kind.value}.dims-{dn}"
            logger.info("cross-validating %s", key)
            reports[key] = cross_validate(X, labels, params, folds=args.folds)
    return reports


def cmd_classify(args, parser) -> int:
    reports = _grid_reports(args, parser)
    json_doc = (
        json.dumps({k: r.to_json_dict() for k, r in reports.items()}, indent=2) + "\n"
    )
    text_parts = []
    for key, report in reports.items():
        text_parts.append(f"[{key}]")
        text_parts.append(report.to_text())
    text_doc = "\n".join(text_parts)
    if args.out:
        _atomic_write(Path(args.out + ".json"), json_doc)
        _atomic_write(Path(args.out + ".txt"), text_doc)
    else:
        sys.stdout.write(text_doc)
    return 0


def _safe_name(graph_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", graph_id)


def cmd_diagram(args, parser) -> int:
    with open(args.barcodes) as f:
        per_graph = read_barcode_csv(f)
    out_dir = Path(args.out_dir)
    wanted = args.graph_id
    found = False
    for gid, rows in per_graph.items():
        if wanted and gid != wanted:
            continue
        found = True
        finite = [v for _, b, d in rows for v in (b, d) if d != float("inf")]
        births = [b for _, b, _ in rows]
        max_value = max(finite + births, default=1.0)
        for dim in (0, 1):
            bars = [(b, d) for dm, b, d in rows if dm == dim]
            svg = render_diagram(bars, max_value, title=f"{gid} dim {dim}")
            _atomic_write(out_dir / f"{_safe_name(gid)}.dim{dim}.svg", svg)
    if wanted and not found:
        raise ValidationError(f"graph id {wanted!r} not present in {args.barcodes}")
    return 0


def cmd_ego_extract(args, parser) -> int:
    corpus = parse_corpus(args.input, args.format)
    buf = io.StringIO()
    write_corpus_jsonl(corpus, buf)
    if args.out:
        _atomic_write(Path(args.out), buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperph",
        description="Persistent homology features and classification for "
        "time-stamped hypergraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    corpus_in = argparse.ArgumentParser(add_help=False)
    corpus_in.add_argument(
        "--input",
        help="jsonl corpus path ('-' for stdin) or contact-format file stem",
    )
    corpus_in.add_argument(
        "--format", choices=("jsonl", "contact"), default="jsonl",
        help="corpus input format (default: %(default)s)",
    )
    corpus_in.add_argument(
        "--max-edge-size", type=int, default=DEFAULT_MAX_EDGE_SIZE, metavar="N",
        help="drop hyperedges larger than N before building complexes "
        "(default: %(default)s)",
    )

    # parents= shares the action objects themselves, so flags whose
    # requiredness or choices differ per subcommand are added individually
    pipeline = argparse.ArgumentParser(add_help=False)
    pipeline.add_argument(
        "--include-zero-bars", action="store_true",
        help="keep zero-length bars instead of dropping them",
    )
    pipeline.add_argument(
        "--jobs", type=int, default=os.cpu_count() or 1, metavar="N",
        help="worker processes over the corpus (default: %(default)s)",
    )
    pipeline.add_argument("--out", help="output path (stem with --filtration all)")

    feat_opts = argparse.ArgumentParser(add_help=False)
    feat_opts.add_argument(
        "--ymax", choices=("barcode", "global"), default="barcode",
        help="y_max convention for the infinite-death substitution "
        "(default: %(default)s)",
    )

    def add_filtration(p, **kwargs):
        p.add_argument(
            "--filtration", choices=("scc", "resbs", "relbs", "all"), **kwargs
        )

    p = sub.add_parser(
        "persist", parents=[corpus_in, pipeline],
        help="compute barcodes and write barcode CSV",
    )
    add_filtration(p, required=True, help="filtration model to run")
    p.set_defaults(func=cmd_persist)

    p = sub.add_parser(
        "featurize", parents=[corpus_in, pipeline, feat_opts],
        help="compute the five-feature blocks per hypergraph",
    )
    add_filtration(p, required=True, help="filtration model to run")
    p.add_argument(
        "--dims", choices=("0", "1", "both"), default="both",
        help="homology dimensions to featurize (default: %(default)s)",
    )
    p.set_defaults(func=cmd_featurize)

    p = sub.add_parser(
        "classify", parents=[corpus_in, pipeline, feat_opts],
        help="cross-validated random forest over features",
    )
    p.add_argument("--features", help="precomputed feature CSV (skips featurization)")
    add_filtration(
        p, default="relbs",
        help="filtration model(s) when featurizing (default: %(default)s)",
    )
    p.add_argument(
        "--dims", choices=("0", "1", "both", "all"), default="both",
        help="dimension set(s); 'all' emits the full grid (default: %(default)s)",
    )
    p.add_argument("--trees", type=int, default=100, help="forest size (default: %(default)s)")
    p.add_argument("--folds", type=int, default=10, help="CV folds (default: %(default)s)")
    p.add_argument("--seed", type=int, default=42, help="RNG seed (default: %(default)s)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("diagram", help="render persistence diagrams as SVG")
    p.add_argument("--barcodes", required=True, help="barcode CSV from 'persist'")
    p.add_argument("--out-dir", required=True, help="directory for the SVG files")
    p.add_argument("--graph-id", help="render only this graph id")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser(
        "ego-extract", help="extract ego hypergraphs from contact-format files"
    )
    p.add_argument("--input", required=True, help="contact-format file stem")
    p.add_argument(
        "--format", choices=("contact", "jsonl"), default="contact",
        help="input format (default: %(default)s)",
    )
    p.add_argument("--out", help="jsonl output path (default: stdout)")
    p.set_defaults(func=cmd_ego_extract)

    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except ParseError as e:
        print(f"hyperph: parse error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"hyperph: i/o error: {e}", file=sys.stderr)
        return 2
    except (ValidationError, ClassificationError) as e:
        print(f"hyperph: error: {e}", file=sys.stderr)
        return 1
    except HypergraphError as e:
        print(f"hyperph: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
