"""Persistent homology features and classification for time-stamped
hypergraphs: three filtration models (downward closure, restricted
subdivision, collapsed relative subdivision), barcode computation over
Z/2, five-feature vectorization and a cross-validated random forest.
"""

from .classify import (
    CVReport,
    ForestParams,
    RandomForest,
    cross_validate,
    predict,
    train_forest,
)
from .complexes import (
    FilteredComplex,
    barycentric_subdivision,
    betti_oracle,
    downward_closure,
)
from .errors import (
    ClassificationError,
    HypergraphError,
    ParseError,
    ValidationError,
)
from .features import (
    FeatureVector,
    extract_features,
    featurize_corpus,
)
from .filtration import (
    FiltrationKind,
    build_filtration,
    build_relbs_filtration,
    build_resbs_filtration,
    build_scc_filtration,
)
from .hypergraph import (
    DEFAULT_MAX_EDGE_SIZE,
    Corpus,
    Hyperedge,
    Hypergraph,
    ego_hypergraph,
    filter_by_size,
    parse_corpus,
    write_corpus_jsonl,
)
from .persistence import (
    Barcode,
    PersistencePair,
    alive_count,
    compute_persistence,
)

__version__ = "0.1.0"

__all__ = [
    "Barcode",
    "CVReport",
    "ClassificationError",
    "Corpus",
    "DEFAULT_MAX_EDGE_SIZE",
    "FeatureVector",
    "FilteredComplex",
    "FiltrationKind",
    "ForestParams",
    "Hyperedge",
    "Hypergraph",
    "HypergraphError",
    "ParseError",
    "PersistencePair",
    "RandomForest",
    "ValidationError",
    "alive_count",
    "barycentric_subdivision",
    "betti_oracle",
    "build_filtration",
    "build_relbs_filtration",
    "build_resbs_filtration",
    "build_scc_filtration",
    "compute_persistence",
    "cross_validate",
    "downward_closure",
    "ego_hypergraph",
    "extract_features",
    "featurize_corpus",
    "filter_by_size",
    "parse_corpus",
    "predict",
    "train_forest",
    "write_corpus_jsonl",
]
