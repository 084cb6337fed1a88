"""Random forest classifier with stratified k-fold cross-validation.

Written against numpy only.  Trees split on Gini impurity over a random
feature subset, thresholds at midpoints of consecutive distinct values.
All randomness derives from a single seed through named SeedSequence
spawn keys, so results do not depend on execution schedule.

Metric conventions: one confusion matrix aggregates the out-of-fold
predictions of every fold; per-class precision/recall are reported with
None (serialized "NA") when a class has no predicted/actual instances;
macro averages span the classes where the metric is defined.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ClassificationError

logger = logging.getLogger("hyperph")


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100
    max_depth: int | None = None
    min_samples_split: int = 2
    features_per_split: int | None = None
    seed: int = 42

    def __post_init__(self) -> None:
        if self.n_trees < 1:
            raise ClassificationError(f"n_trees must be >= 1, got {self.n_trees}")
        if self.min_samples_split < 2:
            raise ClassificationError(
                f"min_samples_split must be >= 2, got {self.min_samples_split}"
            )
        if self.max_depth is not None and self.max_depth < 1:
            raise ClassificationError(f"max_depth must be >= 1, got {self.max_depth}")


@dataclass(frozen=True)
class _Leaf:
    label_index: int


@dataclass(frozen=True)
class _Split:
    feature: int
    threshold: float
    left: "_Leaf | _Split"
    right: "_Leaf | _Split"


def _gini_best_split(X, y_idx, rows, feat, n_classes):
    """Best (weighted_gini, threshold) for one feature, or None if constant."""
    vals = X[rows, feat]
    order = np.argsort(vals, kind="stable")
    sv = vals[order]
    cuts = np.nonzero(sv[:-1] != sv[1:])[0]
    if cuts.size == 0:
        return None
    onehot = np.zeros((rows.size, n_classes), dtype=np.float64)
    onehot[np.arange(rows.size), y_idx[rows][order]] = 1.0
    cum = np.cumsum(onehot, axis=0)
    total = cum[-1]
    n = float(rows.size)
    left = cum[cuts]
    right = total - left
    nl = cuts + 1.0
    nr = n - nl
    gini_l = 1.0 - np.sum((left / nl[:, None]) ** 2, axis=1)
    gini_r = 1.0 - np.sum((right / nr[:, None]) ** 2, axis=1)
    weighted = (nl * gini_l + nr * gini_r) / n
    k = int(np.argmin(weighted))
    threshold = (sv[cuts[k]] + sv[cuts[k] + 1]) / 2.0
    return float(weighted[k]), threshold


def _majority(y_idx, rows, n_classes) -> _Leaf:
    counts = np.bincount(y_idx[rows], minlength=n_classes)
    return _Leaf(int(np.argmax(counts)))


def _grow(X, y_idx, rows, rng, params, n_classes, m, depth):
    if rows.size < params.min_samples_split:
        return _majority(y_idx, rows, n_classes)
    if params.max_depth is not None and depth >= params.max_depth:
        return _majority(y_idx, rows, n_classes)
    first = y_idx[rows[0]]
    if bool(np.all(y_idx[rows] == first)):
        return _Leaf(int(first))
    d = X.shape[1]
    feats = np.sort(rng.choice(d, size=m, replace=False))
    best = None
    for f in feats:
        cand = _gini_best_split(X, y_idx, rows, int(f), n_classes)
        if cand is None:
            continue
        if best is None or cand[0] < best[0]:
            best = (cand[0], int(f), cand[1])
    if best is None:
        return _majority(y_idx, rows, n_classes)
    _, feat, thr = best
    mask = X[rows, feat] <= thr
    left_rows = rows[mask]
    right_rows = rows[~mask]
    return _Split(
        feat,
        thr,
        _grow(X, y_idx, left_rows, rng, params, n_classes, m, depth + 1),
        _grow(X, y_idx, right_rows, rng, params, n_classes, m, depth + 1),
    )


@dataclass(frozen=True)
class RandomForest:
    trees: tuple
    classes: tuple[str, ...]
    n_features: int


def train_forest(X, y, params: ForestParams = ForestParams()) -> RandomForest:
    X = np.asarray(X, dtype=np.float64)
    y = list(y)
    if X.ndim != 2 or X.shape[0] != len(y):
        raise ClassificationError(
            f"feature matrix {X.shape} does not match {len(y)} labels"
        )
    if len(y) < 2:
        raise ClassificationError("need at least 2 training rows")
    classes = tuple(sorted(set(y)))
    if len(classes) < 2:
        raise ClassificationError(f"single class {classes[0]!r} in training data")
    lookup = {c: i for i, c in enumerate(classes)}
    y_idx = np.array([lookup[label] for label in y], dtype=np.int64)
    n, d = X.shape
    m = params.features_per_split or math.isqrt(d - 1) + 1
    m = max(1, min(m, d))
    trees = []
    for t in range(params.n_trees):
        rng = np.random.default_rng(np.random.SeedSequence(params.seed, spawn_key=(0, t)))
        rows = rng.integers(0, n, size=n)
        trees.append(_grow(X, y_idx, rows, rng, params, len(classes), m, 0))
    return RandomForest(tuple(trees), classes, d)


def _walk(node, x):
    while isinstance(node, _Split):
        node = node.left if x[node.feature] <= node.threshold else node.right
    return node.label_index


def predict(forest: RandomForest, x) -> str:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (forest.n_features,):
        raise ClassificationError(
            f"expected {forest.n_features} features, got shape {x.shape}"
        )
    votes = np.zeros(len(forest.classes), dtype=np.int64)
    for tree in forest.trees:
        votes[_walk(tree, x)] += 1
    # argmax takes the first maximum, i.e. the lexicographically smallest
    # label since classes are sorted.
    return forest.classes[int(np.argmax(votes))]


def predict_batch(forest: RandomForest, X) -> list[str]:
    X = np.asarray(X, dtype=np.float64)
    return [predict(forest, row) for row in X]


@dataclass(frozen=True)
class CVReport:
    classes: tuple[str, ...]
    accuracy: float
    per_class: tuple[tuple[str, float | None, float | None], ...]
    macro_precision: float | None
    macro_recall: float | None
    fold_accuracies: tuple[float, ...]
    confusion: tuple[tuple[int, ...], ...]
    folds: int = field(default=0)

    def to_json_dict(self) -> dict:
        def na(v):
            return "NA" if v is None else v

        return {
            "classes": list(self.classes),
            "accuracy": self.accuracy,
            "per_class": [
                {"label": c, "precision": na(p), "recall": na(r)}
                for c, p, r in self.per_class
            ],
            "macro_precision": na(self.macro_precision),
            "macro_recall": na(self.macro_recall),
            "fold_accuracies": list(self.fold_accuracies),
            "confusion": [list(row) for row in self.confusion],
            "folds": self.folds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        def na(v):
            return "NA" if v is None else f"{v:.4f}"

        width = max(len("class"), len("macro"), *(len(c) for c in self.classes))
        lines = [
            f"folds: {self.folds}",
            f"accuracy: {self.accuracy:.4f}",
            "fold accuracies: " + " ".join(f"{a:.4f}" for a in self.fold_accuracies),
            "",
            f"{'class':<{width}}  precision  recall",
        ]
        for c, p, r in self.per_class:
            lines.append(f"{c:<{width}}  {na(p):>9}  {na(r):>6}")
        lines.append(
            f"{'macro':<{width}}  {na(self.macro_precision):>9}  {na(self.macro_recall):>6}"
        )
        lines.append("")
        cw = max(width, *(len(str(v)) for row in self.confusion for v in row))
        lines.append("confusion (rows actual, columns predicted)")
        lines.append(" " * (width + 2) + "  ".join(f"{c:>{cw}}" for c in self.classes))
        for c, row in zip(self.classes, self.confusion):
            lines.append(
                f"{c:<{width}}  " + "  ".join(f"{v:>{cw}}" for v in row)
            )
        return "\n".join(lines) + "\n"


def stratified_folds(y, folds: int, seed: int) -> np.ndarray:
    """Fold index per row: per-class shuffle then round-robin assignment."""
    y = list(y)
    classes = sorted(set(y))
    assign = np.full(len(y), -1, dtype=np.int64)
    for ci, c in enumerate(classes):
        rows = np.array([i for i, label in enumerate(y) if label == c])
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1, ci)))
        rng.shuffle(rows)
        for pos, r in enumerate(rows):
            assign[r] = pos % folds
    return assign


def cross_validate(X, y, params: ForestParams = ForestParams(), folds: int = 10) -> CVReport:
    X = np.asarray(X, dtype=np.float64)
    y = list(y)
    if X.shape[0] != len(y):
        raise ClassificationError(
            f"feature matrix {X.shape} does not match {len(y)} labels"
        )
    classes = tuple(sorted(set(y)))
    if len(classes) < 2:
        raise ClassificationError("cross-validation needs at least 2 classes")
    counts = {c: y.count(c) for c in classes}
    smallest = min(counts.values())
    if smallest < folds:
        logger.warning(
            "smallest class has %d members; reducing folds from %d to %d",
            smallest,
            folds,
            smallest,
        )
        folds = smallest
    if folds < 2:
        raise ClassificationError(
            f"cannot cross-validate with {folds} fold(s); smallest class too small"
        )
    assign = stratified_folds(y, folds, params.seed)
    lookup = {c: i for i, c in enumerate(classes)}
    confusion = np.zeros((len(classes), len(classes)), dtype=np.int64)
    fold_accuracies = []
    for f in range(folds):
        test = np.nonzero(assign == f)[0]
        train = np.nonzero(assign != f)[0]
        forest = train_forest(X[train], [y[i] for i in train], params)
        hits = 0
        for i in test:
            pred = predict(forest, X[i])
            confusion[lookup[y[i]], lookup[pred]] += 1
            hits += pred == y[i]
        fold_accuracies.append(hits / test.size)
    total = int(confusion.sum())
    accuracy = float(np.trace(confusion)) / total
    per_class = []
    precisions = []
    recalls = []
    for i, c in enumerate(classes):
        col = int(confusion[:, i].sum())
        row = int(confusion[i, :].sum())
        p = float(confusion[i, i]) / col if col else None
        r = float(confusion[i, i]) / row if row else None
        per_class.append((c, p, r))
        if p is not None:
            precisions.append(p)
        if r is not None:
            recalls.append(r)
    return CVReport(
        classes=classes,
        accuracy=accuracy,
        per_class=tuple(per_class),
        macro_precision=sum(precisions) / len(precisions) if precisions else None,
        macro_recall=sum(recalls) / len(recalls) if recalls else None,
        fold_accuracies=tuple(fold_accuracies),
        confusion=tuple(tuple(int(v) for v in row) for row in confusion),
        folds=folds,
    )
