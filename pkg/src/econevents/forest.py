"""Random-forest regression built from scratch on Gini-impurity splits.

Trees are grown on bootstrap samples; each split considers a random
feature subset and chooses the threshold minimizing weighted binary Gini
impurity.  Leaves store the mean of their 0/1 labels, so predictions are
always in [0, 1].  A single seed makes training bit-reproducible.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .events import CandidateQuintuple, EventKey
from .matching import GroundTruthEvent, MODE_RELAXED, match_attributes
from .ontology import Ontology
from .selection import FEATURE_SCHEMA, FeatureVector, encode_features, extract_features

logger = logging.getLogger(__name__)

DEFAULT_N_TREES = 100
DEFAULT_MAX_DEPTH = 12
DEFAULT_MIN_LEAF = 2


class FeatureSchemaError(ValueError):
    """Feature row does not match the schema the model was trained on."""


@dataclass(frozen=True)
class TrainingInstance:
    features: FeatureVector
    label: int
    event_key: EventKey
    company_tag: str


def label_instances(
    by_event: Mapping[EventKey, Sequence[CandidateQuintuple]],
    truths: Iterable[GroundTruthEvent],
    ontology: Ontology,
) -> list[TrainingInstance]:
    """Label every candidate 1 iff it matches its event's ground truth
    under relaxed attribute matching; events absent from the truth set
    contribute all-zero labels.  The company tag (the subject id) drives
    leave-one-out fold assignment."""
    truth_index: dict[EventKey, GroundTruthEvent] = {}
    for truth in truths:
        key = EventKey(
            truth.subject_id,
            ontology.second_level_ancestor(truth.predicate),
            truth.object_id,
        )
        truth_index[key] = truth
    instances = []
    for key in sorted(by_event):
        pool = by_event[key]
        truth = truth_index.get(key)
        for cand in pool:
            label = 0
            if truth is not None and match_attributes(cand, truth, MODE_RELAXED):
                label = 1
            instances.append(
                TrainingInstance(
                    features=extract_features(cand, pool),
                    label=label,
                    event_key=key,
                    company_tag=key.subject_id,
                )
            )
    return instances


def _gini(label_sum: float, n: int) -> float:
    p = label_sum / n
    return 2.0 * p * (1.0 - p)


@dataclass
class _Tree:
    feature: list[int] = field(default_factory=list)
    threshold: list[float] = field(default_factory=list)
    left: list[int] = field(default_factory=list)
    right: list[int] = field(default_factory=list)
    value: list[float] = field(default_factory=list)
    n_samples: list[int] = field(default_factory=list)
    impurity: list[float] = field(default_factory=list)

    def new_node(self, value: float, n: int, impurity: float) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(value)
        self.n_samples.append(n)
        self.impurity.append(impurity)
        return len(self.value) - 1

    def to_dict(self) -> dict:
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left,
            "right": self.right,
            "value": self.value,
            "n_samples": self.n_samples,
            "impurity": self.impurity,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "_Tree":
        return cls(
            feature=list(d["feature"]),
            threshold=list(d["threshold"]),
            left=list(d["left"]),
            right=list(d["right"]),
            value=list(d["value"]),
            n_samples=list(d["n_samples"]),
            impurity=list(d["impurity"]),
        )

    def predict_one(self, row: Sequence[float]) -> float:
        i = 0
        while self.feature[i] >= 0:
            i = self.left[i] if row[self.feature[i]] <= self.threshold[i] else self.right[i]
        return self.value[i]


def _best_split(
    X: np.ndarray, y: np.ndarray, idx: np.ndarray, feat_ids: np.ndarray, min_leaf: int
) -> tuple[float, int, float] | None:
    """Lowest weighted child impurity over the feature subset.

    Features are scanned in ascending index order and only strictly better
    splits replace the incumbent, so ties go to the lowest feature index
    and lowest threshold.
    """
    n = idx.size
    best: tuple[float, int, float] | None = None
    for f in feat_ids:
        vals = X[idx, f]
        order = np.argsort(vals, kind="stable")
        sv = vals[order]
        sy = y[idx][order]
        cum = np.cumsum(sy)
        total = cum[-1]
        pos = np.arange(1, n)
        mask = (sv[1:] != sv[:-1]) & (pos >= min_leaf) & (pos <= n - min_leaf)
        if not mask.any():
            continue
        ln = pos[mask].astype(float)
        ls = cum[:-1][mask]
        rn = n - ln
        rs = total - ls
        pl = ls / ln
        pr = rs / rn
        weighted = ln * 2.0 * pl * (1.0 - pl) + rn * 2.0 * pr * (1.0 - pr)
        j = int(np.argmin(weighted))
        if best is None or weighted[j] < best[0] - 1e-12:
            cut = int(pos[mask][j])
            threshold = float((sv[cut - 1] + sv[cut]) / 2.0)
            best = (float(weighted[j]), int(f), threshold)
    return best


def _grow(
    tree: _Tree,
    X: np.ndarray,
    y: np.ndarray,
    idx: np.ndarray,
    depth: int,
    rng: np.random.Generator,
    max_depth: int,
    min_leaf: int,
    features_per_split: int,
) -> int:
    n = idx.size
    label_sum = float(y[idx].sum())
    impurity = _gini(label_sum, n)
    node = tree.new_node(label_sum / n, n, impurity)
    if depth >= max_depth or impurity <= 0.0 or n < 2 * min_leaf:
        return node
    n_features = X.shape[1]
    if features_per_split >= n_features:
        feat_ids = np.arange(n_features)
    else:
        feat_ids = np.sort(rng.choice(n_features, size=features_per_split, replace=False))
    best = _best_split(X, y, idx, feat_ids, min_leaf)
    if best is None:
        return node
    _, f, threshold = best
    mask = X[idx, f] <= threshold
    left_idx = idx[mask]
    right_idx = idx[~mask]
    if left_idx.size == 0 or right_idx.size == 0:
        return node
    tree.feature[node] = f
    tree.threshold[node] = threshold
    tree.left[node] = _grow(tree, X, y, left_idx, depth + 1, rng, max_depth, min_leaf, features_per_split)
    tree.right[node] = _grow(tree, X, y, right_idx, depth + 1, rng, max_depth, min_leaf, features_per_split)
    return node


@dataclass
class ForestModel:
    schema: tuple[str, ...]
    hyperparams: dict
    seed: int
    trees: list[_Tree]

    def predict_one(self, row: Sequence[float]) -> float:
        if len(row) != len(self.schema):
            raise FeatureSchemaError(
                f"expected {len(self.schema)} features, got {len(row)}"
            )
        return sum(t.predict_one(row) for t in self.trees) / len(self.trees)

    def predict(self, rows: Iterable[Sequence[float]]) -> list[float]:
        return [self.predict_one(r) for r in rows]

    def to_dict(self) -> dict:
        return {
            "schema": list(self.schema),
            "hyperparams": self.hyperparams,
            "seed": self.seed,
            "trees": [t.to_dict() for t in self.trees],
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "ForestModel":
        d = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            schema=tuple(d["schema"]),
            hyperparams=d["hyperparams"],
            seed=int(d["seed"]),
            trees=[_Tree.from_dict(t) for t in d["trees"]],
        )


def train_forest(
    instances: Sequence[TrainingInstance],
    n_trees: int = DEFAULT_N_TREES,
    max_depth: int = DEFAULT_MAX_DEPTH,
    min_leaf: int = DEFAULT_MIN_LEAF,
    features_per_split: int | None = None,
    seed: int = 0,
) -> ForestModel:
    """Fit the ensemble; identical seeds produce identical models."""
    if not instances:
        raise ValueError("no training instances")
    labels = {i.label for i in instances}
    if len(labels) < 2:
        logger.warning("training set has a single label %s; model will be constant", labels)
    X = np.array([encode_features(i.features) for i in instances], dtype=float)
    y = np.array([i.label for i in instances], dtype=float)
    return train_forest_xy(
        X,
        y,
        schema=FEATURE_SCHEMA,
        n_trees=n_trees,
        max_depth=max_depth,
        min_leaf=min_leaf,
        features_per_split=features_per_split,
        seed=seed,
    )


def train_forest_xy(
    X: np.ndarray,
    y: np.ndarray,
    *,
    schema: tuple[str, ...] | None = None,
    n_trees: int = DEFAULT_N_TREES,
    max_depth: int = DEFAULT_MAX_DEPTH,
    min_leaf: int = DEFAULT_MIN_LEAF,
    features_per_split: int | None = None,
    seed: int = 0,
) -> ForestModel:
    """Fit directly on a numeric matrix (synthetic fixtures, property tests)."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.size == 0:
        raise ValueError("no training instances")
    n, n_features = X.shape
    m = features_per_split if features_per_split is not None else math.isqrt(n_features - 1) + 1
    root_rng = np.random.default_rng(seed)
    tree_seeds = root_rng.integers(0, 2**31 - 1, size=n_trees)
    trees = []
    for tree_seed in tree_seeds:
        rng = np.random.default_rng(int(tree_seed))
        boot = rng.integers(0, n, size=n)
        tree = _Tree()
        _grow(tree, X[boot], y[boot], np.arange(n), 0, rng, max_depth, min_leaf, m)
        trees.append(tree)
    return ForestModel(
        schema=schema or tuple(f"f{i}" for i in range(n_features)),
        hyperparams={
            "n_trees": n_trees,
            "max_depth": max_depth,
            "min_leaf": min_leaf,
            "features_per_split": m,
        },
        seed=seed,
        trees=trees,
    )


def predict(model: ForestModel, features: FeatureVector | Sequence[float]) -> float:
    if isinstance(features, FeatureVector):
        features = encode_features(features)
    return model.predict_one(features)


def gini_importance(model: ForestModel) -> dict[str, float]:
    """Impurity decreases summed per feature, averaged over trees, and
    normalized to sum 1.  One-hot tense columns are folded back into the
    single predicate_tense feature.  A forest with no splits reports zeros."""
    k = len(model.schema)
    acc = np.zeros(k)
    for tree in model.trees:
        if not tree.value:
            continue
        root_n = tree.n_samples[0]
        contrib = np.zeros(k)
        for i, f in enumerate(tree.feature):
            if f < 0:
                continue
            li, ri = tree.left[i], tree.right[i]
            decrease = (
                tree.n_samples[i] * tree.impurity[i]
                - tree.n_samples[li] * tree.impurity[li]
                - tree.n_samples[ri] * tree.impurity[ri]
            )
            contrib[f] += decrease / root_n
        acc += contrib
    acc /= max(len(model.trees), 1)
    merged: dict[str, float] = {}
    for name, weight in zip(model.schema, acc):
        base = name.split("=")[0]
        merged[base] = merged.get(base, 0.0) + float(weight)
    total = sum(merged.values())
    if total > 0:
        merged = {name: w / total for name, w in merged.items()}
    return merged
