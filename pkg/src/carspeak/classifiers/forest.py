"""Random forest of Gini-impurity decision trees over sparse rows.

Each tree fits a bootstrap sample (size n, drawn with replacement). At every
node, ceil(sqrt(dim)) candidate features are sampled without replacement and
the split minimizing weighted Gini impurity is taken; ties resolve to the
lower feature index, then the lower threshold. Candidate thresholds are
midpoints between consecutive distinct observed values at the node, where
absent sparse entries read as 0.0.

Tree i draws from a generator seeded with seed + i, so sequential and
parallel training produce bit-identical forests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..vectorize import DatasetMatrix, SparseVector
from .base import ColumnStore, argmax_class


@dataclass(frozen=True)
class RfParams:
    n_trees: int = 100
    max_depth: int = 40
    min_split: int = 2
    seed: int = 7


@dataclass(eq=False)
class TreeNode:
    """Internal node (feature >= 0) or leaf (feature == -1, histogram set)."""

    feature: int = -1
    threshold: float = 0.0
    left: Optional["TreeNode"] = None
    right: Optional["TreeNode"] = None
    hist: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class ForestModel:
    trees: tuple[TreeNode, ...]
    n_classes: int
    dim: int

    def class_scores(self, x: SparseVector) -> np.ndarray:
        """Summed leaf-histogram mass across all trees."""
        dense = x.to_dense(self.dim) if self.dim else np.zeros(0)
        total = np.zeros(self.n_classes, dtype=np.float64)
        for tree in self.trees:
            node = tree
            while node.feature >= 0:
                value = dense[node.feature]
                node = node.left if value <= node.threshold else node.right
            total += node.hist
        return total

    def predict(self, x: SparseVector) -> int:
        return argmax_class(self.class_scores(x))


def _gini_best_threshold(
    values: np.ndarray, labels: np.ndarray, n_classes: int
) -> tuple[float, float] | None:
    """Best (weighted gini, threshold) for one feature at one node.

    Scans boundaries between consecutive distinct sorted values; argmin picks
    the first minimum, i.e. the lowest threshold among gini ties.
    """
    order = np.argsort(values, kind="stable")
    sorted_vals = values[order]
    if sorted_vals[0] == sorted_vals[-1]:
        return None
    sorted_labels = labels[order]
    n = len(values)
    one_hot = np.zeros((n, n_classes), dtype=np.float64)
    one_hot[np.arange(n), sorted_labels] = 1.0
    cum = np.cumsum(one_hot, axis=0)
    boundaries = np.nonzero(sorted_vals[:-1] < sorted_vals[1:])[0]
    left_counts = cum[boundaries]
    total = cum[-1]
    right_counts = total - left_counts
    n_left = boundaries + 1.0
    n_right = n - n_left
    gini_left = 1.0 - np.sum(left_counts**2, axis=1) / n_left**2
    gini_right = 1.0 - np.sum(right_counts**2, axis=1) / n_right**2
    weighted = (n_left * gini_left + n_right * gini_right) / n
    best = int(np.argmin(weighted))
    threshold = (sorted_vals[boundaries[best]] + sorted_vals[boundaries[best] + 1]) / 2.0
    return float(weighted[best]), float(threshold)


def _build_tree(
    columns: ColumnStore,
    labels: np.ndarray,
    rows: np.ndarray,
    depth: int,
    params: RfParams,
    n_classes: int,
    n_candidates: int,
    rng: np.random.Generator,
) -> TreeNode:
    y = labels[rows]
    hist = np.bincount(y, minlength=n_classes).astype(np.float64)
    if (
        depth >= params.max_depth
        or len(rows) < params.min_split
        or np.count_nonzero(hist) <= 1
    ):
        return TreeNode(hist=hist)

    candidates = np.sort(rng.choice(columns.dim, size=n_candidates, replace=False))
    best_gini = math.inf
    best_feature = -1
    best_threshold = 0.0
    for feature in candidates:
        values = columns.gather(int(feature), rows)
        found = _gini_best_threshold(values, y, n_classes)
        # Ascending candidate order plus strict improvement gives the
        # (lower feature, lower threshold) tie-break.
        if found is not None and found[0] < best_gini:
            best_gini, best_threshold = found
            best_feature = int(feature)
    if best_feature < 0:
        return TreeNode(hist=hist)

    values = columns.gather(best_feature, rows)
    go_left = values <= best_threshold
    if go_left.all() or not go_left.any():
        # Midpoint rounded onto an observed value; no usable separation.
        return TreeNode(hist=hist)
    left = _build_tree(
        columns, labels, rows[go_left], depth + 1, params, n_classes, n_candidates, rng
    )
    right = _build_tree(
        columns, labels, rows[~go_left], depth + 1, params, n_classes, n_candidates, rng
    )
    return TreeNode(feature=best_feature, threshold=best_threshold, left=left, right=right)


def rf_train(data: DatasetMatrix, params: RfParams = RfParams()) -> ForestModel:
    if data.n_rows == 0:
        raise ValueError("cannot train a random forest on an empty dataset")
    if params.n_trees < 1:
        raise ValueError("n_trees must be >= 1")
    columns = ColumnStore(data.vectors, data.dim)
    labels = np.asarray(data.labels, dtype=np.int64)
    n = data.n_rows
    n_candidates = min(data.dim, math.ceil(math.sqrt(data.dim)))
    trees = []
    for i in range(params.n_trees):
        rng = np.random.default_rng(params.seed + i)
        rows = np.sort(rng.integers(0, n, size=n))
        trees.append(
            _build_tree(columns, labels, rows, 0, params, data.n_classes, n_candidates, rng)
        )
    return ForestModel(trees=tuple(trees), n_classes=data.n_classes, dim=data.dim)
