"""K nearest neighbors over cosine similarity of TF-IDF vectors.

A lazy learner: training stores the rows verbatim. Since all vectors are
L2-normalized, cosine similarity is the plain dot product.

Prediction is a majority vote among the k most similar rows, with vote ties
broken by larger summed similarity and then by smaller class id. Class scores
encode that exact order as votes + summed_similarity / (k + 1): the fraction
can never exceed 1, so a vote advantage always dominates and rankings stay
consistent with predict() while remaining non-increasing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..vectorize import DatasetMatrix, SparseVector
from .base import ColumnStore, argmax_class


@dataclass(frozen=True)
class KnnParams:
    k: int = 5


@dataclass(frozen=True, eq=False)
class KnnModel:
    vectors: tuple[SparseVector, ...]
    labels: np.ndarray
    k: int
    n_classes: int
    dim: int
    _columns: ColumnStore = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_columns", ColumnStore(self.vectors, self.dim))

    def class_scores(self, x: SparseVector) -> np.ndarray:
        sims = self._columns.similarities(x)
        # Stable sort: equal similarities resolve to earlier training rows.
        neighbors = np.argsort(-sims, kind="stable")[: self.k]
        votes = np.zeros(self.n_classes, dtype=np.float64)
        summed = np.zeros(self.n_classes, dtype=np.float64)
        for row in neighbors:
            label = int(self.labels[row])
            votes[label] += 1.0
            summed[label] += sims[row]
        return votes + summed / (self.k + 1)

    def predict(self, x: SparseVector) -> int:
        return argmax_class(self.class_scores(x))


def knn_train(data: DatasetMatrix, k: int = 5) -> KnnModel:
    """Store the training rows for lazy nearest-neighbor lookup."""
    if data.n_rows == 0:
        raise ValueError("cannot train KNN on an empty dataset")
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > data.n_rows:
        raise ValueError(f"k={k} exceeds the {data.n_rows} training rows")
    return KnnModel(
        vectors=tuple(data.vectors),
        labels=np.array(data.labels, dtype=np.int64),
        k=k,
        n_classes=data.n_classes,
        dim=data.dim,
    )
