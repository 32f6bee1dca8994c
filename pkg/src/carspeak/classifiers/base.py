"""Shared classifier machinery: rankings and columnar sparse access.

Every model exposes class_scores(x) -> float array over all classes, and
predict(x) is the argmax of those scores. numpy's argmax/stable argsort pick
the first maximum, so equal scores always resolve to the smaller class id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

import numpy as np

from ..vectorize import SparseVector


@dataclass(frozen=True)
class Ranking:
    """Classes ordered by non-increasing score; ids distinct."""

    entries: tuple[tuple[int, float], ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def head(self) -> int:
        return self.entries[0][0]


class Model(Protocol):
    n_classes: int

    def class_scores(self, x: SparseVector) -> np.ndarray: ...

    def predict(self, x: SparseVector) -> int: ...


def argmax_class(scores: np.ndarray) -> int:
    return int(np.argmax(scores))


def rank_scores(scores: np.ndarray, n: int) -> Ranking:
    """Top-n class ids by score, ties resolved to the smaller id."""
    if n < 1:
        raise ValueError("n must be >= 1")
    order = np.argsort(-scores, kind="stable")[: min(n, len(scores))]
    return Ranking(entries=tuple((int(c), float(scores[c])) for c in order))


def predict_topn(model: Model, x: SparseVector, n: int) -> Ranking:
    """Rank classes by the model's native scores.

    The head of the ranking always equals model.predict(x): both derive from
    the same score vector and the same smaller-id tie-break.
    """
    return rank_scores(model.class_scores(x), n)


class ColumnStore:
    """Per-feature view of a set of sparse rows for implicit-zero reads.

    For each feature: the sorted row ids holding it and their values. Lets
    tree builders and similarity scans touch only observed entries instead of
    materializing a dense matrix.
    """

    def __init__(self, vectors: tuple[SparseVector, ...] | list[SparseVector], dim: int):
        self.dim = dim
        self.n_rows = len(vectors)
        cols_rows: dict[int, list[int]] = {}
        cols_vals: dict[int, list[float]] = {}
        for row_id, vec in enumerate(vectors):
            for idx, val in zip(vec.indices.tolist(), vec.values.tolist()):
                cols_rows.setdefault(idx, []).append(row_id)
                cols_vals.setdefault(idx, []).append(val)
        self.col_rows: dict[int, np.ndarray] = {
            f: np.asarray(r, dtype=np.int64) for f, r in cols_rows.items()
        }
        self.col_vals: dict[int, np.ndarray] = {
            f: np.asarray(v, dtype=np.float64) for f, v in cols_vals.items()
        }

    def gather(self, feature: int, rows: np.ndarray) -> np.ndarray:
        """Values of one feature for the given row ids (0.0 where absent).

        Row ids may repeat (bootstrap samples); lookups are elementwise.
        """
        out = np.zeros(len(rows), dtype=np.float64)
        col_rows = self.col_rows.get(feature)
        if col_rows is None:
            return out
        pos = np.searchsorted(col_rows, rows)
        ok = pos < len(col_rows)
        ok[ok] = col_rows[pos[ok]] == rows[ok]
        out[ok] = self.col_vals[feature][pos[ok]]
        return out

    def similarities(self, x: SparseVector) -> np.ndarray:
        """Dot product of x against every stored row (cosine for unit vectors)."""
        sims = np.zeros(self.n_rows, dtype=np.float64)
        for idx, val in zip(x.indices.tolist(), x.values.tolist()):
            col_rows = self.col_rows.get(idx)
            if col_rows is not None:
                sims[col_rows] += val * self.col_vals[idx]
        return sims
