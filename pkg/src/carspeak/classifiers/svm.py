"""One-vs-rest linear SVMs trained with the Pegasos subgradient schedule.

Each class gets a binary problem with targets +1 (the class) and -1 (the
rest). The per-class objective is (lambda/2)*||w||^2 plus mean hinge loss
max(0, 1 - y*(w.x + b)). Updates use step size 1/(lambda * t) at the t-th
update, walking a fresh seeded permutation of the rows each epoch. All
classes share the permutation, which lets the update touch every one-vs-rest
problem at once.

The bias shares the (1 - 1/t) regularization shrink with the weights (the
augmented-feature formulation). A bias left out of the shrink keeps its full
first-update contribution of magnitude 1/lambda forever, which pins every
prediction to the first sampled row's class; folding it in costs only a
(lambda/2) * b^2 term against the stated objective, negligible at the default
lambda.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..vectorize import DatasetMatrix, SparseVector
from .base import argmax_class


@dataclass(frozen=True)
class SvmParams:
    lam: float = 1e-4
    epochs: int = 20
    seed: int = 7


@dataclass
class SvmTrainTrace:
    """Averaged iterates over the first and last epoch, for progress checks."""

    first_epoch_avg: tuple[np.ndarray, np.ndarray] | None = None
    last_epoch_avg: tuple[np.ndarray, np.ndarray] | None = None


@dataclass(frozen=True, eq=False)
class SvmModel:
    weights: np.ndarray  # (n_classes, dim)
    biases: np.ndarray  # (n_classes,)
    n_classes: int = field(init=False)
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_classes", self.weights.shape[0])
        object.__setattr__(self, "dim", self.weights.shape[1])

    def class_scores(self, x: SparseVector) -> np.ndarray:
        """Decision values w_c . x + b_c per class."""
        if x.nnz == 0:
            return self.biases.copy()
        return self.weights[:, x.indices] @ x.values + self.biases

    def predict(self, x: SparseVector) -> int:
        return argmax_class(self.class_scores(x))


def svm_train(
    data: DatasetMatrix,
    params: SvmParams = SvmParams(),
    trace: SvmTrainTrace | None = None,
) -> SvmModel:
    if data.n_rows == 0:
        raise ValueError("cannot train an SVM on an empty dataset")
    if data.n_classes < 2:
        raise ValueError("one-vs-rest needs at least 2 classes")
    if params.lam <= 0:
        raise ValueError("lambda must be > 0")
    if params.epochs < 1:
        raise ValueError("epochs must be >= 1")

    n = data.n_rows
    labels = np.asarray(data.labels, dtype=np.int64)
    # targets[c, i] = +1 where row i belongs to class c, else -1
    targets = np.full((data.n_classes, n), -1.0)
    targets[labels, np.arange(n)] = 1.0

    weights = np.zeros((data.n_classes, data.dim), dtype=np.float64)
    biases = np.zeros(data.n_classes, dtype=np.float64)
    rng = np.random.default_rng(params.seed)
    t = 0
    for epoch in range(params.epochs):
        averaging = trace is not None and (epoch == 0 or epoch == params.epochs - 1)
        if averaging:
            w_sum = np.zeros_like(weights)
            b_sum = np.zeros_like(biases)
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (params.lam * t)
            x = data.vectors[i]
            scores = (
                weights[:, x.indices] @ x.values + biases if x.nnz else biases.copy()
            )
            violating = targets[:, i] * scores < 1.0
            shrink = 1.0 - 1.0 / t  # = 1 - eta*lam
            weights *= shrink
            biases *= shrink
            if violating.any():
                y_viol = eta * targets[violating, i]
                if x.nnz:
                    weights[np.ix_(violating, x.indices)] += (
                        y_viol[:, None] * x.values[None, :]
                    )
                biases[violating] += y_viol
            if averaging:
                w_sum += weights
                b_sum += biases
        if averaging:
            snapshot = (w_sum / n, b_sum / n)
            if epoch == 0:
                trace.first_epoch_avg = snapshot
            if epoch == params.epochs - 1:
                trace.last_epoch_avg = snapshot
    return SvmModel(weights=weights, biases=biases)


def svm_objective(
    w: np.ndarray,
    b: float,
    vectors,
    targets: np.ndarray,
    lam: float,
) -> float:
    """Per-class Pegasos objective: (lam/2)||w||^2 + mean hinge loss."""
    scores = np.array(
        [float(w[x.indices] @ x.values) + b if x.nnz else b for x in vectors]
    )
    hinge = np.maximum(0.0, 1.0 - targets * scores)
    return 0.5 * lam * float(w @ w) + float(hinge.mean())


def class_targets(labels: np.ndarray, class_id: int) -> np.ndarray:
    """±1 targets for one one-vs-rest problem."""
    return np.where(np.asarray(labels) == class_id, 1.0, -1.0)
