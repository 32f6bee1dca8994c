"""Single-hidden-layer perceptron: ReLU, softmax output, cross-entropy loss.

Weights initialize uniformly in +/- sqrt(6 / (fan_in + fan_out)) from a seeded
generator with zero biases; training is deterministic mini-batch gradient
descent over seeded per-epoch shuffles. Each update applies the summed
per-example cross-entropy gradients of the batch, so the effective step per
example is lr no matter the batch size. A finite-difference gradient check
validates the backpropagation against central differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..vectorize import DatasetMatrix, SparseVector
from .base import argmax_class


@dataclass(frozen=True)
class MlpParams:
    hidden: int = 100
    epochs: int = 50
    batch: int = 32
    lr: float = 0.01
    seed: int = 7


@dataclass(eq=False)
class MlpModel:
    w1: np.ndarray  # (dim, hidden)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden, n_classes)
    b2: np.ndarray  # (n_classes,)

    @property
    def dim(self) -> int:
        return self.w1.shape[0]

    @property
    def hidden(self) -> int:
        return self.w1.shape[1]

    @property
    def n_classes(self) -> int:
        return self.w2.shape[1]

    def class_scores(self, x: SparseVector) -> np.ndarray:
        """Softmax class probabilities."""
        z1 = x.values @ self.w1[x.indices] + self.b1 if x.nnz else self.b1.copy()
        h = np.maximum(z1, 0.0)
        z2 = h @ self.w2 + self.b2
        return _softmax(z2)

    def predict(self, x: SparseVector) -> int:
        return argmax_class(self.class_scores(x))


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - np.max(z, axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / np.sum(e, axis=-1, keepdims=True)


def _glorot(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    bound = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=(fan_in, fan_out))


def _init_from(rng: np.random.Generator, dim: int, hidden: int, n_classes: int) -> MlpModel:
    return MlpModel(
        w1=_glorot(rng, dim, hidden),
        b1=np.zeros(hidden),
        w2=_glorot(rng, hidden, n_classes),
        b2=np.zeros(n_classes),
    )


def init_mlp(dim: int, hidden: int, n_classes: int, seed: int) -> MlpModel:
    return _init_from(np.random.default_rng(seed), dim, hidden, n_classes)


def _dense_batch(vectors, rows: np.ndarray, dim: int) -> np.ndarray:
    batch = np.zeros((len(rows), dim), dtype=np.float64)
    for out_row, i in enumerate(rows):
        vec = vectors[i]
        batch[out_row, vec.indices] = vec.values
    return batch


def mlp_train(data: DatasetMatrix, params: MlpParams = MlpParams()) -> MlpModel:
    """Mini-batch gradient descent on the cross-entropy loss; epochs=0 returns
    the freshly initialized model unchanged."""
    if data.n_rows == 0:
        raise ValueError("cannot train an MLP on an empty dataset")
    if params.hidden < 1:
        raise ValueError("hidden must be >= 1")
    if params.batch < 1:
        raise ValueError("batch must be >= 1")
    if params.lr <= 0:
        raise ValueError("lr must be > 0")
    if params.epochs < 0:
        raise ValueError("epochs must be >= 0")

    # One seeded stream drives both initialization and the epoch shuffles,
    # so epochs=0 returns exactly init_mlp(seed).
    rng = np.random.default_rng(params.seed)
    model = _init_from(rng, data.dim, params.hidden, data.n_classes)
    labels = np.asarray(data.labels, dtype=np.int64)
    n = data.n_rows
    for _ in range(params.epochs):
        perm = rng.permutation(n)
        for start in range(0, n, params.batch):
            rows = perm[start : start + params.batch]
            xb = _dense_batch(data.vectors, rows, data.dim)
            yb = labels[rows]
            b = len(rows)

            z1 = xb @ model.w1 + model.b1
            h = np.maximum(z1, 0.0)
            z2 = h @ model.w2 + model.b2
            probs = _softmax(z2)

            dz2 = probs
            dz2[np.arange(b), yb] -= 1.0
            dw2 = h.T @ dz2
            db2 = dz2.sum(axis=0)
            dh = dz2 @ model.w2.T
            dz1 = dh * (z1 > 0.0)
            dw1 = xb.T @ dz1
            db1 = dz1.sum(axis=0)

            model.w1 -= params.lr * dw1
            model.b1 -= params.lr * db1
            model.w2 -= params.lr * dw2
            model.b2 -= params.lr * db2
    return model


def cross_entropy_loss(model: MlpModel, x: SparseVector, y: int) -> float:
    """-log softmax(z2)[y] for a single example."""
    probs = model.class_scores(x)
    return -math.log(max(probs[y], 1e-300))


def mean_loss(model: MlpModel, data: DatasetMatrix) -> float:
    total = sum(
        cross_entropy_loss(model, vec, int(label)) for vec, label in data.rows()
    )
    return total / data.n_rows


def loss_and_gradients(
    model: MlpModel, x: SparseVector, y: int
) -> tuple[float, dict[str, np.ndarray]]:
    """Single-example cross-entropy loss and its analytic parameter gradients."""
    dense = x.to_dense(model.dim)
    z1 = dense @ model.w1 + model.b1
    h = np.maximum(z1, 0.0)
    z2 = h @ model.w2 + model.b2
    probs = _softmax(z2)
    loss = -math.log(max(probs[y], 1e-300))

    dz2 = probs.copy()
    dz2[y] -= 1.0
    dw2 = np.outer(h, dz2)
    db2 = dz2
    dh = model.w2 @ dz2
    dz1 = dh * (z1 > 0.0)
    dw1 = np.outer(dense, dz1)
    db1 = dz1
    return loss, {"w1": dw1, "b1": db1, "w2": dw2, "b2": db2}


PARAM_NAMES = ("w1", "b1", "w2", "b2")


def mlp_gradient_check(
    model: MlpModel,
    x: SparseVector,
    y: int,
    eps: float = 1e-5,
    n_samples: int = 50,
    sample_seed: int = 0,
    grad_fn: Callable[[MlpModel, SparseVector, int], tuple[float, dict]] | None = None,
) -> float:
    """Max relative error between analytic and central-difference gradients.

    Samples n_samples parameter coordinates (all of them when the model is
    smaller) and compares grad_fn's analytic gradient against
    (loss(p + eps) - loss(p - eps)) / (2 eps), scoring each coordinate as
    |g_a - g_n| / max(|g_a| + |g_n|, 1e-8).
    """
    if eps <= 0:
        raise ValueError("eps must be > 0")
    if grad_fn is None:
        grad_fn = loss_and_gradients
    _, grads = grad_fn(model, x, y)

    arrays = [getattr(model, name) for name in PARAM_NAMES]
    sizes = [a.size for a in arrays]
    total = sum(sizes)
    rng = np.random.default_rng(sample_seed)
    if n_samples >= total:
        picks = np.arange(total)
    else:
        picks = rng.choice(total, size=n_samples, replace=False)

    offsets = np.cumsum([0] + sizes)
    worst = 0.0
    for flat in picks:
        part = int(np.searchsorted(offsets, flat, side="right")) - 1
        local = int(flat - offsets[part])
        array = arrays[part]
        flat_view = array.reshape(-1)
        original = flat_view[local]

        flat_view[local] = original + eps
        loss_plus = cross_entropy_loss(model, x, y)
        flat_view[local] = original - eps
        loss_minus = cross_entropy_loss(model, x, y)
        flat_view[local] = original

        numeric = (loss_plus - loss_minus) / (2.0 * eps)
        analytic = grads[PARAM_NAMES[part]].reshape(-1)[local]
        rel = abs(analytic - numeric) / max(abs(analytic) + abs(numeric), 1e-8)
        worst = max(worst, rel)
    return worst
