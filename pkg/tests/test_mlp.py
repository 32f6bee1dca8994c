import numpy as np
import pytest

from carspeak.classifiers import (
    MlpParams,
    init_mlp,
    loss_and_gradients,
    mean_loss,
    mlp_gradient_check,
    mlp_train,
)
from carspeak.vectorize import DatasetMatrix, SparseVector

from conftest import random_dataset, random_sparse_query


def sv(pairs) -> SparseVector:
    indices = np.array([i for i, _ in pairs], dtype=np.int64)
    values = np.array([v for _, v in pairs], dtype=np.float64)
    return SparseVector(indices=indices, values=values)


def two_class_toy() -> DatasetMatrix:
    rng = np.random.default_rng(0)
    vectors = []
    labels = []
    for i in range(16):
        c = i % 2
        base = 0.9 if c == 0 else 0.1
        raw = np.array([base, 1.0 - base]) + rng.uniform(-0.05, 0.05, 2)
        raw /= np.sqrt(raw @ raw)
        vectors.append(sv([(0, raw[0]), (1, raw[1])]))
        labels.append(c)
    return DatasetMatrix(
        vectors=tuple(vectors), labels=np.array(labels, dtype=np.int64), dim=2, n_classes=2
    )


class TestMlpTrain:
    def test_loss_decreases_after_one_epoch(self):
        data = two_class_toy()
        before = mean_loss(mlp_train(data, MlpParams(hidden=8, epochs=0, seed=1)), data)
        after = mean_loss(mlp_train(data, MlpParams(hidden=8, epochs=1, seed=1)), data)
        assert after < before

    def test_same_seed_identical(self, small_dataset):
        p = MlpParams(hidden=12, epochs=2, seed=5)
        m1 = mlp_train(small_dataset, p)
        m2 = mlp_train(small_dataset, p)
        for name in ("w1", "b1", "w2", "b2"):
            assert np.array_equal(getattr(m1, name), getattr(m2, name))

    def test_zero_epochs_returns_initialized_model(self, small_dataset):
        trained = mlp_train(small_dataset, MlpParams(hidden=7, epochs=0, seed=3))
        fresh = init_mlp(small_dataset.dim, 7, small_dataset.n_classes, seed=3)
        for name in ("w1", "b1", "w2", "b2"):
            assert np.array_equal(getattr(trained, name), getattr(fresh, name))

    @pytest.mark.parametrize(
        "params",
        [
            MlpParams(hidden=0),
            MlpParams(batch=0),
            MlpParams(lr=0.0),
            MlpParams(lr=-1.0),
            MlpParams(epochs=-1),
        ],
    )
    def test_invalid_hyperparameters(self, small_dataset, params):
        with pytest.raises(ValueError):
            mlp_train(small_dataset, params)

    def test_glorot_bounds(self):
        m = init_mlp(dim=30, hidden=10, n_classes=4, seed=0)
        bound1 = np.sqrt(6 / (30 + 10))
        bound2 = np.sqrt(6 / (10 + 4))
        assert np.all(np.abs(m.w1) <= bound1)
        assert np.all(np.abs(m.w2) <= bound2)
        assert np.all(m.b1 == 0) and np.all(m.b2 == 0)


class TestGradientCheck:
    def test_backprop_matches_finite_differences(self):
        rng = np.random.default_rng(7)
        data = random_dataset(rng, 10, 6, 3)
        model = mlp_train(data, MlpParams(hidden=5, epochs=2, seed=7))
        x = random_sparse_query(rng, 6, allow_empty=False)
        err = mlp_gradient_check(model, x, y=1)
        assert err <= 1e-4

    def test_sign_flipped_gradient_detected(self):
        rng = np.random.default_rng(8)
        data = random_dataset(rng, 10, 6, 3)
        model = mlp_train(data, MlpParams(hidden=5, epochs=2, seed=8))
        x = random_sparse_query(rng, 6, allow_empty=False)

        def flipped(m, xx, yy):
            loss, grads = loss_and_gradients(m, xx, yy)
            return loss, {k: -v for k, v in grads.items()}

        err = mlp_gradient_check(model, x, y=2, grad_fn=flipped)
        assert err > 1e-1

    def test_eps_zero_rejected(self):
        model = init_mlp(4, 3, 2, seed=0)
        with pytest.raises(ValueError):
            mlp_gradient_check(model, sv([(0, 1.0)]), y=0, eps=0.0)

    def test_small_model_checks_all_parameters(self):
        model = init_mlp(2, 2, 2, seed=1)
        err = mlp_gradient_check(model, sv([(0, 0.6), (1, 0.8)]), y=0, n_samples=1000)
        assert err <= 1e-4


class TestMlpPredict:
    def test_scores_are_probabilities(self, small_dataset):
        model = mlp_train(small_dataset, MlpParams(hidden=10, epochs=1, seed=2))
        rng = np.random.default_rng(3)
        for _ in range(10):
            x = random_sparse_query(rng, small_dataset.dim)
            scores = model.class_scores(x)
            assert np.all(scores >= 0)
            assert float(scores.sum()) == pytest.approx(1.0, abs=1e-9)
