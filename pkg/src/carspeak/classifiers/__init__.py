"""Four from-scratch multi-class classifiers over sparse TF-IDF rows.

All models share one contract: class_scores(x) returns a score per class,
predict(x) is the argmax (smaller class id on ties), and predict_topn ranks
classes by the same scores, so the head of a ranking always matches predict.
"""

from .base import Model, Ranking, predict_topn, rank_scores
from .forest import ForestModel, RfParams, rf_train
from .knn import KnnModel, KnnParams, knn_train
from .mlp import (
    MlpModel,
    MlpParams,
    init_mlp,
    loss_and_gradients,
    mean_loss,
    mlp_gradient_check,
    mlp_train,
)
from .svm import SvmModel, SvmParams, SvmTrainTrace, class_targets, svm_objective, svm_train

KINDS = ("knn", "rf", "svm", "mlp")

Params = KnnParams | RfParams | SvmParams | MlpParams


def default_params(kind: str, seed: int = 7) -> Params:
    """Conventional defaults for each classifier kind, seeded where training
    is stochastic."""
    if kind == "knn":
        return KnnParams()
    if kind == "rf":
        return RfParams(seed=seed)
    if kind == "svm":
        return SvmParams(seed=seed)
    if kind == "mlp":
        return MlpParams(seed=seed)
    raise ValueError(f"unknown classifier kind {kind!r}")


def train_model(kind: str, data, params: Params | None = None) -> Model:
    """Train one classifier kind on a dataset with its (default) parameters."""
    if params is None:
        params = default_params(kind)
    if kind == "knn":
        return knn_train(data, params.k)
    if kind == "rf":
        return rf_train(data, params)
    if kind == "svm":
        return svm_train(data, params)
    if kind == "mlp":
        return mlp_train(data, params)
    raise ValueError(f"unknown classifier kind {kind!r}")


__all__ = [
    "Model",
    "Ranking",
    "predict_topn",
    "rank_scores",
    "KnnModel",
    "KnnParams",
    "knn_train",
    "default_params",
    "train_model",
    "ForestModel",
    "RfParams",
    "rf_train",
    "rf_predict",
    "SvmModel",
    "SvmParams",
    "SvmTrainTrace",
    "svm_train",
    "svm_objective",
    "class_targets",
    "MlpModel",
    "MlpParams",
    "mlp_train",
    "mlp_gradient_check",
    "mean_loss",
    "loss_and_gradients",
    "init_mlp",
    "KINDS",
]
