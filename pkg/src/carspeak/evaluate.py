"""Shuffled k-fold cross-validation and the evaluation metric suite.

Metrics follow the macro/micro conventions of the reported results:
f1_macro is the unweighted mean of per-class F1 scores (not the harmonic
mean of macro precision and macro recall), zero-denominator classes
contribute 0, and f1_micro equals pooled-count accuracy for single-label
predictions.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .classifiers import Params, default_params, train_model
from .corpus import Corpus
from .textproc import PosLexicon, content_words
from .vectorize import (
    DatasetMatrix,
    build_label_map,
    build_vocabulary,
    fit_idf,
    vectorize_doc,
)

FIT_TRAIN_ONLY = "train"
FIT_ALL = "all"


@dataclass(frozen=True)
class FoldPlan:
    """Disjoint covering row-index folds with sizes differing by at most 1."""

    folds: tuple[tuple[int, ...], ...]
    seed: int
    k: int


@dataclass(frozen=True)
class ConfusionCounts:
    """Per-class true positive / false positive / false negative counts."""

    tp: dict[Hashable, int]
    fp: dict[Hashable, int]
    fn: dict[Hashable, int]
    total: int


@dataclass(frozen=True)
class Metrics:
    precision_macro: float
    recall_macro: float
    f1_macro: float
    f1_micro: float


@dataclass(frozen=True)
class ClassifierSpec:
    kind: str
    params: Params | None = None


@dataclass(frozen=True)
class EvalReport:
    """Pooled and per-fold metrics for one classifier under one fit scope."""

    classifier: str
    pooled: Metrics
    per_fold: tuple[Metrics, ...]
    k: int
    seed: int
    fit_scope: str


def kfold_split(n: int, k: int, seed: int) -> FoldPlan:
    """Seeded permutation of 0..n-1 cut into k contiguous chunks.

    The first (n mod k) chunks take the extra element.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < k:
        raise ValueError(f"cannot split {n} rows into {k} folds")
    perm = np.random.default_rng(seed).permutation(n)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        folds.append(tuple(int(j) for j in perm[start : start + size]))
        start += size
    return FoldPlan(folds=tuple(folds), seed=seed, k=k)


def confusion_counts(
    golds: Sequence[Hashable], preds: Sequence[Hashable]
) -> ConfusionCounts:
    if len(golds) != len(preds):
        raise ValueError(f"length mismatch: {len(golds)} golds vs {len(preds)} preds")
    if not golds:
        raise ValueError("cannot count an empty prediction set")
    tp: Counter = Counter()
    fp: Counter = Counter()
    fn: Counter = Counter()
    for gold, pred in zip(golds, preds):
        if gold == pred:
            tp[gold] += 1
        else:
            fp[pred] += 1
            fn[gold] += 1
    return ConfusionCounts(tp=dict(tp), fp=dict(fp), fn=dict(fn), total=len(golds))


def compute_metrics(cc: ConfusionCounts, class_set) -> Metrics:
    """Macro precision/recall/F1 and micro F1 over the given class set.

    Per class: p = tp/(tp+fp), r = tp/(tp+fn), f1 = 2pr/(p+r), each 0 when its
    denominator is 0. Macro values are unweighted means over class_set;
    f1_micro is pooled tp over total, which is accuracy for single-label data.
    """
    if cc.total == 0:
        raise ValueError("cannot compute metrics over zero predictions")
    classes = sorted(class_set)
    if not classes:
        raise ValueError("class_set must be non-empty")
    precisions = []
    recalls = []
    f1s = []
    for c in classes:
        tp = cc.tp.get(c, 0)
        fp = cc.fp.get(c, 0)
        fn = cc.fn.get(c, 0)
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2.0 * p * r / (p + r) if p + r else 0.0
        precisions.append(p)
        recalls.append(r)
        f1s.append(f1)
    n = len(classes)
    return Metrics(
        precision_macro=sum(precisions) / n,
        recall_macro=sum(recalls) / n,
        f1_macro=sum(f1s) / n,
        f1_micro=sum(cc.tp.values()) / cc.total,
    )


def metrics_for(golds: Sequence[Hashable], preds: Sequence[Hashable]) -> Metrics:
    """Metrics over the classes present in gold or predictions."""
    cc = confusion_counts(golds, preds)
    return compute_metrics(cc, set(golds) | set(preds))


def cross_validate(
    c: Corpus,
    lex: PosLexicon,
    spec: ClassifierSpec,
    k: int = 4,
    seed: int = 7,
    fit_scope: str = FIT_TRAIN_ONLY,
) -> EvalReport:
    """Evaluate one classifier with shuffled k-fold cross-validation.

    Per fold the vocabulary and IDF are fit on the training partition
    (fit_scope="train", no feature leakage) or once on the whole corpus
    (fit_scope="all", replication mode). The label map always covers the full
    corpus so every class stays predictable. Held-out (gold, pred) pairs are
    pooled across folds for the headline metrics; per-fold metrics are also
    reported.
    """
    if fit_scope not in (FIT_TRAIN_ONLY, FIT_ALL):
        raise ValueError(f"fit_scope must be {FIT_TRAIN_ONLY!r} or {FIT_ALL!r}")
    params = spec.params if spec.params is not None else default_params(spec.kind, seed)
    docs = list(c)
    filtered = [content_words(doc.text, lex) for doc in docs]
    label_map = build_label_map(c)
    doc_labels = np.array([label_map.index[doc.key()] for doc in docs], dtype=np.int64)
    plan = kfold_split(len(docs), k, seed)

    if fit_scope == FIT_ALL:
        vocab_all = build_vocabulary(filtered)
        idf_all = fit_idf(filtered, vocab_all)
        vectors_all = [vectorize_doc(w, vocab_all, idf_all) for w in filtered]

    pooled_golds: list[int] = []
    pooled_preds: list[int] = []
    per_fold: list[Metrics] = []
    for fold_id, test_idx in enumerate(plan.folds):
        test_rows = sorted(test_idx)
        test_set = set(test_rows)
        train_rows = [i for i in range(len(docs)) if i not in test_set]
        if len(set(doc_labels[train_rows].tolist())) < 2:
            raise ValueError(
                f"fold {fold_id}: training partition has fewer than 2 classes"
            )
        if fit_scope == FIT_ALL:
            train_vecs = [vectors_all[i] for i in train_rows]
            test_vecs = [vectors_all[i] for i in test_rows]
            dim = len(vocab_all)
        else:
            train_words = [filtered[i] for i in train_rows]
            vocab = build_vocabulary(train_words)
            idf = fit_idf(train_words, vocab)
            train_vecs = [vectorize_doc(w, vocab, idf) for w in train_words]
            test_vecs = [vectorize_doc(filtered[i], vocab, idf) for i in test_rows]
            dim = len(vocab)
        data = DatasetMatrix(
            vectors=tuple(train_vecs),
            labels=doc_labels[train_rows],
            dim=dim,
            n_classes=len(label_map),
        )
        model = train_model(spec.kind, data, params)
        golds = [int(doc_labels[i]) for i in test_rows]
        preds = [model.predict(v) for v in test_vecs]
        pooled_golds.extend(golds)
        pooled_preds.extend(preds)
        per_fold.append(metrics_for(golds, preds))

    return EvalReport(
        classifier=spec.kind,
        pooled=metrics_for(pooled_golds, pooled_preds),
        per_fold=tuple(per_fold),
        k=k,
        seed=seed,
        fit_scope=fit_scope,
    )


def report_record(report: EvalReport) -> dict:
    """Flat serializable record for one classifier x scope, fixed key order."""
    return {
        "classifier": report.classifier,
        "precision_macro": report.pooled.precision_macro,
        "recall_macro": report.pooled.recall_macro,
        "f1_macro": report.pooled.f1_macro,
        "f1_micro": report.pooled.f1_micro,
        "k": report.k,
        "seed": report.seed,
        "fit_scope": report.fit_scope,
    }
