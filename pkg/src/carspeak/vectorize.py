"""TF-IDF review vectors, vocabulary, and year-collapsed class labels.

Weighting: raw in-document term count times smoothed inverse document
frequency ln((1 + N) / (1 + df)) + 1, then L2 normalization of the whole
vector. The smoothing keeps every weight finite and positive, so a term
present in every document still carries idf 1 rather than vanishing.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus
from .textproc import PosLexicon, content_words


@dataclass(frozen=True)
class Vocabulary:
    """Lexicographically sorted term list with its inverse index."""

    terms: tuple[str, ...]
    index: dict[str, int] = field(repr=False)

    @classmethod
    def from_terms(cls, terms) -> "Vocabulary":
        ordered = tuple(sorted(set(terms)))
        return cls(terms=ordered, index={t: i for i, t in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class IdfTable:
    """Smoothed inverse document frequencies and the fitting corpus size."""

    idf: dict[str, float]
    n_docs: int


@dataclass(frozen=True)
class SparseVector:
    """L2-normalized sparse document vector.

    Entries are (term index, weight) pairs stored as parallel arrays sorted by
    ascending index with no duplicates; weights are finite and non-zero. The
    empty vector (no in-vocabulary terms) is legal.
    """

    indices: np.ndarray
    values: np.ndarray

    @property
    def nnz(self) -> int:
        return len(self.indices)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))

    def dot(self, other: "SparseVector") -> float:
        """Sparse dot product via index intersection."""
        _, ia, ib = np.intersect1d(
            self.indices, other.indices, assume_unique=True, return_indices=True
        )
        return float(np.dot(self.values[ia], other.values[ib]))

    def to_dense(self, dim: int) -> np.ndarray:
        dense = np.zeros(dim, dtype=np.float64)
        dense[self.indices] = self.values
        return dense

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return np.array_equal(self.indices, other.indices) and np.array_equal(
            self.values, other.values
        )


def empty_vector() -> SparseVector:
    return SparseVector(
        indices=np.empty(0, dtype=np.int64), values=np.empty(0, dtype=np.float64)
    )


@dataclass(frozen=True)
class LabelMap:
    """Year-collapsed car classes: sorted "make|model" keys with contiguous ids."""

    labels: tuple[str, ...]
    index: dict[str, int] = field(repr=False)

    @classmethod
    def from_keys(cls, keys) -> "LabelMap":
        ordered = tuple(sorted(set(keys)))
        return cls(labels=ordered, index={k: i for i, k in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class DatasetMatrix:
    """Per-review rows: sparse TF-IDF vectors with class ids."""

    vectors: tuple[SparseVector, ...]
    labels: np.ndarray
    dim: int
    n_classes: int

    @property
    def n_rows(self) -> int:
        return len(self.vectors)

    def rows(self):
        return zip(self.vectors, self.labels)


def build_vocabulary(filtered_docs: list[list[str]]) -> Vocabulary:
    """Sorted set union of all content words across documents."""
    seen: set[str] = set()
    for words in filtered_docs:
        seen.update(words)
    return Vocabulary.from_terms(seen)


def fit_idf(filtered_docs: list[list[str]], vocab: Vocabulary) -> IdfTable:
    """idf(t) = ln((1 + N) / (1 + df(t))) + 1 over the fitting documents.

    Every fitting-document word must be in the vocabulary; this is a fit-time
    contract, unlike query-time vectorization which skips unknown words.
    """
    n_docs = len(filtered_docs)
    df: Counter[str] = Counter()
    for words in filtered_docs:
        for word in set(words):
            if word not in vocab.index:
                raise ValueError(f"out-of-vocabulary word {word!r} in fitting documents")
            df[word] += 1
    idf = {
        t: math.log((1.0 + n_docs) / (1.0 + df.get(t, 0))) + 1.0 for t in vocab.terms
    }
    return IdfTable(idf=idf, n_docs=n_docs)


def vectorize_doc(words: list[str], vocab: Vocabulary, idf: IdfTable) -> SparseVector:
    """Count, weight by idf, and L2-normalize one document's content words.

    Out-of-vocabulary words are skipped (query-time behavior); a document with
    no in-vocabulary words yields the empty vector.
    """
    counts = Counter(w for w in words if w in vocab.index)
    if not counts:
        return empty_vector()
    indices = np.fromiter(
        (vocab.index[w] for w in counts), dtype=np.int64, count=len(counts)
    )
    weights = np.fromiter(
        (count * idf.idf[w] for w, count in counts.items()),
        dtype=np.float64,
        count=len(counts),
    )
    order = np.argsort(indices)
    indices = indices[order]
    weights = weights[order]
    weights /= np.sqrt(np.dot(weights, weights))
    return SparseVector(indices=indices, values=weights)


def build_label_map(c: Corpus) -> LabelMap:
    """One class per distinct normalized "make|model"; the year is ignored."""
    return LabelMap.from_keys(doc.key() for doc in c)


def build_dataset(
    c: Corpus, lex: PosLexicon
) -> tuple[DatasetMatrix, Vocabulary, IdfTable, LabelMap]:
    """Run the full fitting pipeline over a corpus: one row per review.

    Reviews with zero content words become empty vectors but are retained so
    dataset rows stay aligned with corpus order.
    """
    if len(c) == 0:
        raise ValueError("cannot build a dataset from an empty corpus")
    filtered = [content_words(doc.text, lex) for doc in c]
    vocab = build_vocabulary(filtered)
    idf = fit_idf(filtered, vocab)
    label_map = build_label_map(c)
    vectors = tuple(vectorize_doc(words, vocab, idf) for words in filtered)
    labels = np.array([label_map.index[doc.key()] for doc in c], dtype=np.int64)
    matrix = DatasetMatrix(
        vectors=vectors, labels=labels, dim=len(vocab), n_classes=len(label_map)
    )
    return matrix, vocab, idf, label_map
