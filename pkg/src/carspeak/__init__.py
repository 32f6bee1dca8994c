"""carspeak: translate abstract car descriptions into concrete car models.

Pipeline: review corpus -> noun/adjective filtering -> TF-IDF vectors ->
multi-class classification (KNN, random forest, one-vs-rest linear SVM,
MLP) -> shuffled k-fold evaluation, with a CLI and a query service on top.
"""

from .corpus import (
    Corpus,
    CorpusError,
    CorpusStats,
    ReviewDoc,
    corpus_stats,
    filter_year_range,
    ingest_corpus,
    serialize_corpus,
)
from .evaluate import ClassifierSpec, EvalReport, cross_validate
from .model_store import ModelBundle, load_bundle, save_bundle
from .query import QueryResult, answer_query
from .textproc import PosLexicon, default_lexicon, tokenize, top_k_frequencies
from .vectorize import build_dataset, vectorize_doc

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "CorpusError",
    "CorpusStats",
    "ReviewDoc",
    "ingest_corpus",
    "serialize_corpus",
    "filter_year_range",
    "corpus_stats",
    "PosLexicon",
    "default_lexicon",
    "tokenize",
    "top_k_frequencies",
    "build_dataset",
    "vectorize_doc",
    "ClassifierSpec",
    "EvalReport",
    "cross_validate",
    "ModelBundle",
    "save_bundle",
    "load_bundle",
    "QueryResult",
    "answer_query",
    "__version__",
]
