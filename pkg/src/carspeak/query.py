"""Answer car-speak queries against a loaded model bundle.

The query pipeline mirrors training exactly: tokenize, tag, keep content
words, vectorize against the bundle's vocabulary and IDF table, then rank
classes with the bundle's classifier. Words that survive filtering but are
absent from the vocabulary are reported as unknown_terms so a caller can tell
the buyer what the dealer did not understand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .classifiers import predict_topn
from .model_store import ModelBundle
from .textproc import PosLexicon, content_words, parse_lexicon
from .vectorize import vectorize_doc


@dataclass(frozen=True)
class QueryHit:
    make: str
    model: str
    score: float
    matched_terms: tuple[str, ...]


@dataclass(frozen=True)
class QueryResult:
    results: tuple[QueryHit, ...]
    unknown_terms: tuple[str, ...]
    classifier: str


def bundle_lexicon(bundle: ModelBundle) -> PosLexicon:
    """The tagging lexicon the bundle was trained with, embedded at save time."""
    return parse_lexicon(bundle.metadata.get("lexicon", "").splitlines())


def answer_query(bundle: ModelBundle, text: str, top_n: int = 5) -> QueryResult:
    """Rank car models for a natural-language query.

    matched_terms are the query's in-vocabulary content words (the terms the
    model recognized), deduplicated in first-occurrence order; scores are the
    classifier's native ranking scores, not calibrated probabilities. A query
    with no recognizable words still returns a (degenerate) ranking.
    """
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    lex = bundle_lexicon(bundle)
    words = content_words(text, lex)
    matched: list[str] = []
    unknown: list[str] = []
    for word in words:
        bucket = matched if word in bundle.vocabulary.index else unknown
        if word not in bucket:
            bucket.append(word)
    x = vectorize_doc(words, bundle.vocabulary, bundle.idf)
    ranking = predict_topn(bundle.model, x, top_n)
    hits = []
    for class_id, score in ranking:
        make, model = bundle.label_map.labels[class_id].split("|", 1)
        hits.append(
            QueryHit(make=make, model=model, score=score, matched_terms=tuple(matched))
        )
    return QueryResult(
        results=tuple(hits), unknown_terms=tuple(unknown), classifier=bundle.kind
    )


def query_result_to_dict(qr: QueryResult) -> dict:
    return {
        "results": [
            {
                "make": hit.make,
                "model": hit.model,
                "score": hit.score,
                "matched_terms": list(hit.matched_terms),
            }
            for hit in qr.results
        ],
        "unknown_terms": list(qr.unknown_terms),
        "classifier": qr.classifier,
    }


def query_result_json(qr: QueryResult) -> str:
    """Canonical JSON body; the CLI and HTTP service share these exact bytes."""
    return json.dumps(query_result_to_dict(qr), ensure_ascii=False)
