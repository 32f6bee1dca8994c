"""Review corpus loading, validation, year filtering, and summary statistics.

The interchange format is JSON lines: one flat object per review with keys
id, make, model, text (required) and year, title, source (optional).
Unknown keys are rejected so schema drift fails loudly.
"""

from __future__ import annotations

import hashlib
import io
import json
import re
from dataclasses import dataclass
from typing import IO, Iterable, Iterator


class CorpusError(ValueError):
    """Malformed corpus file or invalid review record."""


REQUIRED_FIELDS = ("id", "make", "model", "text")
OPTIONAL_FIELDS = ("year", "title", "source")
ALL_FIELDS = REQUIRED_FIELDS + OPTIONAL_FIELDS

_WS_RUN = re.compile(r"\s+")


def normalize_name(value: str) -> str:
    """Lowercase, trim, and collapse internal whitespace runs to single spaces.

    "Acura ILX" and " acura  ilx " must map to the same class key.
    """
    return _WS_RUN.sub(" ", value.strip()).lower()


def model_key(make: str, model: str) -> str:
    """Year-collapsed class key for a car: normalized "make|model"."""
    return f"{normalize_name(make)}|{normalize_name(model)}"


@dataclass(frozen=True)
class ReviewDoc:
    """One car review. make/model/text must be non-empty after trimming."""

    id: str
    make: str
    model: str
    text: str
    year: int | None = None
    title: str | None = None
    source: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusError("id must be a non-empty string")
        if not self.make.strip():
            raise CorpusError("make must be non-empty")
        if not self.model.strip():
            raise CorpusError("model must be non-empty")
        if not self.text.strip():
            raise CorpusError("text must be non-empty")

    def key(self) -> str:
        return model_key(self.make, self.model)


@dataclass(frozen=True)
class Corpus:
    """Ordered, duplicate-free collection of reviews.

    Document order is stable; downstream determinism (fold plans, dataset
    rows) depends on it. Immutable after construction.
    """

    docs: tuple[ReviewDoc, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "docs", tuple(self.docs))
        seen: set[str] = set()
        for doc in self.docs:
            if doc.id in seen:
                raise CorpusError(f"duplicate id {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.docs)

    def __iter__(self) -> Iterator[ReviewDoc]:
        return iter(self.docs)


@dataclass(frozen=True)
class CorpusStats:
    """Corpus size summary: reviews, distinct year-collapsed models, makes."""

    n_reviews: int
    n_models: int
    n_makes: int


def _parse_record(line_no: int, raw: str) -> ReviewDoc:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"line {line_no}: invalid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise CorpusError(f"line {line_no}: record must be an object")
    for key in obj:
        if key not in ALL_FIELDS:
            raise CorpusError(f"line {line_no}: unknown field {key}")
    for key in REQUIRED_FIELDS:
        if key not in obj:
            raise CorpusError(f"line {line_no}: missing field {key}")
    for key in ("id", "make", "model", "text", "title", "source"):
        if key in obj and obj[key] is not None and not isinstance(obj[key], str):
            raise CorpusError(f"line {line_no}: field {key} must be a string")
    year = obj.get("year")
    if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
        raise CorpusError(f"line {line_no}: field year must be an integer")
    try:
        return ReviewDoc(
            id=obj["id"],
            make=normalize_name(obj["make"]),
            model=normalize_name(obj["model"]),
            text=obj["text"],
            year=year,
            title=obj.get("title"),
            source=obj.get("source"),
        )
    except CorpusError as exc:
        raise CorpusError(f"line {line_no}: {exc}") from exc


def ingest_corpus(reader: IO[bytes] | Iterable[bytes]) -> Corpus:
    """Read a line-delimited corpus stream into a Corpus.

    Records are normalized (make/model lowercased, whitespace collapsed) and
    kept in input order. Malformed lines and duplicate ids raise CorpusError
    naming the offending line.
    """
    docs: list[ReviewDoc] = []
    seen: set[str] = set()
    for line_no, raw_line in enumerate(reader, start=1):
        text = raw_line.decode("utf-8") if isinstance(raw_line, bytes) else raw_line
        if text.strip() == "":
            raise CorpusError(f"line {line_no}: empty line")
        doc = _parse_record(line_no, text)
        if doc.id in seen:
            raise CorpusError(f"line {line_no}: duplicate id {doc.id!r}")
        seen.add(doc.id)
        docs.append(doc)
    return Corpus(tuple(docs))


def serialize_corpus(c: Corpus, writer: IO[bytes] | None = None) -> bytes:
    """Write a corpus back to its line-delimited form.

    Inverse of ingest_corpus for normalized corpora: ingest(serialize(c)) == c.
    Returns the serialized bytes; also writes them to `writer` when given.
    """
    buf = io.BytesIO()
    for doc in c:
        record: dict[str, object] = {
            "id": doc.id,
            "make": doc.make,
            "model": doc.model,
        }
        if doc.year is not None:
            record["year"] = doc.year
        if doc.title is not None:
            record["title"] = doc.title
        record["text"] = doc.text
        if doc.source is not None:
            record["source"] = doc.source
        buf.write(json.dumps(record, ensure_ascii=False).encode("utf-8"))
        buf.write(b"\n")
    data = buf.getvalue()
    if writer is not None:
        writer.write(data)
    return data


def corpus_fingerprint(c: Corpus) -> str:
    """SHA-256 of the serialized corpus; stable identity for model metadata."""
    return hashlib.sha256(serialize_corpus(c)).hexdigest()


def filter_year_range(
    c: Corpus, min_year: int, max_year: int, keep_missing: bool = True
) -> Corpus:
    """Keep reviews whose model year falls in [min_year, max_year] inclusive.

    Reviews without a year are retained by default: the year criterion was a
    collection-time filter and absent metadata should not silently drop text.
    Pass keep_missing=False to drop them instead.
    """
    if min_year > max_year:
        raise ValueError(f"min_year {min_year} exceeds max_year {max_year}")
    kept = tuple(
        doc
        for doc in c
        if (keep_missing if doc.year is None else min_year <= doc.year <= max_year)
    )
    return Corpus(kept)


def corpus_stats(c: Corpus) -> CorpusStats:
    """Count reviews, distinct year-collapsed (make, model) classes, and makes."""
    models = {doc.key() for doc in c}
    makes = {normalize_name(doc.make) for doc in c}
    return CorpusStats(n_reviews=len(c), n_models=len(models), n_makes=len(makes))
