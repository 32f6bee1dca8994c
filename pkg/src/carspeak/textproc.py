"""Tokenization and content-word filtering for review text.

Reviews are reduced to their nouns and adjectives before vectorization.
Tagging is a deterministic lexicon + suffix-rule lookup, not a statistical
tagger: the pipeline only needs a reproducible keep/drop decision per word.
Unknown words default to NOUN so car jargon and misspellings survive.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Iterable

from .corpus import Corpus

NOUN = "NOUN"
ADJ = "ADJ"
OTHER = "OTHER"
TAGS = frozenset({NOUN, ADJ, OTHER})

CONTENT_TAGS = frozenset({NOUN, ADJ})

# Lowercase maximal alphabetic runs; digits and punctuation separate tokens.
_WORD_RE = re.compile(r"[a-z]+")
MIN_TOKEN_LEN = 2


@dataclass(frozen=True)
class Token:
    surface: str
    tag: str


@dataclass(frozen=True)
class WordFrequency:
    word: str
    count: int


class LexiconError(ValueError):
    """Malformed lexicon file."""


@dataclass(frozen=True)
class PosLexicon:
    """Word tag lookup: exact entries first, then suffix rules in priority order.

    Words matching nothing are tagged NOUN, so only an explicit OTHER entry
    can ever drop a word from the pipeline.
    """

    entries: dict[str, str] = field(default_factory=dict)
    suffix_rules: tuple[tuple[str, str], ...] = ()

    def tag_word(self, word: str) -> str:
        tag = self.entries.get(word)
        if tag is not None:
            return tag
        for suffix, suffix_tag in self.suffix_rules:
            if word.endswith(suffix):
                return suffix_tag
        return NOUN


def parse_lexicon(lines: Iterable[str]) -> PosLexicon:
    """Parse the lexicon format: "word<TAB>TAG" lines, then a "#SUFFIX" section
    of "-suffix<TAB>TAG" rules in priority order. Other "#" lines are comments.
    """
    entries: dict[str, str] = {}
    rules: list[tuple[str, str]] = []
    in_suffix = False
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.strip() == "#SUFFIX":
                in_suffix = True
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(f"lexicon line {line_no}: expected word<TAB>TAG")
        word, tag = parts[0].strip(), parts[1].strip()
        if tag not in TAGS:
            raise LexiconError(f"lexicon line {line_no}: unknown tag {tag}")
        if in_suffix:
            if not word.startswith("-") or len(word) < 2:
                raise LexiconError(f"lexicon line {line_no}: suffix must start with '-'")
            rules.append((word[1:], tag))
        else:
            entries[word.lower()] = tag
    return PosLexicon(entries=entries, suffix_rules=tuple(rules))


def load_lexicon(reader: IO[str] | IO[bytes]) -> PosLexicon:
    data = reader.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return parse_lexicon(data.splitlines())


def default_lexicon() -> PosLexicon:
    """The lexicon shipped with the package: common English function words
    tagged OTHER plus automotive vocabulary and the standard suffix rules.
    """
    text = resources.files("carspeak.data").joinpath("lexicon.txt").read_text("utf-8")
    return parse_lexicon(text.splitlines())


def tokenize(text: str) -> list[str]:
    """Lowercased maximal alphabetic runs in text order, dropping runs shorter
    than two characters. "A V8 engine" yields only ["engine"].
    """
    return [t for t in _WORD_RE.findall(text.lower()) if len(t) >= MIN_TOKEN_LEN]


def pos_tag(tokens: list[str], lex: PosLexicon) -> list[Token]:
    """Tag each token: lexicon entry, else first matching suffix rule, else NOUN."""
    return [Token(surface=t, tag=lex.tag_word(t)) for t in tokens]


def filter_content_words(tagged: list[Token]) -> list[str]:
    """Surfaces of NOUN/ADJ tokens, order and duplicates preserved."""
    return [t.surface for t in tagged if t.tag in CONTENT_TAGS]


def content_words(text: str, lex: PosLexicon) -> list[str]:
    """Full per-document pipeline: tokenize, tag, keep nouns and adjectives."""
    return filter_content_words(pos_tag(tokenize(text), lex))


def top_k_frequencies(c: Corpus, lex: PosLexicon, k: int) -> list[WordFrequency]:
    """The k most frequent content words across all reviews.

    Descending by count, ties broken by ascending word; returns fewer than k
    entries when the filtered vocabulary is smaller.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    counts: Counter[str] = Counter()
    for doc in c:
        counts.update(content_words(doc.text, lex))
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [WordFrequency(word=w, count=n) for w, n in ranked[:k]]
