"""Deterministic synthetic review corpora for end-to-end evaluation.

Each synthetic car class gets a private pool of invented trait words; reviews
mix those with a shared noise pool. Class vocabularies are disjoint, so any
sane classifier should recover the labels almost perfectly; the noise share
keeps the problem from being a pure lookup.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, ReviewDoc, model_key

_LETTERS = "abcdefghijklmnopqrstuvwxyz"

MAKES = ("aquila", "borak", "cervo", "dryad", "ember")


def _letters(i: int) -> str:
    if i < 26:
        return _LETTERS[i]
    return _LETTERS[i // 26 - 1] + _LETTERS[i % 26]


def class_trait_words(class_id: int, vocab_size: int = 8) -> tuple[str, ...]:
    """The invented trait vocabulary of one class, e.g. "traitda" for class 3."""
    return tuple(f"trait{_letters(class_id)}{_letters(j)}" for j in range(vocab_size))


def noise_words(vocab_size: int = 40) -> tuple[str, ...]:
    return tuple(f"noise{_letters(j)}" for j in range(vocab_size))


@dataclass(frozen=True)
class SyntheticCorpus:
    corpus: Corpus
    class_words: dict[str, tuple[str, ...]]  # "make|model" key -> trait pool
    noise_pool: tuple[str, ...]


def generate_corpus(
    n_classes: int = 20,
    reviews_per_class: int = 30,
    noise_fraction: float = 0.3,
    seed: int = 42,
    words_per_review: int = 24,
    class_vocab_size: int = 8,
    noise_vocab_size: int = 40,
) -> SyntheticCorpus:
    rng = np.random.default_rng(seed)
    noise_pool = noise_words(noise_vocab_size)
    docs: list[ReviewDoc] = []
    class_words: dict[str, tuple[str, ...]] = {}
    for c in range(n_classes):
        make = MAKES[c % len(MAKES)]
        model = f"model{_letters(c)}"
        traits = class_trait_words(c, class_vocab_size)
        class_words[model_key(make, model)] = traits
        for r in range(reviews_per_class):
            words = []
            for _ in range(words_per_review):
                if rng.random() < noise_fraction:
                    words.append(noise_pool[int(rng.integers(len(noise_pool)))])
                else:
                    words.append(traits[int(rng.integers(len(traits)))])
            # Filler exercises the content-word filter; make/model stay out of
            # the text so class signal comes only from the trait pools.
            text = "this car is very " + " ".join(words)
            docs.append(
                ReviewDoc(
                    id=f"r{c:02d}{r:03d}",
                    make=make,
                    model=model,
                    text=text,
                    year=2000 + int(rng.integers(19)),
                )
            )
    return SyntheticCorpus(
        corpus=Corpus(tuple(docs)), class_words=class_words, noise_pool=noise_pool
    )
