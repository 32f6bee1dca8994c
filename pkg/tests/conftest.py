import numpy as np
import pytest

from carspeak.corpus import Corpus, ReviewDoc
from carspeak.synthetic import generate_corpus
from carspeak.textproc import default_lexicon
from carspeak.vectorize import build_dataset


@pytest.fixture(scope="session")
def lex():
    return default_lexicon()


@pytest.fixture()
def tiny_corpus():
    return Corpus(
        (
            ReviewDoc(
                id="a1",
                make="acura",
                model="ilx",
                text="fast efficient car with comfortable seats",
                year=2013,
            ),
            ReviewDoc(
                id="a2",
                make="acura",
                model="ilx",
                text="efficient reliable car",
                year=2015,
            ),
            ReviewDoc(
                id="b1",
                make="audi",
                model="a6",
                text="luxurious spacious family sedan",
                year=2012,
            ),
        )
    )


@pytest.fixture(scope="session")
def small_synthetic():
    """6 classes x 10 reviews; big enough to train every classifier quickly."""
    return generate_corpus(n_classes=6, reviews_per_class=10, seed=5)


@pytest.fixture(scope="session")
def small_dataset(small_synthetic, lex):
    data, vocab, idf, label_map = build_dataset(small_synthetic.corpus, lex)
    return data


def random_sparse_query(rng: np.random.Generator, dim: int, allow_empty: bool = True):
    """Random L2-normalized sparse vector over a dim-sized vocabulary."""
    from carspeak.vectorize import SparseVector, empty_vector

    lowest = 0 if allow_empty else 1
    nnz = int(rng.integers(lowest, min(dim, 8) + 1))
    if nnz == 0:
        return empty_vector()
    indices = np.sort(rng.choice(dim, size=nnz, replace=False)).astype(np.int64)
    values = rng.uniform(0.1, 1.0, size=nnz)
    values /= np.sqrt(values @ values)
    return SparseVector(indices=indices, values=values)


def random_dataset(rng: np.random.Generator, n_rows: int, dim: int, n_classes: int):
    """Random dataset with every class represented at least once."""
    from carspeak.vectorize import DatasetMatrix

    vectors = tuple(random_sparse_query(rng, dim, allow_empty=False) for _ in range(n_rows))
    labels = rng.integers(0, n_classes, size=n_rows).astype(np.int64)
    seeded = min(n_rows, n_classes)
    labels[:seeded] = np.arange(seeded)
    return DatasetMatrix(vectors=vectors, labels=labels, dim=dim, n_classes=n_classes)
