"""Versioned single-file persistence for fitted pipeline artifacts.

Container layout: magic "CSPK", format version (u32), then length-prefixed
sections in fixed order: metadata, vocabulary, idf, labels, classifier.
Each section carries a CRC32 of its payload so silent corruption fails loudly.
All counts are unsigned 32-bit little-endian, reals are little-endian IEEE 754
doubles, strings are UTF-8 with a u32 byte-length prefix. Round trips are
bit-exact, so a loaded model predicts identically to the saved one.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from typing import IO

import numpy as np

from .classifiers import ForestModel, KnnModel, Model, MlpModel, SvmModel
from .classifiers.forest import TreeNode
from .vectorize import IdfTable, LabelMap, SparseVector, Vocabulary

MAGIC = b"CSPK"
FORMAT_VERSION = 1
SECTIONS = ("metadata", "vocabulary", "idf", "labels", "classifier")


class ModelFormatError(ValueError):
    """Corrupt, truncated, or incompatible model file."""


@dataclass(frozen=True)
class ModelBundle:
    """Everything needed to answer queries: fitted vocabulary, IDF table,
    label map, and one trained classifier, plus pipeline metadata
    (corpus hash, seed, hyperparameters, lexicon text)."""

    format_version: int
    metadata: dict[str, str]
    vocabulary: Vocabulary
    idf: IdfTable
    label_map: LabelMap
    kind: str
    model: Model


class _SectionWriter:
    def __init__(self) -> None:
        self.buf = bytearray()

    def u8(self, v: int) -> None:
        self.buf += struct.pack("<B", v)

    def u32(self, v: int) -> None:
        self.buf += struct.pack("<I", v)

    def f64(self, v: float) -> None:
        self.buf += struct.pack("<d", v)

    def f64_array(self, a: np.ndarray) -> None:
        self.buf += np.ascontiguousarray(a, dtype="<f8").tobytes()

    def string(self, s: str) -> None:
        raw = s.encode("utf-8")
        self.u32(len(raw))
        self.buf += raw


class _SectionReader:
    def __init__(self, payload: bytes, section: str) -> None:
        self.payload = payload
        self.pos = 0
        self.section = section

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.payload):
            raise ModelFormatError(f"unexpected end of section {self.section}")
        chunk = self.payload[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u8(self) -> int:
        return struct.unpack("<B", self.take(1))[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def f64(self) -> float:
        return struct.unpack("<d", self.take(8))[0]

    def f64_array(self, count: int) -> np.ndarray:
        return np.frombuffer(self.take(8 * count), dtype="<f8").astype(np.float64)

    def string(self) -> str:
        return self.take(self.u32()).decode("utf-8")

    def done(self) -> None:
        if self.pos != len(self.payload):
            raise ModelFormatError(f"trailing bytes in section {self.section}")


def _write_sparse(w: _SectionWriter, vec: SparseVector) -> None:
    w.u32(vec.nnz)
    for idx in vec.indices:
        w.u32(int(idx))
    w.f64_array(vec.values)


def _read_sparse(r: _SectionReader) -> SparseVector:
    nnz = r.u32()
    indices = np.array([r.u32() for _ in range(nnz)], dtype=np.int64)
    values = r.f64_array(nnz)
    return SparseVector(indices=indices, values=values)


def _write_tree(w: _SectionWriter, node: TreeNode) -> None:
    if node.feature < 0:
        w.u8(0)
        w.f64_array(node.hist)
    else:
        w.u8(1)
        w.u32(node.feature)
        w.f64(node.threshold)
        _write_tree(w, node.left)
        _write_tree(w, node.right)


def _read_tree(r: _SectionReader, n_classes: int) -> TreeNode:
    if r.u8() == 0:
        return TreeNode(hist=r.f64_array(n_classes))
    feature = r.u32()
    threshold = r.f64()
    left = _read_tree(r, n_classes)
    right = _read_tree(r, n_classes)
    return TreeNode(feature=feature, threshold=threshold, left=left, right=right)


def _classifier_payload(kind: str, model: Model) -> bytes:
    w = _SectionWriter()
    w.string(kind)
    if kind == "knn":
        assert isinstance(model, KnnModel)
        w.u32(model.k)
        w.u32(model.n_classes)
        w.u32(model.dim)
        w.u32(len(model.vectors))
        for vec, label in zip(model.vectors, model.labels):
            w.u32(int(label))
            _write_sparse(w, vec)
    elif kind == "rf":
        assert isinstance(model, ForestModel)
        w.u32(model.n_classes)
        w.u32(model.dim)
        w.u32(len(model.trees))
        for tree in model.trees:
            _write_tree(w, tree)
    elif kind == "svm":
        assert isinstance(model, SvmModel)
        w.u32(model.n_classes)
        w.u32(model.dim)
        w.f64_array(model.weights)
        w.f64_array(model.biases)
    elif kind == "mlp":
        assert isinstance(model, MlpModel)
        w.u32(model.dim)
        w.u32(model.hidden)
        w.u32(model.n_classes)
        w.f64_array(model.w1)
        w.f64_array(model.b1)
        w.f64_array(model.w2)
        w.f64_array(model.b2)
    else:
        raise ValueError(f"unknown classifier kind {kind!r}")
    return bytes(w.buf)


def _parse_classifier(r: _SectionReader) -> tuple[str, Model]:
    kind = r.string()
    if kind == "knn":
        k = r.u32()
        n_classes = r.u32()
        dim = r.u32()
        n_rows = r.u32()
        labels = np.zeros(n_rows, dtype=np.int64)
        vectors = []
        for i in range(n_rows):
            labels[i] = r.u32()
            vectors.append(_read_sparse(r))
        return kind, KnnModel(
            vectors=tuple(vectors), labels=labels, k=k, n_classes=n_classes, dim=dim
        )
    if kind == "rf":
        n_classes = r.u32()
        dim = r.u32()
        n_trees = r.u32()
        trees = tuple(_read_tree(r, n_classes) for _ in range(n_trees))
        return kind, ForestModel(trees=trees, n_classes=n_classes, dim=dim)
    if kind == "svm":
        n_classes = r.u32()
        dim = r.u32()
        weights = r.f64_array(n_classes * dim).reshape(n_classes, dim)
        biases = r.f64_array(n_classes)
        return kind, SvmModel(weights=weights, biases=biases)
    if kind == "mlp":
        dim = r.u32()
        hidden = r.u32()
        n_classes = r.u32()
        w1 = r.f64_array(dim * hidden).reshape(dim, hidden)
        b1 = r.f64_array(hidden)
        w2 = r.f64_array(hidden * n_classes).reshape(hidden, n_classes)
        b2 = r.f64_array(n_classes)
        return kind, MlpModel(w1=w1, b1=b1, w2=w2, b2=b2)
    raise ModelFormatError(f"unknown classifier kind {kind!r}")


def _section_payloads(b: ModelBundle) -> dict[str, bytes]:
    meta = _SectionWriter()
    meta.u32(len(b.metadata))
    for key in sorted(b.metadata):
        meta.string(key)
        meta.string(b.metadata[key])

    vocab = _SectionWriter()
    vocab.u32(len(b.vocabulary.terms))
    for term in b.vocabulary.terms:
        vocab.string(term)

    idf = _SectionWriter()
    idf.u32(b.idf.n_docs)
    idf.u32(len(b.vocabulary.terms))
    idf.f64_array(np.array([b.idf.idf[t] for t in b.vocabulary.terms]))

    labels = _SectionWriter()
    labels.u32(len(b.label_map.labels))
    for label in b.label_map.labels:
        labels.string(label)

    return {
        "metadata": bytes(meta.buf),
        "vocabulary": bytes(vocab.buf),
        "idf": bytes(idf.buf),
        "labels": bytes(labels.buf),
        "classifier": _classifier_payload(b.kind, b.model),
    }


def save_bundle(b: ModelBundle, writer: IO[bytes]) -> int:
    """Serialize a bundle; returns the byte count written.

    Deterministic: the same bundle always produces identical bytes.
    """
    payloads = _section_payloads(b)
    out = bytearray()
    out += MAGIC
    out += struct.pack("<I", b.format_version)
    for name in SECTIONS:
        payload = payloads[name]
        out += struct.pack("<II", len(payload), zlib.crc32(payload))
        out += payload
    writer.write(bytes(out))
    return len(out)


def load_bundle(reader: IO[bytes]) -> ModelBundle:
    """Exact inverse of save_bundle, with framing and checksum validation."""
    data = reader.read()
    if data[:4] != MAGIC:
        raise ModelFormatError("not a carspeak model file")
    if len(data) < 8:
        raise ModelFormatError("unexpected end of section metadata")
    version = struct.unpack("<I", data[4:8])[0]
    if version > FORMAT_VERSION:
        raise ModelFormatError(
            f"model format version {version} is newer than supported version "
            f"{FORMAT_VERSION}"
        )
    pos = 8
    payloads: dict[str, bytes] = {}
    for name in SECTIONS:
        if pos + 8 > len(data):
            raise ModelFormatError(f"unexpected end of section {name}")
        length, crc = struct.unpack("<II", data[pos : pos + 8])
        pos += 8
        if pos + length > len(data):
            raise ModelFormatError(f"unexpected end of section {name}")
        payload = data[pos : pos + length]
        pos += length
        if zlib.crc32(payload) != crc:
            raise ModelFormatError(f"section {name}: checksum mismatch")
        payloads[name] = payload

    r = _SectionReader(payloads["metadata"], "metadata")
    metadata = {}
    for _ in range(r.u32()):
        key = r.string()
        metadata[key] = r.string()
    r.done()

    r = _SectionReader(payloads["vocabulary"], "vocabulary")
    terms = [r.string() for _ in range(r.u32())]
    r.done()
    vocabulary = Vocabulary(terms=tuple(terms), index={t: i for i, t in enumerate(terms)})

    r = _SectionReader(payloads["idf"], "idf")
    n_docs = r.u32()
    n_terms = r.u32()
    if n_terms != len(terms):
        raise ModelFormatError("idf table does not match vocabulary size")
    values = r.f64_array(n_terms)
    r.done()
    idf = IdfTable(idf={t: float(v) for t, v in zip(terms, values)}, n_docs=n_docs)

    r = _SectionReader(payloads["labels"], "labels")
    label_keys = [r.string() for _ in range(r.u32())]
    r.done()
    label_map = LabelMap(
        labels=tuple(label_keys), index={k: i for i, k in enumerate(label_keys)}
    )

    r = _SectionReader(payloads["classifier"], "classifier")
    kind, model = _parse_classifier(r)
    r.done()

    return ModelBundle(
        format_version=version,
        metadata=metadata,
        vocabulary=vocabulary,
        idf=idf,
        label_map=label_map,
        kind=kind,
        model=model,
    )
