"""Word to vector lookup: pretrained embeddings or corpus TF-IDF rows."""

from __future__ import annotations

import gzip
import io
import logging
import math
from typing import BinaryIO, Iterable, Mapping, Optional, Protocol, Sequence, Union

import numpy as np

from triplesim.errors import DimensionMismatch, EmptyCorpus, EmptyLexicon, FormatError, LengthMismatch

log = logging.getLogger(__name__)


class Vectorizer(Protocol):
    dimension: int

    def lookup(self, word: str) -> Optional[np.ndarray]: ...


def _frozen(vec: np.ndarray) -> np.ndarray:
    vec.setflags(write=False)
    return vec


class EmbeddingStore:
    """Immutable word -> dense vector table."""

    def __init__(self, dimension: int, table: Mapping[str, Sequence[float]]):
        if dimension <= 0:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        frozen = {}
        for word, values in table.items():
            vec = np.array(values, dtype=np.float64)
            if vec.shape != (dimension,):
                raise ValueError(f"vector for {word!r} has shape {vec.shape}, expected ({dimension},)")
            frozen[word] = _frozen(vec)
        self._table = frozen

    def lookup(self, word: str) -> Optional[np.ndarray]:
        return self._table.get(word)

    def __contains__(self, word: str) -> bool:
        return word in self._table

    def __len__(self) -> int:
        return len(self._table)

    @property
    def words(self) -> list[str]:
        return list(self._table)

    def to_word2vec_text(self) -> bytes:
        lines = [f"{len(self._table)} {self.dimension}"]
        for word, vec in self._table.items():
            lines.append(word + " " + " ".join(repr(float(x)) for x in vec))
        return ("\n".join(lines) + "\n").encode("utf-8")


def load_word2vec_text(source: Union[BinaryIO, bytes, str]) -> EmbeddingStore:
    """Read the word2vec text format; gzip input is detected from its magic bytes.

    ``source`` may be a binary stream, raw bytes, or a filesystem path.
    """
    if isinstance(source, str):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    if data[:2] == b"\x1f\x8b":
        data = gzip.decompress(data)
    lines = io.StringIO(data.decode("utf-8"))

    header = lines.readline().split()
    if len(header) != 2:
        raise FormatError(1, "header must be '<word_count> <dimension>'")
    try:
        count, dimension = int(header[0]), int(header[1])
    except ValueError:
        raise FormatError(1, "header fields must be integers") from None
    if count < 0 or dimension <= 0:
        raise FormatError(1, "header values out of range")

    table: dict[str, list[float]] = {}
    rows = 0
    for lineno, line in enumerate(lines, start=2):
        parts = line.split()
        if not parts:
            continue
        rows += 1
        word, fields = parts[0], parts[1:]
        try:
            values = [float(x) for x in fields]
        except ValueError:
            raise FormatError(lineno, "unparseable float") from None
        if len(values) != dimension:
            raise DimensionMismatch(lineno, f"expected {dimension} values, got {len(values)}")
        table.pop(word, None)
        table[word] = values
    if rows != count:
        log.warning("header declares %d words, file has %d rows", count, rows)
    return EmbeddingStore(dimension, table)


def cosine(v1: Sequence[float], v2: Sequence[float]) -> float:
    """Cosine similarity; 0.0 when either vector has zero norm."""
    a = np.asarray(v1, dtype=np.float64)
    b = np.asarray(v2, dtype=np.float64)
    if a.shape != b.shape:
        raise LengthMismatch(f"vector lengths differ: {a.shape} vs {b.shape}")
    na = math.sqrt(float(np.dot(a, a)))
    nb = math.sqrt(float(np.dot(b, b)))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b)) / (na * nb)


class TfidfModel:
    """Term-document TF-IDF matrix; a word's vector is its row over documents.

    tf is count / document length and idf is ln(n_docs / df) with no smoothing,
    so words present in every document map to the zero vector.
    """

    def __init__(self, corpus: Sequence[Sequence[str]]):
        if not corpus:
            raise EmptyCorpus("TF-IDF needs at least one document")
        self.n_docs = len(corpus)
        self.dimension = self.n_docs
        self.term_frequencies: list[dict[str, float]] = []
        df: dict[str, int] = {}
        for doc in corpus:
            counts: dict[str, int] = {}
            for w in doc:
                counts[w] = counts.get(w, 0) + 1
            length = len(doc)
            self.term_frequencies.append({w: c / length for w, c in counts.items()})
            for w in counts:
                df[w] = df.get(w, 0) + 1
        self.document_frequency = df
        self.vocabulary = sorted(df)
        self._rows: dict[str, np.ndarray] = {}
        for w in self.vocabulary:
            idf = math.log(self.n_docs / df[w])
            row = np.array([tf.get(w, 0.0) * idf for tf in self.term_frequencies])
            self._rows[w] = _frozen(row)

    def idf(self, word: str) -> float:
        return math.log(self.n_docs / self.document_frequency[word])

    def lookup(self, word: str) -> Optional[np.ndarray]:
        return self._rows.get(word)

    def __contains__(self, word: str) -> bool:
        return word in self._rows


def build_tfidf(corpus: Sequence[Sequence[str]]) -> TfidfModel:
    return TfidfModel(corpus)


def lookup(vectorizer: Vectorizer, word: str) -> Optional[np.ndarray]:
    return vectorizer.lookup(word)


def generate_toy_embeddings(lexicon: Iterable[str], dimension: int, seed: int) -> EmbeddingStore:
    """Random unit vectors, one per lexicon word, reproducible from ``seed``."""
    words = list(lexicon)
    if not words:
        raise EmptyLexicon("lexicon is empty")
    if dimension < 2:
        raise ValueError("dimension must be at least 2")
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    table = {}
    for w in words:
        vec = rng.uniform(-1.0, 1.0, dimension)
        table[w] = vec / np.linalg.norm(vec)
    return EmbeddingStore(dimension, table)
