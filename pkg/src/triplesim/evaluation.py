"""Pairwise score matrices, score distributions, winner shares, exports and ranking."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from triplesim.baselines import MethodId, jaccard, sili_engine
from triplesim.engine import (
    DEFAULT_CONFIG,
    CombineMode,
    NumericMode,
    SimilarityConfig,
    SimilarityEngine,
    compute_numeric_ranges,
)
from triplesim.errors import PairError, ShapeMismatch
from triplesim.rdf import Dataset, EntityGraph
from triplesim.text import tokenize
from triplesim.vectorizers import TfidfModel, Vectorizer, build_tfidf

Scorer = Callable[[EntityGraph, EntityGraph], float]


def entity_corpus(data: Dataset) -> list[list[str]]:
    """One TF-IDF document per entity: subject, predicate and object words of each triple."""
    docs = []
    for g in data:
        words: list[str] = []
        for t in g.triples:
            words.extend(tokenize(t.subject))
            words.extend(tokenize(t.predicate))
            words.extend(tokenize(t.object))
        docs.append(words)
    return docs


def tfidf_for_dataset(data: Dataset) -> TfidfModel:
    return build_tfidf(entity_corpus(data))


def make_engine(
    method: MethodId,
    data: Dataset,
    vec: Optional[Vectorizer] = None,
    cfg: SimilarityConfig = DEFAULT_CONFIG,
) -> Optional[SimilarityEngine]:
    """Engine behind an embedding-based method, or None for Jaccard.

    N1 needs word embeddings. N2 builds its TF-IDF model from ``data``.
    SiLi uses ``vec`` when given and exact word matching otherwise.
    Range-scaled numeric spreads are taken over the whole of ``data``.
    """
    method = MethodId(method)
    if method is MethodId.JACCARD:
        return None
    ranges = None
    if cfg.numeric_normalization is NumericMode.RANGE:
        ranges = compute_numeric_ranges(data)
    if method is MethodId.N1:
        if vec is None:
            raise ValueError("method n1 requires word embeddings")
        return SimilarityEngine(vec, cfg, numeric_ranges=ranges)
    if method is MethodId.N2:
        return SimilarityEngine(tfidf_for_dataset(data), cfg, numeric_ranges=ranges)
    return sili_engine(vec, cfg, ranges)


def make_scorer(
    method: MethodId,
    data: Dataset,
    vec: Optional[Vectorizer] = None,
    cfg: SimilarityConfig = DEFAULT_CONFIG,
) -> Scorer:
    engine = make_engine(method, data, vec, cfg)
    if engine is None:
        return jaccard
    return lambda g1, g2: engine.graphs(g1, g2).value


@dataclass
class SimilarityMatrix:
    ids: list[str]
    values: np.ndarray
    method: MethodId
    config: Optional[dict] = None

    def __len__(self) -> int:
        return len(self.ids)

    def upper(self) -> np.ndarray:
        """Off-diagonal upper-triangle values in row-major pair order."""
        i, j = np.triu_indices(len(self.ids), k=1)
        return self.values[i, j]


def pairwise_matrix(
    data: Dataset,
    method: MethodId,
    vec: Optional[Vectorizer] = None,
    cfg: SimilarityConfig = DEFAULT_CONFIG,
    threads: int = 1,
) -> SimilarityMatrix:
    if len(data) == 0:
        raise ValueError("dataset is empty")
    method = MethodId(method)
    score = make_scorer(method, data, vec, cfg)
    graphs = data.entities
    n = len(graphs)

    def row(i: int) -> list[float]:
        out = []
        for j in range(i, n):
            try:
                out.append(score(graphs[i], graphs[j]))
            except Exception as exc:
                raise PairError(graphs[i].id, graphs[j].id, exc) from exc
        return out

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, range(n)))
    else:
        rows = [row(i) for i in range(n)]

    values = np.zeros((n, n))
    for i, r in enumerate(rows):
        values[i, i:] = r
        values[i:, i] = r
    snapshot = None if method is MethodId.JACCARD else cfg.to_dict()
    return SimilarityMatrix(data.ids, values, method, snapshot)


def highest_score_share(matrices: Sequence[SimilarityMatrix]) -> dict[MethodId, float]:
    """Fraction of entity pairs on which each method gives the top score.

    Ties split the pair evenly among the tied methods.
    """
    if not matrices:
        return {}
    methods = [m.method for m in matrices]
    if len(set(methods)) != len(methods):
        raise ValueError("each method may appear only once")
    first = matrices[0]
    for m in matrices[1:]:
        if m.ids != first.ids or m.values.shape != first.values.shape:
            raise ShapeMismatch("matrices must share ids and shape")
    for m in matrices:
        if m.config is not None and m.config.get("combine") != CombineMode.NORMALIZED.value:
            raise ValueError(f"{m.method.value}: highest-score share needs normalized combine")
    stacked = np.vstack([m.upper() for m in matrices])
    n_pairs = stacked.shape[1]
    if n_pairs == 0:
        return {m: 0.0 for m in sorted(methods)}
    winners = stacked == stacked.max(axis=0)
    weights = winners / winners.sum(axis=0)
    shares = weights.sum(axis=1) / n_pairs
    result = dict(zip(methods, (float(s) for s in shares)))
    return {m: result[m] for m in sorted(methods)}


@dataclass
class Histogram:
    bin_width: float
    bins: list[tuple[float, int]]
    total: int

    def to_csv(self) -> bytes:
        lines = ["bin_lower,count"] + [f"{lower:.6f},{count}" for lower, count in self.bins]
        return ("\n".join(lines) + "\n").encode("utf-8")


def histogram(matrix: SimilarityMatrix, bin_width: float = 0.05) -> Histogram:
    """Bin the off-diagonal upper-triangle scores into ``[k*w, (k+1)*w)`` cells.

    Bins run from 0 (or lower, for negative scores) up to at least 1.0; the top
    edge value lands in the last bin.
    """
    if not bin_width > 0:
        raise ValueError("bin_width must be positive")
    values = matrix.upper()
    if values.size == 0:
        return Histogram(bin_width, [], 0)
    idx = np.floor(values / bin_width).astype(np.int64)
    top = max(1.0, float(values.max()))
    last = max(int(math.ceil(top / bin_width)) - 1, 0)
    idx = np.minimum(idx, last)
    first = min(0, int(idx.min()))
    counts = np.bincount(idx - first, minlength=last - first + 1)
    bins = [(round((first + k) * bin_width, 12), int(c)) for k, c in enumerate(counts)]
    return Histogram(bin_width, bins, int(values.size))


def export_matrix_csv(matrix: SimilarityMatrix) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", *matrix.ids])
    for entity_id, row in zip(matrix.ids, matrix.values):
        writer.writerow([entity_id, *(f"{v:.6f}" for v in row)])
    return buf.getvalue().encode("utf-8")


def export_heatmap_pgm(matrix: SimilarityMatrix) -> bytes:
    """Binary greyscale image, one pixel per cell, scaled so the maximum is white."""
    values = matrix.values
    n_rows, n_cols = values.shape
    peak = float(values.max()) if values.size else 0.0
    if peak > 0:
        gray = np.floor(255.0 * values / peak + 0.5)
        pixels = np.clip(gray, 0, 255).astype(np.uint8)
    else:
        pixels = np.zeros(values.shape, dtype=np.uint8)
    return f"P5\n{n_cols} {n_rows}\n255\n".encode("ascii") + pixels.tobytes()


def rank_top_k(
    data: Dataset,
    query_id: str,
    k: int,
    method: MethodId,
    vec: Optional[Vectorizer] = None,
    cfg: SimilarityConfig = DEFAULT_CONFIG,
) -> list[tuple[str, float]]:
    """Other entities by descending score, ties by ascending id, at most ``k``."""
    if k <= 0:
        raise ValueError("k must be positive")
    query = data.get(query_id)
    score = make_scorer(MethodId(method), data, vec, cfg)
    scored = []
    for g in data:
        if g.id == query_id:
            continue
        try:
            scored.append((g.id, score(query, g)))
        except Exception as exc:
            raise PairError(query_id, g.id, exc) from exc
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:k]


@dataclass
class EvalReport:
    n_entities: int
    n_pairs: int
    config: dict
    summary: dict[str, dict[str, Optional[float]]]
    shares: dict[str, float]
    histograms: dict[str, Histogram]
    runtime_seconds: float = field(default=0.0, compare=False)

    def to_dict(self, include_runtime: bool = False) -> dict:
        d = {
            "n_entities": self.n_entities,
            "n_pairs": self.n_pairs,
            "config": self.config,
            "summary": self.summary,
            "highest_score_share": self.shares,
            "histograms": {
                m: {
                    "bin_width": h.bin_width,
                    "total": h.total,
                    "bins": [[lower, count] for lower, count in h.bins],
                }
                for m, h in self.histograms.items()
            },
        }
        if include_runtime:
            d["runtime_seconds"] = self.runtime_seconds
        return d

    def to_json(self, include_runtime: bool = False) -> bytes:
        text = json.dumps(self.to_dict(include_runtime), indent=2, sort_keys=True)
        return (text + "\n").encode("utf-8")


def _summary(matrix: SimilarityMatrix) -> dict[str, Optional[float]]:
    upper = matrix.upper()
    if upper.size == 0:
        return {"min": None, "max": None, "mean": None}
    return {
        "min": float(upper.min()),
        "max": float(upper.max()),
        "mean": math.fsum(upper.tolist()) / upper.size,
    }


def run_evaluation(
    data: Dataset,
    methods: Sequence[MethodId],
    vec: Optional[Vectorizer] = None,
    cfg: SimilarityConfig = DEFAULT_CONFIG,
    threads: int = 1,
    bin_width: float = 0.05,
) -> tuple[list[SimilarityMatrix], EvalReport]:
    """Score every method on every pair; scores are combined in normalized mode."""
    start = time.perf_counter()
    cfg = cfg.updated(combine=CombineMode.NORMALIZED)
    methods = sorted(MethodId(m) for m in methods)
    matrices = [pairwise_matrix(data, m, vec, cfg, threads) for m in methods]
    shares = highest_score_share(matrices)
    n = len(data)
    report = EvalReport(
        n_entities=n,
        n_pairs=n * (n - 1) // 2,
        config=cfg.to_dict(),
        summary={m.method.value: _summary(m) for m in matrices},
        shares={m.value: s for m, s in shares.items()},
        histograms={m.method.value: histogram(m, bin_width) for m in matrices},
    )
    report.runtime_seconds = time.perf_counter() - start
    return matrices, report
