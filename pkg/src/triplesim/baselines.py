"""Comparison approaches: plain Jaccard over triples and the subject-blind SiLi mode."""

from __future__ import annotations

import enum
from dataclasses import replace
from typing import Mapping, Optional

from triplesim.engine import DEFAULT_CONFIG, Score, SimilarityConfig, SimilarityEngine
from triplesim.rdf import EntityGraph
from triplesim.vectorizers import Vectorizer


class MethodId(str, enum.Enum):
    N1 = "n1"
    N2 = "n2"
    SILI = "sili"
    JACCARD = "jaccard"

    @property
    def rank(self) -> int:
        return _ORDER.index(self)

    def __lt__(self, other):
        if not isinstance(other, MethodId):
            return NotImplemented
        return self.rank < other.rank


_ORDER = [MethodId.N1, MethodId.N2, MethodId.SILI, MethodId.JACCARD]


def jaccard(g1: EntityGraph, g2: EntityGraph, *, subject_blind: bool = False) -> float:
    """|T1 & T2| / |T1 | T2| over exact triples.

    Entity graphs are flat, so two different entities never share a triple.
    ``subject_blind`` compares (predicate, object) pairs instead.
    """
    if subject_blind:
        s1 = {(t.predicate, t.object) for t in g1.triples}
        s2 = {(t.predicate, t.object) for t in g2.triples}
    else:
        s1, s2 = set(g1.triples), set(g2.triples)
    union = s1 | s2
    if not union:
        return 1.0
    return len(s1 & s2) / len(union)


def sili_engine(
    vec: Optional[Vectorizer],
    cfg: SimilarityConfig = DEFAULT_CONFIG,
    numeric_ranges: Optional[Mapping[str, float]] = None,
) -> SimilarityEngine:
    # predicate and object only: the subject weight is dropped and the
    # per-triple divisor shrinks to the two remaining components
    return SimilarityEngine(
        vec, replace(cfg, alpha=0.0), numeric_ranges=numeric_ranges, n_components=2
    )


def sili(
    g1: EntityGraph,
    g2: EntityGraph,
    vec: Optional[Vectorizer],
    cfg: SimilarityConfig = DEFAULT_CONFIG,
    ranges: Optional[Mapping[str, float]] = None,
) -> Score:
    return sili_engine(vec, cfg, ranges).graphs(g1, g2)
