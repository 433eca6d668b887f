"""Hybrid triple-set similarity.

Qualitative components (subject, predicate, and textual objects) are compared
word by word: each word takes its best cosine match on the other side and the
two directions are averaged. Numeric objects use 1 / (1 + euclidean distance).
Per-triple scores are weighted sums over components divided by the component
count, and two entity graphs are scored by averaging aligned triple pairs,
separately for textual and numeric objects.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from triplesim.errors import BothEmpty, KindMismatch, LengthMismatch
from triplesim.rdf import IRI, EntityGraph, ObjectKind, Triple, classify_object, numeric_value
from triplesim.text import tokenize
from triplesim.vectorizers import Vectorizer, cosine

QUAL = ObjectKind.QUALITATIVE
QUANT = ObjectKind.QUANTITATIVE


class NumericMode(str, enum.Enum):
    LITERAL = "literal"
    RANGE = "range"


class AlignMode(str, enum.Enum):
    PREDICATE = "predicate"
    BEST_MATCH = "best_match"


class CombineMode(str, enum.Enum):
    LITERAL = "literal"
    NORMALIZED = "normalized"


@dataclass(frozen=True)
class SimilarityConfig:
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    clamp_negative_cosine: bool = True
    numeric_normalization: NumericMode = NumericMode.LITERAL
    alignment: AlignMode = AlignMode.PREDICATE
    combine: CombineMode = CombineMode.LITERAL

    def __post_init__(self):
        object.__setattr__(self, "numeric_normalization", NumericMode(self.numeric_normalization))
        object.__setattr__(self, "alignment", AlignMode(self.alignment))
        object.__setattr__(self, "combine", CombineMode(self.combine))
        for name in ("alpha", "beta", "gamma"):
            w = getattr(self, name)
            if not isinstance(w, (int, float)) or isinstance(w, bool) or not math.isfinite(w) or w < 0:
                raise ValueError(f"{name} must be a finite non-negative number, got {w!r}")
            object.__setattr__(self, name, float(w))
        if not isinstance(self.clamp_negative_cosine, bool):
            raise ValueError("clamp_negative_cosine must be a boolean")
        if self.alpha == self.beta == self.gamma == 0:
            raise ValueError("at least one weight must be positive")

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("numeric_normalization", "alignment", "combine"):
            d[key] = d[key].value
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: Mapping) -> "SimilarityConfig":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "SimilarityConfig":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("config must be a JSON object")
        return cls.from_dict(data)

    def updated(self, **changes) -> "SimilarityConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


DEFAULT_CONFIG = SimilarityConfig()


@dataclass(frozen=True)
class Score:
    value: float
    breakdown: Optional[dict] = field(default=None, compare=False)

    def __float__(self) -> float:
        return self.value


class Pair(NamedTuple):
    left: Triple
    right: Triple
    kind: ObjectKind
    score: float


class Unmatched(NamedTuple):
    triple: Triple
    side: int
    kind: ObjectKind


@dataclass(frozen=True)
class Alignment:
    pairs: tuple[Pair, ...]
    unmatched: tuple[Unmatched, ...]

    def mirrored(self) -> "Alignment":
        return Alignment(
            tuple(Pair(p.right, p.left, p.kind, p.score) for p in self.pairs),
            tuple(Unmatched(u.triple, 3 - u.side, u.kind) for u in self.unmatched),
        )


def compute_numeric_ranges(graphs: Iterable[EntityGraph]) -> dict[str, float]:
    """Observed max - min of numeric objects, per predicate IRI."""
    lo: dict[str, float] = {}
    hi: dict[str, float] = {}
    for g in graphs:
        for t in g.quantitative:
            p = t.predicate.value
            v = numeric_value(t.object)
            lo[p] = min(lo.get(p, v), v)
            hi[p] = max(hi.get(p, v), v)
    return {p: hi[p] - lo[p] for p in lo}


def _greedy(candidates: list[tuple[float, Triple, Triple]], used1: set, used2: set) -> list:
    # Ties on score break on the unordered pair of serializations, so swapping
    # the two graphs replays the same choices.
    def key(c):
        score, x, y = c
        a, b = x.n3(), y.n3()
        return (-score, (a, b) if a <= b else (b, a), (a, b))

    chosen = []
    for score, x, y in sorted(candidates, key=key):
        if x in used1 or y in used2:
            continue
        used1.add(x)
        used2.add(y)
        chosen.append((score, x, y))
    return chosen


class SimilarityEngine:
    """Scores words, components, triples and entity graphs under one config.

    ``vectorizer`` may be None, in which case every word is out of vocabulary
    and only exact string matches count. ``numeric_ranges`` maps predicate
    IRIs to the spread used by range-scaled numeric comparison; when omitted
    it is derived from the two graphs being compared. ``n_components`` is the
    divisor of the per-triple weighted sum.
    """

    def __init__(
        self,
        vectorizer: Optional[Vectorizer],
        config: Optional[SimilarityConfig] = None,
        *,
        numeric_ranges: Optional[Mapping[str, float]] = None,
        n_components: int = 3,
    ):
        if n_components <= 0:
            raise ValueError("n_components must be positive")
        self.vectorizer = vectorizer
        self.config = config or DEFAULT_CONFIG
        self.numeric_ranges = dict(numeric_ranges) if numeric_ranges is not None else None
        self.n_components = n_components
        self._word_cache: dict[tuple[str, str], float] = {}
        self._qual_cache: dict[tuple[tuple[str, ...], tuple[str, ...]], float] = {}

    # words and components

    def word_pair(self, w1: str, w2: str) -> float:
        if w1 == w2:
            return 1.0
        key = (w1, w2) if w1 < w2 else (w2, w1)
        cached = self._word_cache.get(key)
        if cached is not None:
            return cached
        v1 = v2 = None
        if self.vectorizer is not None:
            v1 = self.vectorizer.lookup(w1)
            v2 = self.vectorizer.lookup(w2)
        if v1 is None or v2 is None:
            sim = 0.0
        else:
            sim = cosine(v1, v2)
            if self.config.clamp_negative_cosine:
                sim = min(1.0, max(0.0, sim))
        self._word_cache[key] = sim
        return sim

    def word_to_words(self, w: str, words: Sequence[str]) -> float:
        if not words:
            raise ValueError("cannot match a word against an empty word list")
        return max(self.word_pair(w, other) for other in words)

    def qualitative(self, q1: Sequence[str], q2: Sequence[str]) -> float:
        q1, q2 = tuple(q1), tuple(q2)
        if not q1 or not q2:
            return 1.0 if not q1 and not q2 else 0.0
        key = (q1, q2)
        cached = self._qual_cache.get(key)
        if cached is not None:
            return cached
        forward = sum(self.word_to_words(w, q2) for w in q1)
        backward = sum(self.word_to_words(w, q1) for w in q2)
        sim = (forward + backward) / (len(q1) + len(q2))
        self._qual_cache[key] = sim
        return sim

    @staticmethod
    def quantitative(o1: Sequence[float], o2: Sequence[float]) -> float:
        if len(o1) != len(o2):
            raise LengthMismatch(f"numeric objects differ in length: {len(o1)} vs {len(o2)}")
        dist = math.sqrt(sum((a - b) ** 2 for a, b in zip(o1, o2)))
        return 1.0 / (1.0 + dist)

    # triples

    def _numeric(self, t: Triple, ranges: Optional[Mapping[str, float]]) -> float:
        value = numeric_value(t.object)
        if self.config.numeric_normalization is NumericMode.RANGE and ranges:
            spread = ranges.get(t.predicate.value, 0.0)
            if spread > 0:
                value = value / spread
        return value

    def _weighted(self, s: float, p: float, o: float) -> float:
        cfg = self.config
        return (cfg.alpha * s + cfg.beta * p + cfg.gamma * o) / self.n_components

    def triple_qualitative(self, a1: Triple, a2: Triple) -> Score:
        if classify_object(a1.object) is not QUAL or classify_object(a2.object) is not QUAL:
            raise KindMismatch("both objects must be qualitative")
        s = self.qualitative(tokenize(a1.subject), tokenize(a2.subject))
        p = self.qualitative(tokenize(a1.predicate), tokenize(a2.predicate))
        o = self.qualitative(tokenize(a1.object), tokenize(a2.object))
        return Score(self._weighted(s, p, o), {"subject": s, "predicate": p, "object": o})

    def triple_quantitative(
        self, a1: Triple, a2: Triple, ranges: Optional[Mapping[str, float]] = None
    ) -> Score:
        if classify_object(a1.object) is not QUANT or classify_object(a2.object) is not QUANT:
            raise KindMismatch("both objects must be quantitative")
        if ranges is None:
            ranges = self.numeric_ranges
        s = self.qualitative(tokenize(a1.subject), tokenize(a2.subject))
        p = self.qualitative(tokenize(a1.predicate), tokenize(a2.predicate))
        o = self.quantitative((self._numeric(a1, ranges),), (self._numeric(a2, ranges),))
        return Score(self._weighted(s, p, o), {"subject": s, "predicate": p, "object": o})

    def triple(self, a1: Triple, a2: Triple, ranges: Optional[Mapping[str, float]] = None) -> Score:
        kind = classify_object(a1.object)
        if kind is not classify_object(a2.object):
            raise KindMismatch("objects differ in kind")
        if kind is QUAL:
            return self.triple_qualitative(a1, a2)
        return self.triple_quantitative(a1, a2, ranges)

    # graphs

    def _ranges_for(self, g1: EntityGraph, g2: EntityGraph) -> Optional[Mapping[str, float]]:
        if self.numeric_ranges is not None:
            return self.numeric_ranges
        if self.config.numeric_normalization is NumericMode.RANGE:
            return compute_numeric_ranges((g1, g2))
        return None

    def align(
        self, g1: EntityGraph, g2: EntityGraph, ranges: Optional[Mapping[str, float]] = None
    ) -> Alignment:
        if ranges is None:
            ranges = self._ranges_for(g1, g2)
        pairs: list[Pair] = []
        unmatched: list[Unmatched] = []
        for kind, side1, side2 in ((QUAL, g1.qualitative, g2.qualitative), (QUANT, g1.quantitative, g2.quantitative)):
            by_pred2: dict[IRI, list[Triple]] = {}
            for y in side2:
                by_pred2.setdefault(y.predicate, []).append(y)
            candidates = [
                (self.triple(x, y, ranges).value, x, y)
                for x in side1
                for y in by_pred2.get(x.predicate, ())
            ]
            used1: set = set()
            used2: set = set()
            chosen = _greedy(candidates, used1, used2)
            if self.config.alignment is AlignMode.BEST_MATCH:
                rest1 = [x for x in side1 if x not in used1]
                rest2 = [y for y in side2 if y not in used2]
                leftovers = [(self.triple(x, y, ranges).value, x, y) for x in rest1 for y in rest2]
                chosen += _greedy(leftovers, used1, used2)
            pairs.extend(Pair(x, y, kind, score) for score, x, y in chosen)
            unmatched.extend(Unmatched(x, 1, kind) for x in side1 if x not in used1)
            unmatched.extend(Unmatched(y, 2, kind) for y in side2 if y not in used2)
        return Alignment(tuple(pairs), tuple(unmatched))

    def graphs(self, g1: EntityGraph, g2: EntityGraph) -> Score:
        if not g1.triples and not g2.triples:
            raise BothEmpty("both entity graphs are empty")
        alignment = self.align(g1, g2)
        terms = {}
        counts = {}
        for kind in (QUAL, QUANT):
            scores = [p.score for p in alignment.pairs if p.kind is kind]
            n = len(scores) + sum(1 for u in alignment.unmatched if u.kind is kind)
            terms[kind] = math.fsum(scores) / n if n else 0.0
            counts[kind] = n
        L, H = counts[QUAL], counts[QUANT]
        if self.config.combine is CombineMode.LITERAL:
            value = terms[QUAL] + terms[QUANT]
        else:
            value = (L * terms[QUAL] + H * terms[QUANT]) / (L + H)
        return Score(
            value,
            {
                "qualitative": terms[QUAL],
                "quantitative": terms[QUANT],
                "L": L,
                "H": H,
                "pairs": len(alignment.pairs),
                "unmatched": len(alignment.unmatched),
            },
        )

    def identity_value(self, g: EntityGraph) -> float:
        """Score of a graph against itself under unit weights."""
        if self.config.combine is CombineMode.NORMALIZED:
            return 1.0
        return float(bool(g.qualitative)) + float(bool(g.quantitative))


# function-style entry points


def sim_word_pair(w1: str, w2: str, vec: Optional[Vectorizer], cfg: SimilarityConfig = DEFAULT_CONFIG) -> float:
    return SimilarityEngine(vec, cfg).word_pair(w1, w2)


def sim_word_to_qspo(
    w: str, qspo: Sequence[str], vec: Optional[Vectorizer], cfg: SimilarityConfig = DEFAULT_CONFIG
) -> float:
    return SimilarityEngine(vec, cfg).word_to_words(w, qspo)


def sim_qualitative(
    q1: Sequence[str], q2: Sequence[str], vec: Optional[Vectorizer], cfg: SimilarityConfig = DEFAULT_CONFIG
) -> float:
    return SimilarityEngine(vec, cfg).qualitative(q1, q2)


def sim_quantitative(
    o1: Sequence[float],
    o2: Sequence[float],
    cfg: SimilarityConfig = DEFAULT_CONFIG,
    ranges: Optional[Sequence[float]] = None,
) -> float:
    """Numeric similarity; ``ranges`` gives per-component spreads for range scaling."""
    if len(o1) != len(o2):
        raise LengthMismatch(f"numeric objects differ in length: {len(o1)} vs {len(o2)}")
    if cfg.numeric_normalization is NumericMode.RANGE and ranges is not None:
        if len(ranges) != len(o1):
            raise LengthMismatch("one range per component is required")
        o1 = [a / r if r > 0 else a for a, r in zip(o1, ranges)]
        o2 = [b / r if r > 0 else b for b, r in zip(o2, ranges)]
    return SimilarityEngine.quantitative(o1, o2)


def sim_triple_qualitative(
    a1: Triple, a2: Triple, vec: Optional[Vectorizer], cfg: SimilarityConfig = DEFAULT_CONFIG
) -> Score:
    return SimilarityEngine(vec, cfg).triple_qualitative(a1, a2)


def sim_triple_quantitative(
    a1: Triple,
    a2: Triple,
    vec: Optional[Vectorizer],
    cfg: SimilarityConfig = DEFAULT_CONFIG,
    ranges: Optional[Mapping[str, float]] = None,
) -> Score:
    return SimilarityEngine(vec, cfg, numeric_ranges=ranges).triple_quantitative(a1, a2)


def align_triples(
    g1: EntityGraph, g2: EntityGraph, vec: Optional[Vectorizer], cfg: SimilarityConfig = DEFAULT_CONFIG
) -> Alignment:
    return SimilarityEngine(vec, cfg).align(g1, g2)


def sim_graphs(
    g1: EntityGraph,
    g2: EntityGraph,
    vec: Optional[Vectorizer],
    cfg: SimilarityConfig = DEFAULT_CONFIG,
    ranges: Optional[Mapping[str, float]] = None,
) -> Score:
    return SimilarityEngine(vec, cfg, numeric_ranges=ranges).graphs(g1, g2)
