"""Turn RDF terms into lowercase word lists."""

from __future__ import annotations

from functools import lru_cache

from triplesim.rdf import IRI, BlankNode, Literal, Term


def local_name(iri: str) -> str:
    """Fragment after the last ``#``, else the path segment after the last ``/``."""
    for sep in ("#", "/"):
        idx = iri.rfind(sep)
        if idx >= 0:
            return iri[idx + 1 :]
    return iri


def _char_class(ch: str) -> int:
    # 0: separator, 1: lowercase/uncased letter, 2: uppercase letter, 3: digit
    if ch.isalpha():
        return 2 if ch.isupper() else 1
    if ch.isalnum():
        return 3
    return 0


@lru_cache(maxsize=65536)
def split_words(text: str) -> tuple[str, ...]:
    """Split on non-alphanumerics, camelCase humps, and letter/digit boundaries."""
    words = []
    current: list[str] = []
    prev = 0
    for ch in text:
        cls = _char_class(ch)
        if cls == 0:
            if current:
                words.append("".join(current))
                current = []
            prev = 0
            continue
        boundary = (prev == 1 and cls == 2) or ((prev == 3) != (cls == 3))
        if current and boundary:
            words.append("".join(current))
            current = []
        current.append(ch)
        prev = cls
    if current:
        words.append("".join(current))
    return tuple(w.lower() for w in words if w)


def tokenize(term: Term) -> tuple[str, ...]:
    if isinstance(term, IRI):
        return split_words(local_name(term.value))
    if isinstance(term, BlankNode):
        return split_words(local_name(term.label))
    if isinstance(term, Literal):
        return split_words(term.lexical)
    raise TypeError(f"not an RDF term: {term!r}")
