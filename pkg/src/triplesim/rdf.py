"""RDF terms, triples, entity graphs, and an N-Triples subset reader/writer."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from triplesim.errors import MalformedLine, UnknownEntity

XSD = "http://www.w3.org/2001/XMLSchema#"

NUMERIC_DATATYPES = frozenset(
    XSD + name
    for name in (
        "integer",
        "decimal",
        "double",
        "float",
        "long",
        "int",
        "short",
        "byte",
        "nonNegativeInteger",
        "nonPositiveInteger",
        "negativeInteger",
        "positiveInteger",
        "unsignedLong",
        "unsignedInt",
        "unsignedShort",
        "unsignedByte",
    )
)

_PLAIN_NUMBER = re.compile(r"[+-]?[0-9]+(?:\.[0-9]+)?")
_XSD_NUMBER = re.compile(r"\s*[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?\s*")
_WHITESPACE = re.compile(r"\s")
_BNODE_LABEL = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?")
_LANG_TAG = re.compile(r"[A-Za-z]+(?:-[A-Za-z0-9]+)*")


@dataclass(frozen=True)
class IRI:
    value: str

    def __post_init__(self):
        if not self.value or _WHITESPACE.search(self.value) or "<" in self.value or ">" in self.value:
            raise ValueError(f"invalid IRI: {self.value!r}")

    def n3(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not _BNODE_LABEL.fullmatch(self.label):
            raise ValueError(f"invalid blank node label: {self.label!r}")

    def n3(self) -> str:
        return f"_:{self.label}"


_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t"}


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: Optional[str] = None
    language: Optional[str] = None

    def __post_init__(self):
        if self.datatype is not None and self.language is not None:
            raise ValueError("a literal has either a datatype or a language tag, not both")
        if self.datatype is not None:
            IRI(self.datatype)
        if self.language is not None and not _LANG_TAG.fullmatch(self.language):
            raise ValueError(f"invalid language tag: {self.language!r}")

    def n3(self) -> str:
        body = "".join(_ESCAPES.get(ch, ch) for ch in self.lexical)
        if self.datatype is not None:
            return f'"{body}"^^<{self.datatype}>'
        if self.language is not None:
            return f'"{body}"@{self.language}'
        return f'"{body}"'


Term = Union[IRI, BlankNode, Literal]


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: IRI
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise ValueError("subject cannot be a literal")
        if not isinstance(self.predicate, IRI):
            raise ValueError("predicate must be an IRI")

    def n3(self) -> str:
        return f"{self.subject.n3()} {self.predicate.n3()} {self.object.n3()} ."

    def sort_key(self) -> tuple[str, str, str]:
        return (self.subject.n3(), self.predicate.n3(), self.object.n3())


class ObjectKind(enum.Enum):
    QUALITATIVE = "qualitative"
    QUANTITATIVE = "quantitative"


def classify_object(obj: Term) -> ObjectKind:
    """Route an object to numeric or textual comparison.

    Typed literals count as numeric when their datatype is an XSD numeric type
    and the lexical form is a decimal or exponent numeral (INF/NaN excluded);
    literals without a datatype count as numeric when the whole lexical form is
    a plain dot-decimal number.
    """
    if isinstance(obj, Literal):
        if obj.datatype is not None:
            if (
                obj.datatype in NUMERIC_DATATYPES
                and _XSD_NUMBER.fullmatch(obj.lexical)
                and math.isfinite(float(obj.lexical))
            ):
                return ObjectKind.QUANTITATIVE
        elif _PLAIN_NUMBER.fullmatch(obj.lexical) and math.isfinite(float(obj.lexical)):
            return ObjectKind.QUANTITATIVE
    return ObjectKind.QUALITATIVE


def numeric_value(obj: Term) -> float:
    if classify_object(obj) is not ObjectKind.QUANTITATIVE:
        raise ValueError(f"not a numeric object: {obj.n3()}")
    return float(obj.lexical.strip())


def term_key(term: Term) -> str:
    """Entity identifier for a subject term: the IRI itself or ``_:label``."""
    if isinstance(term, IRI):
        return term.value
    return term.n3()


@dataclass(frozen=True)
class EntityGraph:
    """Flat description of one entity: every triple shares the same subject."""

    subject: Term
    triples: tuple[Triple, ...]
    qualitative: tuple[Triple, ...] = field(init=False, repr=False, compare=False)
    quantitative: tuple[Triple, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for t in self.triples:
            if t.subject != self.subject:
                raise ValueError(
                    f"triple subject {t.subject.n3()} differs from entity {self.subject.n3()}"
                )
        canonical = tuple(sorted(set(self.triples), key=Triple.sort_key))
        object.__setattr__(self, "triples", canonical)
        qual, quant = [], []
        for t in canonical:
            if classify_object(t.object) is ObjectKind.QUANTITATIVE:
                quant.append(t)
            else:
                qual.append(t)
        object.__setattr__(self, "qualitative", tuple(qual))
        object.__setattr__(self, "quantitative", tuple(quant))

    @property
    def id(self) -> str:
        return term_key(self.subject)

    def __len__(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class Dataset:
    entities: tuple[EntityGraph, ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.entities, key=lambda g: g.id))
        ids = [g.id for g in ordered]
        if len(set(ids)) != len(ids):
            raise ValueError("entity ids must be unique")
        object.__setattr__(self, "entities", ordered)
        object.__setattr__(self, "_index", {g.id: g for g in ordered})

    @property
    def ids(self) -> list[str]:
        return [g.id for g in self.entities]

    def __len__(self) -> int:
        return len(self.entities)

    def __iter__(self) -> Iterator[EntityGraph]:
        return iter(self.entities)

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self._index

    def get(self, entity_id: str) -> EntityGraph:
        try:
            return self._index[entity_id]
        except KeyError:
            raise UnknownEntity(entity_id) from None

    def triples(self) -> list[Triple]:
        return [t for g in self.entities for t in g.triples]


def group_by_subject(triples: Iterable[Triple]) -> Dataset:
    groups: dict[Term, list[Triple]] = {}
    for t in triples:
        groups.setdefault(t.subject, []).append(t)
    return Dataset(tuple(EntityGraph(s, tuple(ts)) for s, ts in groups.items()))


# N-Triples subset

_UNESCAPE = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r", "'": "'", "b": "\b", "f": "\f"}


class _LineReader:
    def __init__(self, text: str, lineno: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def fail(self, reason: str) -> MalformedLine:
        return MalformedLine(self.lineno, reason)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def term(self) -> Term:
        self.skip_ws()
        if self.at_end():
            raise self.fail("unexpected end of line")
        ch = self.text[self.pos]
        if ch == "<":
            return IRI(self.iri())
        if self.text.startswith("_:", self.pos):
            m = _BNODE_LABEL.match(self.text, self.pos + 2)
            if not m:
                raise self.fail("invalid blank node label")
            self.pos = m.end()
            return BlankNode(m.group())
        if ch == '"':
            return self.literal()
        raise self.fail(f"unexpected character {ch!r}")

    def iri(self) -> str:
        end = self.text.find(">", self.pos + 1)
        if end < 0:
            raise self.fail("unbalanced angle bracket")
        value = self.text[self.pos + 1 : end]
        if not value or _WHITESPACE.search(value) or "<" in value:
            raise self.fail(f"invalid IRI <{value}>")
        self.pos = end + 1
        return value

    def literal(self) -> Literal:
        out = []
        i = self.pos + 1
        text = self.text
        while True:
            if i >= len(text):
                raise self.fail("unbalanced quotes")
            ch = text[i]
            if ch == '"':
                break
            if ch == "\\":
                if i + 1 >= len(text):
                    raise self.fail("unbalanced quotes")
                esc = text[i + 1]
                if esc in _UNESCAPE:
                    out.append(_UNESCAPE[esc])
                    i += 2
                elif esc in "uU":
                    width = 4 if esc == "u" else 8
                    digits = text[i + 2 : i + 2 + width]
                    if len(digits) != width or not all(c in "0123456789abcdefABCDEF" for c in digits):
                        raise self.fail("invalid unicode escape")
                    out.append(chr(int(digits, 16)))
                    i += 2 + width
                else:
                    raise self.fail(f"invalid escape \\{esc}")
                continue
            out.append(ch)
            i += 1
        self.pos = i + 1
        lexical = "".join(out)
        if text.startswith("^^", self.pos):
            self.pos += 2
            if self.at_end() or text[self.pos] != "<":
                raise self.fail("datatype must be an IRI")
            return Literal(lexical, datatype=self.iri())
        if text.startswith("@", self.pos):
            m = _LANG_TAG.match(text, self.pos + 1)
            if not m:
                raise self.fail("invalid language tag")
            self.pos = m.end()
            return Literal(lexical, language=m.group())
        return Literal(lexical)


def _parse_line(line: str, lineno: int) -> Triple:
    reader = _LineReader(line, lineno)
    subject = reader.term()
    if isinstance(subject, Literal):
        raise reader.fail("literal in subject position")
    predicate = reader.term()
    if not isinstance(predicate, IRI):
        raise reader.fail("predicate must be an IRI")
    obj = reader.term()
    reader.skip_ws()
    if reader.at_end() or line[reader.pos] != ".":
        if reader.at_end():
            raise reader.fail("missing terminator")
        raise reader.fail(f"expected '.', found {line[reader.pos]!r}")
    reader.pos += 1
    reader.skip_ws()
    if not reader.at_end() and line[reader.pos] != "#":
        raise reader.fail("trailing content after '.'")
    return Triple(subject, predicate, obj)


def parse_ntriples(text: Union[str, bytes]) -> list[Triple]:
    """Parse an N-Triples document into triples, in file order."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    triples = []
    # str.splitlines would also break on U+2028 etc., which may sit inside literals
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").strip(" \t")
        if not line or line.startswith("#"):
            continue
        triples.append(_parse_line(line, lineno))
    return triples


def serialize_ntriples(triples: Iterable[Triple]) -> str:
    """Canonical form: deduplicated, sorted, one triple per line."""
    lines = [t.n3() for t in sorted(set(triples), key=Triple.sort_key)]
    return "".join(line + "\n" for line in lines)
