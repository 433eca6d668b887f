"""Exception types raised across the package."""


class TripleSimError(Exception):
    pass


class MalformedLine(TripleSimError, ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class FormatError(TripleSimError, ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DimensionMismatch(FormatError):
    pass


class EmptyCorpus(TripleSimError, ValueError):
    pass


class EmptyLexicon(TripleSimError, ValueError):
    pass


class LengthMismatch(TripleSimError, ValueError):
    pass


class KindMismatch(TripleSimError, ValueError):
    pass


class BothEmpty(TripleSimError, ValueError):
    pass


class ShapeMismatch(TripleSimError, ValueError):
    pass


class UnknownEntity(TripleSimError, KeyError):
    def __init__(self, entity_id: str):
        super().__init__(entity_id)
        self.entity_id = entity_id

    def __str__(self) -> str:
        return f"unknown entity: {self.entity_id}"


class PairError(TripleSimError):
    """Wraps a failure while scoring one entity pair."""

    def __init__(self, id1: str, id2: str, cause: Exception):
        super().__init__(f"scoring ({id1}, {id2}) failed: {cause}")
        self.id1 = id1
        self.id2 = id2
        self.cause = cause
