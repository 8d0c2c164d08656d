"""Exception types shared across the package."""


class TrifactorError(Exception):
    """Base class for all package errors."""


class VertexRangeError(TrifactorError):
    """A vertex index is outside 0..n-1 or refers to a deleted vertex."""


class LoopEdgeError(TrifactorError):
    """An edge or arc with both ends at the same vertex."""


class MultiplicityError(TrifactorError):
    """An edge multiplicity outside {1, 2}."""


class DuplicatePairError(TrifactorError):
    """The same vertex pair (or ordered arc) listed twice."""


class DuplicateVerticesError(TrifactorError):
    """A vertex triple with repeated entries."""


class PreconditionError(TrifactorError):
    """An operation's stated precondition does not hold."""


class NotRealizableError(TrifactorError):
    """Internal assertion: a guaranteed construction failed to materialize.

    Seeing this exception means a bug, never a property of the input.
    """


class NotDivisibleBy3Error(TrifactorError):
    """The (live) vertex count is not divisible by 3 where required."""


class BadSplitError(TrifactorError):
    """Requested cyclic/transitive counts are not a legal split."""


class BadParameterError(TrifactorError):
    """A generator parameter outside its legal range."""


class BadPartitionError(TrifactorError):
    """A vertex bipartition violating the procedure's size constraints."""


class InstanceTooLargeError(TrifactorError):
    """Instance exceeds the exhaustive-search size cap."""


class WrongLengthError(TrifactorError):
    """A tuple whose length does not match the requested structure."""


class OverlapError(TrifactorError):
    """A candidate structure overlaps the set it is supposed to avoid."""


class ParseError(TrifactorError):
    """Malformed graph text. Carries 1-based line and column."""

    def __init__(self, msg, line, col=1):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


class ParseSyntaxError(ParseError):
    """A line that does not match any known record shape."""


class ParseSemanticsError(ParseError):
    """A well-formed record with illegal content (loop, range, multiplicity)."""


class KindMismatchError(ParseError):
    """An edge record in a digraph body, or an arc record in a multigraph body."""
