"""Exception types shared across the package."""


class BahnlabError(Exception):
    """Base class for every error raised by bahnlab."""


class SequenceError(BahnlabError, ValueError):
    """A request sequence violates an ordering or sign rule.

    ``index`` is the position of the first offending request.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"{type(self).__name__}({index})")


class DuplicateTime(SequenceError):
    pass


class NonMonotonic(SequenceError):
    pass


class NegativeValue(SequenceError):
    pass


class OverlappingCards(BahnlabError, ValueError):
    """Two purchases in a schedule are less than one validity period apart."""


class NonDayGranular(BahnlabError, ValueError):
    """A request time is not an integer day."""


class TooLarge(BahnlabError, ValueError):
    """Instance exceeds the size the exhaustive oracle accepts."""


class ZeroOpt(BahnlabError, ZeroDivisionError):
    """The optimal offline cost is zero, so no ratio exists."""


class RegimeMismatch(BahnlabError, ValueError):
    """Tight-instance parameters fall outside the construction's range."""


class Unclassifiable(BahnlabError, RuntimeError):
    """An interval matched none of the six patterns (a classifier bug)."""


class ConfigError(BahnlabError, ValueError):
    """Bad experiment or CLI configuration; ``field`` names the culprit."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"field '{field}': {message}")
