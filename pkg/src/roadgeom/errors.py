"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: configuration problems exit 1, data
problems exit 2, violated internal guarantees exit 3.
"""


class RoadGeomError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(RoadGeomError):
    """Invalid configuration or parameter combination."""


class ParseError(RoadGeomError):
    """Malformed input file; message carries file name and line number."""


class ValidationError(RoadGeomError):
    """Structurally invalid data (dangling references, bad counts, ...)."""


class DegeneracyError(RoadGeomError):
    """Geometric degeneracy the algorithms do not support (named in message)."""


class InvariantViolation(RoadGeomError):
    """A guaranteed property failed to hold; indicates a bug or bad input."""


class SeparatorFailure(RoadGeomError):
    """No balanced separator found within the retry budget.

    Carries the best candidate seen so the caller can inspect how close
    the search came.
    """

    def __init__(self, message, best_candidate=None):
        super().__init__(message)
        self.best_candidate = best_candidate
