"""Exception hierarchy shared by every ckdim module."""

from __future__ import annotations


class CkdimError(Exception):
    """Base class for all engine errors."""


class InvalidParameterError(CkdimError, ValueError):
    """A numeric parameter is outside its documented domain."""


class InvalidShapeError(InvalidParameterError):
    """A curve shape is not hyperbolic."""


class InvalidScenarioError(InvalidParameterError):
    """A scenario violates its invariants."""


class FeasibilityError(CkdimError):
    """The requested oracle computation exceeds the declared envelope."""

    def __init__(self, message: str, max_supported: int | None = None):
        super().__init__(message)
        self.max_supported = max_supported


class ModeUnavailableError(CkdimError):
    """Crossover mode was requested without the concrete constants it needs."""


class AmbiguousDominanceError(CkdimError):
    """Two growth terms tie at the top and their combined sign is unknown."""


class ContractError(CkdimError, AssertionError):
    """An internal invariant failed; indicates a bug, not bad input."""


class CacheMismatchError(CkdimError):
    """A cached dimension series disagrees with recomputation."""


class ScenarioFileError(InvalidParameterError):
    """Malformed scenario file, with a line/column position."""

    def __init__(self, message: str, line: int, column: int, path: str = "<scenario>"):
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.path = path
