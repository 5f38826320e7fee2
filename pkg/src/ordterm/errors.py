"""Exception types shared across the package."""

from __future__ import annotations


class OrdtermError(Exception):
    """Base class for every error raised by this package."""


class BudgetExceeded(OrdtermError):
    """An evaluation ran past its configured budget.

    ``steps`` records how many evaluator events were consumed before the
    budget tripped.  For counting evaluations (Cichon values, search
    lengths) ``partial`` is a sound lower bound on the true result: the
    quantity had already reached at least this value when evaluation
    stopped.
    """

    def __init__(self, message: str, *, steps: int | None = None, partial: int | None = None):
        super().__init__(message)
        self.steps = steps
        self.partial = partial


class PreconditionViolated(OrdtermError):
    """An operation was called outside its stated precondition."""


class NotALimit(OrdtermError):
    """Fundamental sequences exist only for limit ordinals."""


class ZeroHasNoPredecessor(OrdtermError):
    """P_x(0) is undefined."""


class OrdinalParseError(OrdtermError):
    """Ordinal text did not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonCanonicalWarning(UserWarning):
    """Parsed ordinal text was not in strict normal form; it was re-normalized."""


class ShapeMismatch(OrdtermError):
    """An element does not conform to the space it was used with."""


class NotAWellOrder(OrdtermError):
    """The requested operation needs a well order (or a known maximal order type)."""


class NondeterminismEncountered(OrdtermError):
    """Two transitions were enabled in deterministic-run mode."""


class IndexTooSmall(OrdtermError):
    """The fast-growing class index fell below the defined range (index < 3).

    The computed index is still attached so callers can inspect it.
    """

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class ProgramParseError(OrdtermError):
    """Program DSL text did not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
