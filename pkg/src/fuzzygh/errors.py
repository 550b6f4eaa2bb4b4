"""Exception types shared across the library."""


class FuzzyMetricError(Exception):
    """Base class for all library errors."""


class DomainError(FuzzyMetricError, ValueError):
    """An argument lies outside the operation's domain."""


class ConstructionError(FuzzyMetricError, ValueError):
    """Inputs cannot form a valid object (a metric axiom or invariant fails)."""


class HypothesisError(FuzzyMetricError):
    """A construction hypothesis failed; ``which`` identifies it, ``where`` locates it."""

    def __init__(self, which: str, where=None, detail: str = ""):
        self.which = which
        self.where = where
        self.detail = detail
        msg = f"hypothesis {which} failed"
        if where is not None:
            msg += f" at {where}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SizeLimitError(FuzzyMetricError):
    """Problem size exceeds the configured exhaustive-search limit."""
