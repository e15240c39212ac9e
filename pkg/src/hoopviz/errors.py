"""Exception hierarchy shared across the package."""

from __future__ import annotations


class HoopvizError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HoopvizError):
    """Input document (items or zones format) could not be parsed."""


class EmptyTableError(HoopvizError):
    """No item in the membership table has any interest."""


class DuplicateItemIdError(HoopvizError):
    """Two items in the membership table share an id."""


class InvalidTableError(HoopvizError):
    """Membership table violates a structural invariant."""


class InvalidSystemError(HoopvizError):
    """Set system violates one or more invariants.

    Carries the full violation report in ``violations``.
    """

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class DimensionMismatchError(HoopvizError):
    """Arrangement does not match the system's set/zone dimensions."""


class ThresholdExceededError(HoopvizError):
    """Instance too large for exact search; use the heuristic optimizer."""


class InvalidSetError(HoopvizError):
    """Set index out of range."""


class InvalidCommandError(HoopvizError):
    """Interaction command is malformed."""


class PaletteExhaustedError(HoopvizError):
    """More sets than palette colors."""
