"""Exception types raised across the package."""


class ValidationError(ValueError):
    """Input object violates one of its structural invariants.

    ``position`` is the 1-based index of the first offending element when the
    violation can be localized (a prefix of a word or path), else ``None``.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class VerificationFailed(RuntimeError):
    """A derived formula disagrees with brute force."""

    def __init__(self, message: str, n: int | None = None, expected=None, got=None):
        super().__init__(message)
        self.n = n
        self.expected = expected
        self.got = got


class CalibrationUnstable(RuntimeError):
    """Prefix classes differ between calibration sizes."""


class ResourceLimitError(RuntimeError):
    """A configured enumeration or memory cap was exceeded."""


class IntegralityError(ArithmeticError):
    """A count-valued quantity evaluated to a non-integer."""


class InconsistentSystem(ValueError):
    """An exact linear fit has no solution."""


class Underdetermined(ValueError):
    """An exact linear fit has more than one solution."""
