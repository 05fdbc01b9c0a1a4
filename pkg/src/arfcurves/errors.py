"""Exception hierarchy.

Every library error carries a ``category`` string; the CLI reports it
verbatim, so each category maps to exactly one CLI error category.
"""

from __future__ import annotations


class ArfError(Exception):
    """Base class for all domain errors raised by :mod:`arfcurves`."""

    category = "domain-error"


class InputError(ArfError, ValueError):
    category = "malformed-input"


class ParseError(InputError):
    """Series text that does not match the grammar."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class InvalidArgumentError(ArfError, ValueError):
    """Well-formed input that violates an operation's precondition."""

    category = "invalid-argument"


class FieldMismatchError(ArfError, TypeError):
    category = "field-mismatch"


class SeriesDivisionError(ArfError, ZeroDivisionError):
    """Division by a zero series or by a series of larger order."""

    category = "division"


class PrecisionError(ArfError, ArithmeticError):
    """The working precision is too small to certify the answer."""

    category = "insufficient-precision"

    def __init__(self, message: str, precision: int | None = None):
        self.precision = precision
        super().__init__(message)


class NotNormalizedError(ArfError, ValueError):
    """Order semigroup has gcd > 1; compress exponents first."""

    category = "not-normalized"

    def __init__(self, message: str, nu: int):
        self.nu = nu
        super().__init__(message)


class NotArfError(ArfError, ValueError):
    category = "not-arf"


class IndeterminateMembershipError(ArfError):
    """Membership cannot be decided at the available precision."""

    category = "indeterminate-membership"


class ResourceGuardError(ArfError, RuntimeError):
    category = "resource-guard"


class StepLimitError(ArfError, RuntimeError):
    """Blow-up iteration did not reach a smooth branch within max_steps."""

    category = "max-steps"


CATEGORIES = tuple(
    cls.category
    for cls in (
        InputError,
        InvalidArgumentError,
        FieldMismatchError,
        SeriesDivisionError,
        PrecisionError,
        NotNormalizedError,
        NotArfError,
        IndeterminateMembershipError,
        ResourceGuardError,
        StepLimitError,
    )
)
