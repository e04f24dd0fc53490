"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise the
most specific type that applies: ParseError for malformed input text,
CapExceeded when a configured resource cap stops a computation, DomainError
for structurally invalid arguments (wrong field, non-monic where monic is
required, and so on).
"""


class SmarpolyError(Exception):
    """Base class for all package-specific errors."""


class ParseError(SmarpolyError, ValueError):
    """Input text does not match the expected grammar."""


class CapExceeded(SmarpolyError, RuntimeError):
    """A configured size/iteration cap was hit before the answer."""


class DomainError(SmarpolyError, ValueError):
    """Arguments are outside the domain of the operation."""


class FieldMismatch(DomainError):
    """Operands belong to different field specs."""
