"""Exception taxonomy shared across the package."""


class OrdpatError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OrdpatError):
    """An argument is outside the mathematical domain of the operation."""


class ResourceCeilingError(OrdpatError):
    """A brute-force request exceeds the configured enumeration ceiling."""


class OrderError(OrdpatError):
    """A series coefficient was requested beyond the guaranteed valid order."""


class DivisibilityError(OrdpatError):
    """Monomial division hit a nonzero low-order coefficient.

    This is a correctness assertion: when one of the closed forms is
    transcribed wrongly, the numerator stops being divisible by the
    monomial factor of its denominator and the expansion must abort
    rather than silently truncate.
    """


class VerificationError(OrdpatError):
    """Two computation routes that must agree produced different values."""


class CacheError(OrdpatError):
    """The persistent result cache is busy, malformed, or inconsistent."""
