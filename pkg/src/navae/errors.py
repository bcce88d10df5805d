"""Semantic exception hierarchy.

Public functions never raise bare ``ValueError``; every failure mode maps to
one of the classes below so that callers (and the CLI exit-code mapping) can
distinguish configuration mistakes from data problems.
"""


class NavaeError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(NavaeError, ValueError):
    """A numeric argument is outside its mathematical domain."""


class ConfigError(NavaeError):
    """A configuration value or combination of options is invalid."""


class DataError(NavaeError):
    """Input data is malformed, non-finite, or otherwise unusable."""


class InsufficientDataError(DataError):
    """The sample is too small for the requested operation."""


class DegenerateSampleError(DataError):
    """The sample has zero variance where positive variance is required."""


class FeasibilityError(NavaeError):
    """A feasibility region is empty or a tuning value is infeasible."""


class ProviderError(NavaeError):
    """A user-supplied bound provider returned an invalid value."""


class NotPositiveDefiniteError(NavaeError):
    """A matrix that must be (semi)definite is not."""


class UnboundedScanError(NavaeError):
    """An upward scan exceeded its hard cap without terminating."""


class InvariantError(NavaeError):
    """An internal invariant that should hold by construction was violated."""
