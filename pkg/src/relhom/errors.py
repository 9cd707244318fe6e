"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: InputError -> 2,
ResourceLimitError -> 3.
"""


class RelhomError(Exception):
    """Base class for package-level errors."""


class InputError(RelhomError):
    """Malformed, inconsistent or missing input data."""


class ResourceLimitError(RelhomError):
    """A construction would exceed the configured simplex/candidate cap."""
