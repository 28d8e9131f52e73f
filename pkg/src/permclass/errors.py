"""Exception types shared across the package.

The CLI maps these onto exit codes: parse/usage problems exit 2,
resource refusals exit 3.
"""


class PermclassError(Exception):
    """Base class for errors raised by this package."""


class InvalidWordError(PermclassError, ValueError):
    """A sequence is not a valid word/permutation (duplicates, bad letters)."""


class PartitionParseError(PermclassError, ValueError):
    """Replacement-partition text could not be parsed."""


class RangeError(PermclassError, ValueError):
    """A formula was queried outside its validity range."""


class ResourceLimitError(PermclassError, RuntimeError):
    """An enumeration would exceed the configured memory/size bounds."""
