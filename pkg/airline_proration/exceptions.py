"""
Error hierarchy.

Validation problems found in a problem file are reported as data
(see ``model.validate``); the exceptions below signal operations that
cannot proceed.
"""


class ProrationError(Exception):
    """Base class for every error raised by the package."""


class InputError(ProrationError, ValueError):
    """Malformed input data or reference to an unknown element."""


class PreconditionError(InputError):
    """An operation was called outside its domain."""


class DegenerateInputError(InputError):
    """Input that admits no proportional division (all factors zero)."""


class ConfigurationError(ProrationError):
    """Missing or invalid configuration: weight systems, factor tables, bounds."""


class GenerationError(ProrationError):
    """The random problem generator could not honor its constraints."""


class CapacityError(ProrationError):
    """A dense coalition table would exceed the supported number of players."""
