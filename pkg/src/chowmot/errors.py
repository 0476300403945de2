"""Exception hierarchy for the engine.

Every failure mode raised by the library derives from ChowError, so callers
(and the CLI) can separate engine errors from programming errors.
"""


class ChowError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(ChowError):
    """Malformed or out-of-contract construction data."""


class DomainMismatchError(ChowError):
    """Operands live on incompatible varieties or objects."""


class SingularSeriesError(ChowError):
    """A series with vanishing constant term cannot be inverted."""


class PreconditionError(ChowError):
    """A stated operation precondition does not hold for the given data."""


class SupportConditionError(ChowError):
    """An orbit morphism carries components at negative twist indices."""
