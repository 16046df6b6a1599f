"""Exception hierarchy shared by all slabclique modules."""


class SlabCliqueError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SlabCliqueError):
    """Instance or table file is structurally malformed."""


class ValidationError(SlabCliqueError):
    """Input violates a documented invariant (duplicate ids, bad radius, ...)."""


class PreconditionError(SlabCliqueError):
    """An operation was called outside its stated precondition."""


class BudgetExceededError(SlabCliqueError):
    """Estimated guess count exceeds the configured enumeration budget."""


class InternalError(SlabCliqueError):
    """A structural guarantee failed; indicates a bug, not bad input."""
