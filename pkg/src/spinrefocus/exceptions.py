"""Exception types raised by the library."""


class ConfigError(ValueError):
    """A pulse config document failed to parse or violates the schema."""


class PulseValidationError(ValueError):
    """A loaded pulse does not compose to a pi rotation about +y on resonance."""


class SequencePreconditionError(ValueError):
    """A sequence construction precondition (winding or error order) failed."""


class ComplementNotFoundError(LookupError):
    """No complement sequence was found within the search budget."""


class OrderFitError(RuntimeError):
    """A power-law fit residual exceeded its threshold (non-power-law data)."""


class UnknownSequenceError(ValueError):
    """A sequence label is not one of the canonical family."""
