"""Exception types shared across the package."""


class SclError(Exception):
    """Base class for all library errors."""


class InputError(SclError):
    """Malformed user input: bad word syntax, bad weights, bad flags."""


class TrivialWordError(InputError):
    """A nonempty word was required but the input reduces to the identity."""


class TrivialSubgroupError(InputError):
    """Every generator of a would-be subgroup reduces to the identity."""


class PeripheralSubgroupError(InputError):
    """A cyclic subgroup generated by a peripheral element; its limit set is
    a single point, so it is excluded from the subgroup universe."""


class ParabolicError(SclError):
    """A hyperbolic length was requested for a parabolic (peripheral) class."""


class DiscretenessError(SclError):
    """A nontrivial word with |trace| < 2; the representation is not discrete
    and faithful, so the surface configuration is broken."""


class ConfigError(SclError):
    """A surface configuration is unusable for the requested operation."""


class LemmaHypothesisError(SclError):
    """Fiber statistics were requested for a seed with zero boundary image."""


class InternalConsistencyError(SclError):
    """An internal invariant failed; indicates a bug, not bad input."""


class ResourceLimitError(SclError):
    """A configured cap was hit. ``partial`` carries whatever was computed."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
