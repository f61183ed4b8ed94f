"""Exception hierarchy for the ditkin package.

Everything raised on purpose derives from DitkinError so callers (and the
CLI) can separate domain failures from programming errors.
"""


class DitkinError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(DitkinError, ValueError):
    """Malformed input document; the message names the offending field."""


class UnsupportedOperandKind(DitkinError, TypeError):
    """Binary pointwise arithmetic is only closed on the exact tier."""


class MissingTailBound(DitkinError):
    """A rule-based element has no certified tail bound for this weight family."""


class DivergentVariationError(MissingTailBound):
    """The weighted jump series provably diverges: no finite bound exists."""


class UndecidableMembership(DitkinError):
    """Ideal membership cannot be decided for a general rule-based element."""


class NotInMInfinityError(DitkinError, ValueError):
    """The operation requires an element vanishing at infinity."""


class HorizonExhausted(DitkinError):
    """No candidate index within the configured search bound met the target."""


class InvalidExcludedSet(DitkinError, ValueError):
    """The excluded set violates the preconditions of the witness construction."""


class NotDivergentError(DitkinError, ValueError):
    """The construction requires a weight family diverging to infinity."""
