"""Exception types shared across the package."""


class IntegrityError(RuntimeError):
    """An internal cross-check failed (e.g. the two evaluation forms disagree).

    This never fires for valid inputs; seeing it means an arithmetic bug.
    """


class ResourceLimitError(RuntimeError):
    """A value would exceed the configured bit-size guard."""


class CompositeExponentError(ValueError):
    """A prime exponent was required but the given n is composite."""
