"""Exception types shared by the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class BoundError(DomainError):
    """A brute-force enumeration was asked to exceed its configured bound."""

    def __init__(self, msg, bound=None):
        super().__init__(msg)
        self.bound = bound


class WindowError(DomainError):
    """A finite window is too small to decide the question asked.

    ``required`` holds the (lo, hi) window that would be sufficient.
    """

    def __init__(self, msg, required=None):
        super().__init__(msg)
        self.required = required


class IllDefined(ValueError):
    """A function is not compatible with a partition; ``witness`` is (x, y)."""

    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class InvariantViolation(AssertionError):
    """Something the theory guarantees did not happen. Always a bug."""
