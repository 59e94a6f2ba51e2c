class LConvexError(Exception):
    """Base class for errors raised by this package."""


class DegeneratePointError(LConvexError):
    """An abstract subdifferential needed by a computation is empty."""

    def __init__(self, message: str, x: float | None = None):
        super().__init__(message)
        self.x = x


class InfeasibleError(LConvexError):
    """A minimization problem has no finite objective value on its grid."""


class LambdaConsistencyWarning(UserWarning):
    """The literal lambda update left the subdifferential of the generator."""
