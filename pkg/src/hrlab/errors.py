"""Exception types shared across the package."""


class HrlabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HrlabError, ValueError):
    """An argument violates a documented precondition."""


class ModelError(HrlabError, RuntimeError):
    """A generative model is internally inconsistent (e.g. non-PSD correlation).

    ``minor_index`` carries the order of the first non-positive leading minor
    when the failure comes from a Cholesky factorization, else None.
    """

    def __init__(self, message, minor_index=None):
        super().__init__(message)
        self.minor_index = minor_index
