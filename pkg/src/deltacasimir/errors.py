"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class SingularSystemError(RuntimeError):
    """The boundary-matching linear system came out numerically singular.

    For real q > 0 the matching matrix is provably regular, so this always
    indicates a bug or a corrupted parameter, never a physical regime.
    """
