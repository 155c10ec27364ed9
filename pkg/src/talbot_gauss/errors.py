class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class GridMismatchError(ValueError):
    """Sampling grid incompatible with the requested Talbot order."""
