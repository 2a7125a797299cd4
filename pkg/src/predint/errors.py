class DomainError(ValueError):
    """An argument falls outside the domain of the requested computation."""


class ResourceLimitError(DomainError):
    """The request is valid but exceeds the size an exact computation allows."""


class DegenerateError(DomainError):
    """A standardizing variance is zero, so the statistic is undefined."""
