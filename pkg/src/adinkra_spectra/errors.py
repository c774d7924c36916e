"""Shared exception types."""


class ResourceBoundError(RuntimeError):
    """An operation would exceed its configured resource bound.

    Raised instead of silently truncating; the message names the bound and,
    where one exists, the cheaper alternative (sampling, exact counting).
    """
