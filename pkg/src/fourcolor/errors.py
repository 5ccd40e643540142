"""Shared exception types."""


class MapError(Exception):
    """A map (or an operation on one) violates a structural requirement."""


class ScaleLimitError(Exception):
    """An exhaustive computation was rejected because the input exceeds the
    configured desk-scale caps."""

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats or {}
