"""Shared exception types."""


class CapacityError(Exception):
    """An exhaustive operation was asked for an instance beyond its size guard."""


class TraceError(Exception):
    """A recorded trace does not replay consistently."""


class LemmaCheckError(AssertionError):
    """An internal invariant check failed during path construction."""


class ConstructionError(Exception):
    """The convergence-path constructor could not make progress."""


class DocumentError(ValueError):
    """A network document failed to parse or validate."""
