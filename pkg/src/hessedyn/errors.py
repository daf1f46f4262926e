"""Exception types and the cooperative wall-clock budget."""

import time
from contextlib import contextmanager


class HesseError(Exception):
    """Base class for errors raised by this package."""


class DegreeMismatch(HesseError, ValueError):
    pass


class NotFixedError(HesseError, ValueError):
    """The point handed to a fixpoint routine is not fixed by the map."""


class ResourceBoundError(HesseError):
    """A configured size or time bound was exceeded."""


class ConvergenceError(HesseError, ArithmeticError):
    pass


class NotCriticallyFinite(HesseError):
    pass


class CheckFailure(HesseError, AssertionError):
    """An identity or theorem check failed."""


_deadline = None


@contextmanager
def budget(seconds):
    """Bound the wall-clock time of everything run inside the block.

    Long loops call :func:`check_budget`, which raises
    :class:`ResourceBoundError` once the deadline has passed.
    ``seconds=None`` disables the bound.
    """
    global _deadline
    saved = _deadline
    if seconds is not None:
        new = time.monotonic() + seconds
        _deadline = new if saved is None else min(saved, new)
    try:
        yield
    finally:
        _deadline = saved


def check_budget():
    if _deadline is not None and time.monotonic() > _deadline:
        raise ResourceBoundError("wall-clock budget exhausted")
