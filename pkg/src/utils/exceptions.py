"""
Error hierarchy shared by every separator-lab module.
"""
from typing import Iterable, Optional


class SeplabError(Exception):
    """Base class for all errors raised by the lab."""

    def __init__(self, err_msg: str):
        self.err_msg = err_msg
        super().__init__(err_msg)

    def __str__(self):
        return self.err_msg


class ParseError(SeplabError):
    """Malformed graph text. Carries the 1-based line number when known."""

    def __init__(self, err_msg: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            err_msg = f"line {line}: {err_msg}"
        super().__init__(err_msg)


class ContractError(SeplabError, ValueError):
    """An operation was called outside its precondition."""


class CapExceededError(SeplabError):
    """Refusal to run an exhaustive procedure above its vertex cap."""

    def __init__(self, what: str, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(f"{what} refused: graph has {n} vertices, cap is {cap}")


class FrameRealizationError(SeplabError):
    """No F-hole could be realized for a frame."""


class ClassViolationError(SeplabError):
    """
    Evidence that the input graph is outside the (theta, pyramid, prism,
    turtle)-free class, e.g. a hitting set that cannot be shrunk to size two.
    """

    def __init__(self, err_msg: str, blocking: Iterable[int] = ()):
        self.blocking = sorted(blocking)
        super().__init__(f"class violation evidence: {err_msg} (blocking vertices {self.blocking})")
