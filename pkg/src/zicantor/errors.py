"""Exception types shared by every module."""

from __future__ import annotations


class DomainError(ValueError):
    """An input violates a mathematical precondition (zero divisor, non-prime, ...)."""


class ResourceCapError(RuntimeError):
    """A computation would exceed a configured size limit."""

    def __init__(self, message: str, cap: int | None = None):
        super().__init__(message)
        self.cap = cap


class ParseError(ValueError):
    """Malformed Gaussian literal; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos
