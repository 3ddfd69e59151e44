# blockdet/errors.py
from typing import Optional


class BlockDetError(Exception):
    """Base class for every error raised by blockdet."""

    exit_code: int = 1


class DimensionError(BlockDetError, ValueError):
    exit_code = 2


class DomainError(BlockDetError, ValueError):
    exit_code = 1


class ContractError(BlockDetError, ValueError):
    exit_code = 1


class SpecError(BlockDetError, ValueError):
    exit_code = 1


class ConfigError(BlockDetError, ValueError):
    exit_code = 1


class IntegralityError(BlockDetError, ArithmeticError):
    """An integer matrix produced a non-integral exact result."""

    exit_code = 1


class ResourceCapError(BlockDetError):
    exit_code = 3

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class ParseError(BlockDetError):
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
