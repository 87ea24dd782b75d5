from typing import Optional

from .logger import get_logger

logger = get_logger(__name__)


class SuperJordanError(Exception):
    """Base class of every error raised by the package."""


class FieldError(SuperJordanError):
    pass


class AlgebraError(SuperJordanError):
    pass


class GradingError(AlgebraError):
    pass


class ScaParseError(SuperJordanError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class CatalogError(SuperJordanError):
    pass


class PeirceError(SuperJordanError):
    pass


class IsomorphismError(SuperJordanError):
    pass


class ClassificationError(SuperJordanError):
    pass


class RewriteError(SuperJordanError):
    pass


class EnvelopeError(SuperJordanError):
    pass


class Error:
    """Report an exception together with the place it was caught."""

    def __init__(self, loc, ex, log=True):
        self.loc = loc
        self.ex = ex
        if log:
            self.error()

    def error(self):
        logger.error(self.text)

    @property
    def text(self) -> str:
        return f"{self.loc}: {type(self.ex).__name__}: {self.ex}"
