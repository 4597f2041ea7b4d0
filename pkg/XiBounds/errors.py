"""
Errors raised by XiBounds. Value problems subclass ValueError, failed
computations and unwritable sinks subclass RuntimeError.
"""

from typing import Optional


class XiBoundsError(Exception):
    pass


class DomainError(XiBoundsError, ValueError):
    pass


class InvalidDecimal(XiBoundsError, ValueError):
    pass


# ==================== Tables ====================


class TableError(XiBoundsError, ValueError):
    def __init__(self, message: str, source: str = "", line: Optional[int] = None):
        self.source = source
        self.line = line
        where = source or "<stream>"
        if line is not None:
            where = f"{where} line {line}"
        super().__init__(f"{where}: {message}")


class MalformedLine(TableError):
    pass


class NonMonotone(TableError):
    pass


class EmptyTable(TableError):
    pass


class InvalidTable(TableError):
    pass


class ManifestError(TableError):
    pass


class IndexOutOfRange(XiBoundsError, IndexError):
    pass


# ==================== Root finding and quadrature ====================


class NoSignChange(XiBoundsError, ValueError):
    pass


class MultipleSignChanges(XiBoundsError, ValueError):
    pass


class InvalidTolerance(XiBoundsError, ValueError):
    pass


class NoConvergence(XiBoundsError, RuntimeError):
    def __init__(self, message: str, best_estimate: float = float("nan")):
        self.best_estimate = best_estimate
        super().__init__(f"{message} (best estimate {best_estimate!r})")


# ==================== Regions and output ====================


class SourceMissing(XiBoundsError, ValueError):
    pass


class UnknownPreset(XiBoundsError, ValueError):
    pass


class SinkWrite(XiBoundsError, RuntimeError):
    pass
