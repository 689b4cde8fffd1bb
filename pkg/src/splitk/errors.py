"""Exception hierarchy shared by every module."""


class SplitKError(Exception):
    pass


class RingMismatch(SplitKError):
    pass


class NotAUnit(SplitKError, ArithmeticError):
    pass


class ShapeMismatch(SplitKError, ValueError):
    pass


class HomogeneityError(ShapeMismatch):
    pass


class VerificationError(SplitKError):
    """A defining identity failed; ``report`` locates the failure."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidChainMap(VerificationError):
    pass


class InvalidEquivalence(VerificationError):
    pass


class NotNullHomotopic(VerificationError):
    pass


class SignResolutionFailure(VerificationError):
    pass


class ExtractionFailure(VerificationError):
    pass


class InternalVerificationFailure(VerificationError):
    pass


class DocumentError(SplitKError):
    """Base for everything ``io.parse`` can raise. ``path`` is a field path like ``payload.differentials[2]``."""

    def __init__(self, message, path="", line=None):
        where = path if line is None else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)
        self.path = path
        self.line = line


class JSONSyntaxError(DocumentError):
    pass


class SchemaError(DocumentError):
    pass


class ValidationError(DocumentError):
    def __init__(self, message, path="", report=None):
        super().__init__(message, path)
        self.report = report
